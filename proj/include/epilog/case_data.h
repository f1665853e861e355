#ifndef EPILOG_CASE_DATA_H
#define EPILOG_CASE_DATA_H

#include "epilog/date.h"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace epilog
{

/**
 * @brief Observed case counts on a gap-free daily grid.
 *
 * Index 1 in the usual 1-based day numbering is `dates[0]` (`epoch_date`). For i >= 1,
 * cumulative[i] = cumulative[i-1] + daily[i]. The first entries are whatever the source
 * reported for that date, so a window keeps absolute cumulative counts.
 */
struct CaseSeries {
    Date epoch_date = study_epoch;
    std::vector<Date> dates;
    std::vector<std::int64_t> daily;
    std::vector<std::int64_t> cumulative;

    std::size_t size() const
    {
        return dates.size();
    }

    /// Throws std::invalid_argument if any CaseSeries invariant is violated.
    void validate() const;

    std::vector<double> cumulative_as_double() const;

    friend bool operator==(const CaseSeries&, const CaseSeries&) = default;
};

/// Column mapping for parse_case_csv(). Exactly one of the count columns must be set.
struct CsvSchema {
    std::string date_column = "date";
    std::string daily_column;      ///< empty when the file carries cumulative counts
    std::string cumulative_column; ///< empty when the file carries daily counts

    static CsvSchema daily(std::string column = "daily")
    {
        return {"date", std::move(column), {}};
    }
    static CsvSchema cumulative(std::string column = "cumulative")
    {
        return {"date", {}, std::move(column)};
    }
};

/**
 * @brief Parse a dated case-count CSV (UTF-8, header row, ISO dates, LF or CRLF).
 *
 * Rows are sorted by date and missing dates inside the range are filled with zero daily
 * cases. Throws ParseError carrying the 1-based row number (header = row 1).
 */
CaseSeries parse_case_csv(std::string_view content, const CsvSchema& schema);

/// Try `schema` columns "daily" and then "cumulative" from the header.
CaseSeries parse_case_csv(std::string_view content);

/// Inclusive sub-series. Throws std::out_of_range naming the available span.
CaseSeries window(const CaseSeries& series, const Date& start, const Date& end);

/// date,daily,cumulative with LF line endings.
std::string to_csv(const CaseSeries& series);

std::vector<std::int64_t> cumulative_from_daily(const std::vector<std::int64_t>& daily);
std::vector<std::int64_t> daily_from_cumulative(const std::vector<std::int64_t>& cumulative);

} // namespace epilog

#endif // EPILOG_CASE_DATA_H
