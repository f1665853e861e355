#include "epilog/case_data.h"
#include "epilog/error.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace epilog
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

struct Row {
    std::size_t row;
    Date date;
    std::int64_t count;
};

} // namespace

void CaseSeries::validate() const
{
    if (dates.empty()) {
        throw std::invalid_argument("case series is empty");
    }
    if (daily.size() != dates.size() || cumulative.size() != dates.size()) {
        throw std::invalid_argument("case series columns have different lengths");
    }
    if (epoch_date != dates.front()) {
        throw std::invalid_argument("case series epoch does not match its first date");
    }
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (daily[i] < 0 || cumulative[i] < 0) {
            throw std::invalid_argument("negative count on " + format_iso_date(dates[i]));
        }
        if (i == 0) {
            continue;
        }
        if (days_between(dates[i - 1], dates[i]) != 1) {
            throw std::invalid_argument("dates are not consecutive at " + format_iso_date(dates[i]));
        }
        if (cumulative[i] != cumulative[i - 1] + daily[i]) {
            throw std::invalid_argument("cumulative does not match daily on " + format_iso_date(dates[i]));
        }
    }
}

std::vector<double> CaseSeries::cumulative_as_double() const
{
    return {cumulative.begin(), cumulative.end()};
}

std::vector<std::int64_t> cumulative_from_daily(const std::vector<std::int64_t>& daily)
{
    std::vector<std::int64_t> out(daily.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < daily.size(); ++i) {
        total += daily[i];
        out[i] = total;
    }
    return out;
}

std::vector<std::int64_t> daily_from_cumulative(const std::vector<std::int64_t>& cumulative)
{
    std::vector<std::int64_t> out(cumulative.size());
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        out[i] = i == 0 ? cumulative[0] : cumulative[i] - cumulative[i - 1];
    }
    return out;
}

CaseSeries parse_case_csv(std::string_view content, const CsvSchema& schema)
{
    const bool has_daily      = !schema.daily_column.empty();
    const bool has_cumulative = !schema.cumulative_column.empty();
    if (has_daily == has_cumulative) {
        throw std::invalid_argument("schema must name exactly one of a daily or a cumulative column");
    }
    const std::string& count_name = has_daily ? schema.daily_column : schema.cumulative_column;

    if (content.substr(0, 3) == "\xEF\xBB\xBF") {
        content.remove_prefix(3);
    }

    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= content.size();) {
        auto nl = content.find('\n', start);
        if (nl == std::string_view::npos) {
            nl = content.size();
        }
        lines.push_back(content.substr(start, nl - start));
        start = nl + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ParseError(1, "missing header row");
    }

    const auto header = split_fields(lines[0]);
    auto column_of    = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ParseError(1, "header has no column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col  = column_of(schema.date_column);
    const std::size_t count_col = column_of(count_name);

    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t row_no = i + 1;
        if (trim(lines[i]).empty()) {
            continue;
        }
        const auto fields = split_fields(lines[i]);
        if (fields.size() <= std::max(date_col, count_col)) {
            throw ParseError(row_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                         std::to_string(fields.size()));
        }
        const auto date_text = fields[date_col];
        const auto date      = parse_iso_date(date_text);
        if (!date) {
            throw ParseError(row_no, "malformed date '" + std::string(date_text) + "' (expected YYYY-MM-DD)");
        }
        const auto count_text = fields[count_col];
        std::int64_t count    = 0;
        auto [ptr, ec]        = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count_text.empty()) {
            throw ParseError(row_no, "malformed count '" + std::string(count_text) + "' in column '" + count_name + "'");
        }
        if (count < 0) {
            throw ParseError(row_no, "negative count " + std::to_string(count) + " in column '" + count_name + "'");
        }
        rows.push_back({row_no, *date, count});
    }
    if (rows.empty()) {
        throw ParseError(2, "no data rows after the header");
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            const auto later = std::max(rows[i].row, rows[i - 1].row);
            throw ParseError(later, "duplicate date " + format_iso_date(rows[i].date) + " (also on row " +
                                        std::to_string(std::min(rows[i].row, rows[i - 1].row)) + ")");
        }
        if (has_cumulative && rows[i].count < rows[i - 1].count) {
            throw ParseError(rows[i].row, "cumulative count decreases from " + std::to_string(rows[i - 1].count) +
                                              " to " + std::to_string(rows[i].count));
        }
    }

    CaseSeries series;
    series.epoch_date = rows.front().date;
    const auto span   = days_between(rows.front().date, rows.back().date) + 1;
    series.dates.reserve(static_cast<std::size_t>(span));
    std::vector<std::int64_t> counts;
    counts.reserve(static_cast<std::size_t>(span));

    std::int64_t carried = 0;
    for (const auto& row : rows) {
        if (!series.dates.empty()) {
            for (auto d = add_days(series.dates.back(), 1); d < row.date; d = add_days(d, 1)) {
                // zero daily cases on missing dates; cumulative carries forward
                series.dates.push_back(d);
                counts.push_back(has_daily ? 0 : carried);
            }
        }
        series.dates.push_back(row.date);
        counts.push_back(row.count);
        carried = row.count;
    }

    if (has_daily) {
        series.daily      = std::move(counts);
        series.cumulative = cumulative_from_daily(series.daily);
    } else {
        series.cumulative = std::move(counts);
        series.daily      = daily_from_cumulative(series.cumulative);
    }
    return series;
}

CaseSeries parse_case_csv(std::string_view content)
{
    const auto nl           = content.find('\n');
    const auto header       = split_fields(content.substr(0, nl));
    const bool has_daily    = std::find(header.begin(), header.end(), "daily") != header.end();
    const bool has_cumulative = std::find(header.begin(), header.end(), "cumulative") != header.end();
    if (has_daily) {
        return parse_case_csv(content, CsvSchema::daily());
    }
    if (has_cumulative) {
        return parse_case_csv(content, CsvSchema::cumulative());
    }
    throw ParseError(1, "header needs a 'daily' or 'cumulative' column");
}

CaseSeries window(const CaseSeries& series, const Date& start, const Date& end)
{
    if (series.dates.empty()) {
        throw std::out_of_range("window: series is empty");
    }
    const auto& first = series.dates.front();
    const auto& last  = series.dates.back();
    const std::string span = format_iso_date(first) + " .. " + format_iso_date(last);
    if (end < start) {
        throw std::out_of_range("window: start " + format_iso_date(start) + " is after end " + format_iso_date(end));
    }
    if (start < first || last < end) {
        throw std::out_of_range("window: [" + format_iso_date(start) + ", " + format_iso_date(end) +
                                "] is outside the series span " + span);
    }
    const auto lo = static_cast<std::size_t>(days_between(first, start));
    const auto hi = static_cast<std::size_t>(days_between(first, end)) + 1;

    CaseSeries out;
    out.epoch_date = start;
    out.dates.assign(series.dates.begin() + lo, series.dates.begin() + hi);
    out.daily.assign(series.daily.begin() + lo, series.daily.begin() + hi);
    out.cumulative.assign(series.cumulative.begin() + lo, series.cumulative.begin() + hi);
    return out;
}

std::string to_csv(const CaseSeries& series)
{
    std::string out = "date,daily,cumulative\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += format_iso_date(series.dates[i]);
        out += ',';
        out += std::to_string(series.daily[i]);
        out += ',';
        out += std::to_string(series.cumulative[i]);
        out += '\n';
    }
    return out;
}

} // namespace epilog
