#ifndef EPILOG_DATE_H
#define EPILOG_DATE_H

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace epilog
{

using Date = std::chrono::year_month_day;

/// Day 0 of every simulated trajectory and the first day of the 2022 study window.
inline constexpr Date study_epoch{std::chrono::year{2022}, std::chrono::May, std::chrono::day{10}};
inline constexpr Date study_end{std::chrono::year{2022}, std::chrono::December, std::chrono::day{31}};

/// Strict YYYY-MM-DD; returns nullopt for anything else, including impossible calendar dates.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(const Date& d);

Date add_days(const Date& d, long long n);

/// to - from, in whole days.
long long days_between(const Date& from, const Date& to);

} // namespace epilog

#endif // EPILOG_DATE_H
