#include "epilog/date.h"

#include <charconv>
#include <cstdio>

namespace epilog
{

namespace
{

bool parse_digits(std::string_view s, int& out)
{
    for (char ch : s) {
        if (ch < '0' || ch > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

std::optional<Date> parse_iso_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    int y = 0, m = 0, d = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::string format_iso_date(const Date& d)
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

Date add_days(const Date& d, long long n)
{
    return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

long long days_between(const Date& from, const Date& to)
{
    return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

} // namespace epilog
