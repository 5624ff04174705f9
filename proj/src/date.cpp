#include "powerwise/date.hpp"

#include <cstdio>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {
bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}
}  // namespace

bool is_valid_date(const Date& d) noexcept {
    return d.year >= 1 && d.year <= 9999 && d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

Date parse_iso_date(std::string_view text) {
    const auto t = detail::trim(text);
    if (t.size() != 10 || t[4] != '-' || t[7] != '-') {
        throw ValidationError("invalid date '" + std::string(t) + "', expected YYYY-MM-DD");
    }
    const auto y = detail::parse_int(t.substr(0, 4));
    const auto m = detail::parse_int(t.substr(5, 2));
    const auto d = detail::parse_int(t.substr(8, 2));
    if (!y || !m || !d) throw ValidationError("invalid date '" + std::string(t) + "'");
    Date out{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
    if (!is_valid_date(out)) throw ValidationError("invalid date '" + std::string(t) + "'");
    return out;
}

std::string to_iso(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace powerwise
