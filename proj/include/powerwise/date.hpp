#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace powerwise {

struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(const Date& d) noexcept;

/// Parses `YYYY-MM-DD`. Throws ValidationError on anything else.
Date parse_iso_date(std::string_view text);

std::string to_iso(const Date& d);

}  // namespace powerwise
