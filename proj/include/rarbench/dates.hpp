#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace rarbench {

// Proleptic Gregorian calendar date.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    Date next_day() const;

    // "MM/DD/YYYY", zero-padded.
    std::string mmddyyyy() const;
    // "YYYY-MM-DD".
    std::string iso() const;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// Parses "YYYY-MM-DD"; throws LoadError on malformed or invalid dates.
Date parse_iso_date(std::string_view s);

}  // namespace rarbench
