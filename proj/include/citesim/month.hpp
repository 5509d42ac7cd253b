#ifndef CITESIM_MONTH_HPP
#define CITESIM_MONTH_HPP

#include <cstdint>
#include <string>

namespace citesim {

// Month index on a single integer timeline: month 0 is the epoch month.
// Real dates and synthetic indices share this timeline.
using month_t = std::int32_t;

inline constexpr month_t kNoMonth = -1;

// Calendar anchor for converting "YYYY-MM" strings to month indices.
struct Epoch {
    int year = 1893;
    int month = 1;  // 1..12

    static Epoch parse(const std::string& yyyy_mm);
};

// Converts "YYYY-MM" to a month index relative to the epoch.
// Throws DataError on malformed strings or dates before the epoch.
month_t month_from_date(const std::string& yyyy_mm, const Epoch& epoch = {});

// Inverse of month_from_date.
std::string date_from_month(month_t m, const Epoch& epoch = {});

// Accepts either a bare integer ("120") or a date ("1903-01").
month_t parse_month_arg(const std::string& text, const Epoch& epoch = {});

// Year index of a month: 12 consecutive months per year, year 0 starting
// at month 0. With a January epoch these are calendar years.
inline int year_of_month(month_t m) { return static_cast<int>(m / 12); }
inline month_t year_end_month(int year) { return static_cast<month_t>(year) * 12 + 11; }
inline month_t year_start_month(int year) { return static_cast<month_t>(year) * 12; }

}  // namespace citesim

#endif
