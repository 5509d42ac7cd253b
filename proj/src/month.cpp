#include "citesim/month.hpp"

#include <cctype>
#include <cstdio>

#include "citesim/errors.hpp"

namespace citesim {

namespace {

bool parse_year_month(const std::string& s, int& year, int& month) {
    if (s.size() != 7 || s[4] != '-') return false;
    for (int i : {0, 1, 2, 3, 5, 6}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    year = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
    month = (s[5] - '0') * 10 + (s[6] - '0');
    return month >= 1 && month <= 12;
}

}  // namespace

Epoch Epoch::parse(const std::string& yyyy_mm) {
    Epoch e;
    if (!parse_year_month(yyyy_mm, e.year, e.month)) {
        throw DataError("invalid epoch '" + yyyy_mm + "': expected YYYY-MM");
    }
    return e;
}

month_t month_from_date(const std::string& yyyy_mm, const Epoch& epoch) {
    int year = 0, month = 0;
    if (!parse_year_month(yyyy_mm, year, month)) {
        throw DataError("invalid date '" + yyyy_mm + "': expected YYYY-MM");
    }
    long idx = static_cast<long>(year - epoch.year) * 12 + (month - epoch.month);
    if (idx < 0) {
        throw DataError("date '" + yyyy_mm + "' precedes epoch " + date_from_month(0, epoch));
    }
    return static_cast<month_t>(idx);
}

std::string date_from_month(month_t m, const Epoch& epoch) {
    long total = static_cast<long>(epoch.year) * 12 + (epoch.month - 1) + m;
    long year = total / 12;
    long month = total % 12 + 1;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04ld-%02ld", year, month);
    return buf;
}

month_t parse_month_arg(const std::string& text, const Epoch& epoch) {
    if (text.find('-') != std::string::npos) return month_from_date(text, epoch);
    try {
        size_t pos = 0;
        long v = std::stol(text, &pos);
        if (pos != text.size() || v < 0) throw std::invalid_argument("");
        return static_cast<month_t>(v);
    } catch (const std::exception&) {
        throw DataError("invalid month '" + text + "': expected YYYY-MM or a non-negative integer");
    }
}

}  // namespace citesim
