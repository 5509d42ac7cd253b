#include "citesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"

namespace citesim {

Histogram log_binned_histogram(const DistributionSample& sample) {
    Histogram h;
    h.sample_count = sample.values.size();
    if (sample.values.empty()) return h;

    double min_pos = 0, max_pos = 0;
    std::size_t zeros = 0, positives = 0;
    for (double v : sample.values) {
        if (!std::isfinite(v) || v < 0) {
            throw std::invalid_argument("histogram values must be finite and non-negative");
        }
        if (v == 0) {
            ++zeros;
            continue;
        }
        if (positives == 0) {
            min_pos = max_pos = v;
        } else {
            min_pos = std::min(min_pos, v);
            max_pos = std::max(max_pos, v);
        }
        ++positives;
    }
    h.zero_mass = static_cast<double>(zeros) / static_cast<double>(h.sample_count);
    if (positives == 0) return h;

    const double step = 1.0 / sample.binning.bins_per_decade;
    const double log_base = std::log10(sample.binning.base);
    auto bin_of = [&](double v) {
        return static_cast<long>(std::floor(std::log10(v) / log_base / step));
    };
    long first = bin_of(min_pos);
    long last = bin_of(max_pos);
    h.bins.resize(static_cast<std::size_t>(last - first + 1));
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        double lo_exp = (first + static_cast<long>(i)) * step * log_base;
        h.bins[i].lo = std::pow(10.0, lo_exp);
        h.bins[i].hi = std::pow(10.0, lo_exp + step * log_base);
        h.bins[i].center = std::sqrt(h.bins[i].lo * h.bins[i].hi);
    }
    const double unit = 1.0 / static_cast<double>(h.sample_count);
    for (double v : sample.values) {
        if (v == 0) continue;
        long b = std::clamp(bin_of(v), first, last);
        h.bins[static_cast<std::size_t>(b - first)].mass += unit;
    }
    return h;
}

void write_distribution_csv(const DistributionSample& sample,
                            const std::filesystem::path& path) {
    Histogram h = log_binned_histogram(sample);
    auto out = open_output(path);
    out << "bin_center,probability\n";
    if (h.zero_mass > 0) out << "0," << format_double(h.zero_mass) << '\n';
    for (const auto& b : h.bins) {
        if (b.mass > 0) {
            out << format_double(b.center) << ',' << format_double(b.mass) << '\n';
        }
    }
}

double burst_size(std::uint64_t k_prev, std::uint64_t k_now) {
    if (k_prev == 0) throw std::domain_error("burst size undefined for k_prev == 0");
    return (static_cast<double>(k_now) - static_cast<double>(k_prev)) /
           static_cast<double>(k_prev);
}

namespace {

std::uint64_t cumulative_since(const AuthorState& s, month_t t, month_t since) {
    if (since == kNoMonth) return s.cumulative_at(t);
    if (t < since) return 0;
    return s.cumulative_at(t) - s.cumulative_at(since - 1);
}

}  // namespace

DistributionSample citation_distribution(const AuthorTable& authors, month_t t, month_t since) {
    DistributionSample sample;
    sample.label = "citations@" + std::to_string(t);
    sample.values.reserve(authors.size());
    for (const auto& s : authors) {
        if (s.entry_month() > t) continue;
        sample.values.push_back(static_cast<double>(cumulative_since(s, t, since)));
    }
    return sample;
}

BurstDistribution burst_distribution(const AuthorTable& authors, int year, month_t since) {
    if (year < 0) throw std::invalid_argument("year must be >= 0");
    BurstDistribution out;
    out.year = year;
    out.sample.label = "bursts@year" + std::to_string(year);
    const month_t prev_end = year_end_month(year - 1);  // -1 when year == 0
    const month_t end = year_end_month(year);
    for (const auto& s : authors) {
        if (s.entry_month() > end) continue;
        std::uint64_t k_prev = year > 0 ? cumulative_since(s, prev_end, since) : 0;
        if (k_prev == 0) {
            ++out.excluded_authors;
            continue;
        }
        std::uint64_t k_now = cumulative_since(s, end, since);
        out.sample.values.push_back(burst_size(k_prev, k_now));
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0 || syy <= 0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

LagCorrelation lag_correlation(const AuthorTable& authors, int lag, std::uint64_t kmin,
                               month_t from, month_t to) {
    if (lag < 1) throw std::invalid_argument("lag must be >= 1");
    if (from > to) throw std::invalid_argument("empty month window");

    LagCorrelation out;
    out.lag = lag;
    out.kmin = kmin;
    double acc = 0;
    std::vector<double> x, y;
    for (month_t t = from; t <= to; ++t) {
        x.clear();
        y.clear();
        for (const auto& s : authors) {
            if (s.entry_month() > t) continue;
            if (s.cumulative_at(t) <= kmin) continue;
            x.push_back(static_cast<double>(s.monthly_at(t)));
            y.push_back(static_cast<double>(s.monthly_at(t - lag)));
        }
        double r = pearson(x, y);
        if (std::isnan(r)) {
            ++out.months_skipped;
            continue;
        }
        acc += r;
        ++out.months_used;
    }
    if (out.months_used == 0) {
        throw std::domain_error("lag correlation: every month in the window is degenerate");
    }
    out.r = acc / out.months_used;
    return out;
}

void write_lag_correlation_csv(std::span<const LagCorrelation> rows,
                               const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "lag,r,kmin\n";
    for (const auto& row : rows) {
        out << row.lag << ',' << format_double(row.r) << ',' << row.kmin << '\n';
    }
}

std::vector<MaxBurstRow> max_burst_summary(const AuthorTable& authors, month_t t_f) {
    std::vector<MaxBurstRow> rows;
    const int last_year = static_cast<int>((t_f + 1) / 12) - 1;  // last complete year
    for (const auto& s : authors) {
        MaxBurstRow row;
        bool has_burst = false;
        const int first_year = std::max(1, year_of_month(s.entry_month()));
        for (int y = first_year; y <= last_year; ++y) {
            std::uint64_t k_prev = s.cumulative_at(year_end_month(y - 1));
            if (k_prev == 0) continue;
            double b = burst_size(k_prev, s.cumulative_at(year_end_month(y)));
            if (!has_burst || b > row.max_b) {
                has_burst = true;
                row.max_b = b;
                row.age_at_peak_months = static_cast<int>(year_end_month(y) - s.entry_month());
                row.k_at_peak = s.cumulative_at(year_end_month(y));
                row.paper_count_at_peak = s.paper_count_at(year_end_month(y));
            }
        }
        if (has_burst) {
            row.author_id = s.author_id();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_max_burst_csv(std::span<const MaxBurstRow> rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "author_id,max_b,age_at_peak_months,k_at_peak,paper_count_at_peak\n";
    for (const auto& r : rows) {
        out << r.author_id << ',' << format_double(r.max_b) << ',' << r.age_at_peak_months << ','
            << r.k_at_peak << ',' << r.paper_count_at_peak << '\n';
    }
}

}  // namespace citesim
