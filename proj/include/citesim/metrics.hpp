#ifndef CITESIM_METRICS_HPP
#define CITESIM_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "citesim/bpan.hpp"
#include "citesim/month.hpp"

namespace citesim {

struct LogBinning {
    double base = 10.0;
    int bins_per_decade = 10;
};

// Raw observable values plus the binning used when histogramming them.
struct DistributionSample {
    std::vector<double> values;
    std::string label;
    LogBinning binning;
};

struct HistogramBin {
    double lo = 0, hi = 0, center = 0;
    double mass = 0;
};

// Log-binned histogram over the positive values; zeros are reported as a
// separate linear bin. Total mass (bins + zero_mass) is 1.
struct Histogram {
    std::vector<HistogramBin> bins;
    double zero_mass = 0;
    std::size_t sample_count = 0;
};

Histogram log_binned_histogram(const DistributionSample& sample);

void write_distribution_csv(const DistributionSample& sample, const std::filesystem::path& path);

// (k_now - k_prev) / k_prev. Undefined for k_prev == 0 (throws domain_error);
// callers exclude those authors from burst samples.
double burst_size(std::uint64_t k_prev, std::uint64_t k_now);

// Cumulative citations k_i^t over all authors present at month t. When
// since >= 0, citations before month `since` are subtracted (cold-start
// comparisons); the author set is unchanged.
DistributionSample citation_distribution(const AuthorTable& authors, month_t t,
                                         month_t since = kNoMonth);

struct BurstDistribution {
    DistributionSample sample;
    std::size_t excluded_authors = 0;  // authors present but with k_prev == 0
    int year = 0;
};

// One burst per author with at least one citation before the year: citations
// gained during year y divided by the cumulative count at the end of y-1.
BurstDistribution burst_distribution(const AuthorTable& authors, int year,
                                     month_t since = kNoMonth);

struct LagCorrelation {
    int lag = 0;
    std::uint64_t kmin = 0;
    double r = 0;         // average over months of the cross-author Pearson r
    int months_used = 0;
    int months_skipped = 0;  // degenerate months (constant series)
};

// For each month t in [from, to], Pearson correlation across authors with
// k_i^t > kmin between citations gained at t and at t - lag, averaged over t.
// Throws domain_error when every month is degenerate.
LagCorrelation lag_correlation(const AuthorTable& authors, int lag, std::uint64_t kmin,
                               month_t from, month_t to);

void write_lag_correlation_csv(std::span<const LagCorrelation> rows,
                               const std::filesystem::path& path);

struct MaxBurstRow {
    std::string author_id;
    double max_b = 0;
    int age_at_peak_months = 0;      // months since entry at the peak year's end
    std::uint64_t k_at_peak = 0;
    int paper_count_at_peak = 0;
};

// Career-maximum burst per author over all complete years up to t_f; authors
// with no valid burst sample are omitted.
std::vector<MaxBurstRow> max_burst_summary(const AuthorTable& authors, month_t t_f);

void write_max_burst_csv(std::span<const MaxBurstRow> rows, const std::filesystem::path& path);

// Pearson correlation; returns NaN when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace citesim

#endif
