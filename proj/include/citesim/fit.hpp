#ifndef CITESIM_FIT_HPP
#define CITESIM_FIT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "citesim/bpan.hpp"
#include "citesim/corpus.hpp"
#include "citesim/metrics.hpp"
#include "citesim/simulate.hpp"

namespace citesim {

enum class Transform { linear, log10p };

std::string to_string(Transform t);
Transform transform_from_string(const std::string& name);

// First Wasserstein distance between two empirical distributions, computed
// from sorted samples via the quantile-function integral. log10p maps values
// through log10(1 + x) first, which keeps the distance from being dominated
// by the extreme tail of multi-decade distributions.
double wasserstein1(const DistributionSample& a, const DistributionSample& b,
                    Transform transform = Transform::log10p);
double wasserstein1(std::vector<double> a, std::vector<double> b,
                    Transform transform = Transform::linear);

struct GridSpec {
    std::vector<double> A_values;
    std::vector<int> w_values;

    // "0.01:10:log13" (log-spaced, 13 points), "1:36" (integer range) or an
    // explicit comma list "3,6,12,18,24,36".
    static std::vector<double> parse_A(const std::string& text);
    static std::vector<int> parse_w(const std::string& text);
};

struct SweepCell {
    double A = 0;
    int w = 0;
    double d_citations = 0;
    double d_bursts = 0;
    double score = 0;
    int replicates = 0;
};

struct SweepResult {
    std::vector<SweepCell> cells;   // grid order: w fastest, A slowest
    std::size_t best_index = 0;     // minimizes score
    int burst_year = 0;             // year the burst distributions compare at

    const SweepCell& best() const { return cells[best_index]; }
};

struct SweepOptions {
    month_t t_in = 0;
    month_t t_f = 0;
    KernelKind kind = KernelKind::recency;
    int replicates = 5;
    std::uint64_t seed = 1;
    StartMode start = StartMode::warm;
    UpdateMode update = UpdateMode::per_month;
    Transform transform = Transform::log10p;
    int jobs = 1;
    // Cells already present in a partial map file; they are not re-simulated
    // but do participate in score normalization.
    std::vector<SweepCell> completed;
};

// For every (A, w) cell, averages over seeded replicates the Wasserstein
// distances between simulated and empirical citation and burst distributions
// at t_f. The combined score is the mean of the two distances after dividing
// each by its grid-wide median, so the compromise is scale-free. Cells run
// concurrently when jobs > 1; results do not depend on scheduling.
SweepResult sweep(const Corpus& corpus, const Bpan& empirical, const GridSpec& grid,
                  const SweepOptions& options);

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);
std::vector<SweepCell> read_sweep_csv(const std::filesystem::path& path);

}  // namespace citesim

#endif
