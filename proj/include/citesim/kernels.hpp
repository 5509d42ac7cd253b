#ifndef CITESIM_KERNELS_HPP
#define CITESIM_KERNELS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citesim/month.hpp"
#include "citesim/rng.hpp"

namespace citesim {

class AuthorState;  // bpan.hpp

enum class KernelKind { preferential, recency };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

// Attachment-rule parameters. The preferential kernel weighs an author by
// A plus lifetime citations; the recency kernel by A plus citations accrued
// in the trailing window_w months.
struct KernelParams {
    KernelKind kind = KernelKind::preferential;
    double additive_A = 1.0;
    int window_w = 12;  // recency only

    void validate() const;  // throws std::invalid_argument
    std::string describe() const;
};

// A + k_total. A must be positive so uncited authors can still be drawn.
double pa_weight(std::uint64_t k_total, double A);

// A + citations accrued in (t - w, t]. Months before the author's entry
// contribute nothing, so young authors see a truncated window.
double recency_weight(const AuthorState& state, month_t t, const KernelParams& params);

// Sampling weight of an author at the start of month m, i.e. computed from
// history through month m-1. This is the per-month update rule shared by
// the simulator and the synthetic generator.
double attachment_weight(const AuthorState& state, month_t m, const KernelParams& params);

// Fenwick tree over non-negative weights supporting O(log n) point update
// and O(log n) sampling proportional to weight.
class WeightedSampler {
public:
    explicit WeightedSampler(std::size_t n);
    explicit WeightedSampler(std::span<const double> weights);

    std::size_t size() const { return n_; }
    double total() const;
    double weight(std::size_t i) const;
    void set(std::size_t i, double w);
    void add(std::size_t i, double dw);

    // Draws an index with probability weight/total. Throws std::domain_error
    // when the total weight is zero.
    std::size_t sample(Rng& rng) const;

private:
    std::size_t n_;
    std::vector<double> tree_;  // 1-based Fenwick
    std::vector<double> raw_;
};

// count independent draws from the normalized weight distribution, with
// replacement. Deterministic given the generator state.
std::vector<std::uint32_t> sample_targets(std::span<const double> weights, std::size_t count,
                                          Rng& rng);

}  // namespace citesim

#endif
