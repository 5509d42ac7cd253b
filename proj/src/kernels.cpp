#include "citesim/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "citesim/bpan.hpp"

namespace citesim {

std::string to_string(KernelKind kind) {
    return kind == KernelKind::preferential ? "pa" : "recency";
}

KernelKind kernel_kind_from_string(const std::string& name) {
    if (name == "pa" || name == "preferential") return KernelKind::preferential;
    if (name == "recency") return KernelKind::recency;
    throw std::invalid_argument("unknown kernel '" + name + "' (valid: pa, recency)");
}

void KernelParams::validate() const {
    if (!std::isfinite(additive_A)) throw std::invalid_argument("kernel A must be finite");
    if (kind == KernelKind::preferential) {
        if (additive_A <= 0) throw std::invalid_argument("preferential kernel requires A > 0");
    } else {
        if (additive_A < 0) throw std::invalid_argument("recency kernel requires A >= 0");
        if (window_w < 1) throw std::invalid_argument("recency kernel requires w >= 1");
    }
}

std::string KernelParams::describe() const {
    std::string s = to_string(kind) + "(A=" + std::to_string(additive_A);
    if (kind == KernelKind::recency) s += ", w=" + std::to_string(window_w);
    return s + ")";
}

double pa_weight(std::uint64_t k_total, double A) {
    if (!(A > 0)) throw std::invalid_argument("preferential kernel requires A > 0");
    return A + static_cast<double>(k_total);
}

double recency_weight(const AuthorState& state, month_t t, const KernelParams& params) {
    if (params.kind != KernelKind::recency) {
        throw std::invalid_argument("recency_weight called with a non-recency kernel");
    }
    return params.additive_A +
           static_cast<double>(state.citations_in_window(t, params.window_w));
}

double attachment_weight(const AuthorState& state, month_t m, const KernelParams& params) {
    if (params.kind == KernelKind::preferential) {
        return pa_weight(state.cumulative_at(m - 1), params.additive_A);
    }
    return recency_weight(state, m - 1, params);
}

WeightedSampler::WeightedSampler(std::size_t n) : n_(n), tree_(n + 1, 0.0), raw_(n, 0.0) {}

WeightedSampler::WeightedSampler(std::span<const double> weights)
    : WeightedSampler(weights.size()) {
    // O(n) Fenwick construction
    for (std::size_t i = 0; i < n_; ++i) {
        if (weights[i] < 0) throw std::invalid_argument("negative sampling weight");
        raw_[i] = weights[i];
        tree_[i + 1] += weights[i];
        std::size_t parent = (i + 1) + ((i + 1) & (~i));  // i+1 + lowbit(i+1)
        if (parent <= n_) tree_[parent] += tree_[i + 1];
    }
}

double WeightedSampler::total() const {
    double acc = 0;
    for (std::size_t i = n_; i > 0; i -= i & (~i + 1)) acc += tree_[i];
    return acc;
}

double WeightedSampler::weight(std::size_t i) const { return raw_[i]; }

void WeightedSampler::add(std::size_t i, double dw) {
    raw_[i] += dw;
    for (std::size_t j = i + 1; j <= n_; j += j & (~j + 1)) tree_[j] += dw;
}

void WeightedSampler::set(std::size_t i, double w) {
    if (w < 0) throw std::invalid_argument("negative sampling weight");
    add(i, w - raw_[i]);
}

std::size_t WeightedSampler::sample(Rng& rng) const {
    double t = total();
    if (!(t > 0)) throw std::domain_error("cannot sample: total weight is zero");
    double u = rng.uniform() * t;
    // descend the implicit tree: find the first index whose prefix sum
    // exceeds u, skipping zero-weight slots by construction
    std::size_t idx = 0;
    std::size_t mask = std::size_t{1} << (63 - __builtin_clzll(n_ | 1));
    for (; mask > 0; mask >>= 1) {
        std::size_t next = idx + mask;
        if (next <= n_ && tree_[next] <= u) {
            u -= tree_[next];
            idx = next;
        }
    }
    // u may equal the total due to rounding; clamp to the last positive slot
    if (idx >= n_) idx = n_ - 1;
    while (idx > 0 && raw_[idx] <= 0) --idx;
    return idx;
}

std::vector<std::uint32_t> sample_targets(std::span<const double> weights, std::size_t count,
                                          Rng& rng) {
    std::vector<std::uint32_t> out;
    if (count == 0) return out;
    WeightedSampler sampler(weights);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(static_cast<std::uint32_t>(sampler.sample(rng)));
    }
    return out;
}

}  // namespace citesim
