#ifndef CITESIM_BPAN_HPP
#define CITESIM_BPAN_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "citesim/corpus.hpp"
#include "citesim/month.hpp"

namespace citesim {

// Per-author monthly citation history starting at the month of the author's
// first paper. Citations must be recorded in non-decreasing month order so
// the cumulative prefix stays O(1) to extend.
class AuthorState {
public:
    AuthorState() = default;
    AuthorState(std::string author_id, month_t entry_month);

    const std::string& author_id() const { return id_; }
    month_t entry_month() const { return entry_; }

    // Last month covered by the recorded history (entry-1 when empty).
    month_t last_month() const { return entry_ + static_cast<month_t>(monthly_.size()) - 1; }

    void add_citations(month_t t, std::uint32_t n);
    void record_paper(month_t t);

    std::uint32_t monthly_at(month_t t) const;
    std::uint64_t cumulative_at(month_t t) const;  // k_j^t; 0 before entry
    std::uint64_t total() const { return cum_.empty() ? 0 : cum_.back(); }

    // Citations accrued in (t - w, t]; pre-entry months contribute 0.
    std::uint64_t citations_in_window(month_t t, int w) const;

    int paper_count_at(month_t t) const;
    int paper_count() const { return static_cast<int>(paper_months_.size()); }
    const std::vector<month_t>& paper_months() const { return paper_months_; }
    const std::vector<std::uint32_t>& monthly() const { return monthly_; }

    // Copy retaining only history and papers strictly before month m;
    // citations are dropped entirely when keep_citations is false.
    // Used to initialize warm and cold simulation starts.
    AuthorState truncated_before(month_t m, bool keep_citations) const;

private:
    std::string id_;
    month_t entry_ = 0;
    std::vector<std::uint32_t> monthly_;  // index t - entry_
    std::vector<std::uint64_t> cum_;      // running prefix of monthly_
    std::vector<month_t> paper_months_;   // non-decreasing
};

// Authors in first-appearance order with a dense index, so simulation
// weights and CSV exports are deterministic.
class AuthorTable {
public:
    std::uint32_t add(const std::string& author_id, month_t entry_month);
    std::optional<std::uint32_t> find(const std::string& author_id) const;
    bool contains(const std::string& author_id) const { return find(author_id).has_value(); }

    AuthorState& at(std::uint32_t i) { return states_[i]; }
    const AuthorState& at(std::uint32_t i) const { return states_[i]; }
    std::size_t size() const { return states_.size(); }

    std::vector<AuthorState>::const_iterator begin() const { return states_.begin(); }
    std::vector<AuthorState>::const_iterator end() const { return states_.end(); }

    std::size_t count_present_at(month_t t) const;  // authors with entry <= t

private:
    std::vector<AuthorState> states_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// One weighted link of the bipartite paper-author citation network: the
// weight is the number of distinct references of citing_paper coauthored
// by cited_author.
struct BpanEdge {
    std::string citing_paper;
    std::string cited_author;
    month_t month = 0;  // citing paper's month
    std::uint32_t weight = 0;
};

struct BuildOptions {
    // When false, a paper's citations to its own authors are dropped.
    bool include_self_citations = true;
};

// Weighted bipartite paper-author citation network plus the per-author
// monthly histories derived from it.
struct Bpan {
    AuthorTable authors;
    std::vector<BpanEdge> edges;
    std::map<month_t, std::vector<std::uint32_t>> papers_by_month;  // indices into corpus

    // c_p per paper (aligned with corpus.papers()): author citations issued
    // by each paper, counting per-reference author multiplicity.
    std::vector<std::uint64_t> citations_issued_by_paper;

    std::uint64_t total_citations = 0;  // == sum of edge weights

    // Authors entered and citations issued per month, for conservation checks.
    std::map<month_t, std::uint64_t> authors_entering_by_month;
    std::map<month_t, std::uint64_t> citations_by_month;

    std::size_t author_count_at(month_t t) const;
    std::uint64_t cumulative_citations_at(month_t t) const;
};

// Builds the network: every author of every resolvable reference of a paper
// gains one citation unit at the citing paper's month; units from distinct
// references aggregate into edge weights. Duplicate reference ids within one
// record count once.
Bpan build(const Corpus& corpus, const BuildOptions& options = {});

// Citations accrued by the author in (t - w, t]. Thin wrapper kept for
// symmetry with the kernel formulas.
std::uint64_t citations_in_window(const AuthorState& state, month_t t, int w);

// c_p: total author citations issued by the paper, summing the author counts
// of each distinct resolvable reference.
std::uint64_t author_count_cited_by(const PaperRecord& paper, const Corpus& corpus,
                                    const BuildOptions& options = {});

// CSV exports: per-author monthly history and the weighted edge list.
void write_history_csv(const AuthorTable& authors, const std::filesystem::path& path,
                       month_t through_month = kNoMonth);
void write_edges_csv(const Bpan& bpan, const std::filesystem::path& path);

// Reads the history CSV back into a table (paper months are not part of the
// schema and stay empty).
AuthorTable load_history_csv(const std::filesystem::path& path);

}  // namespace citesim

#endif
