#ifndef CITESIM_CORPUS_HPP
#define CITESIM_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citesim/kernels.hpp"
#include "citesim/month.hpp"

namespace citesim {

// One publication event. reference_ids may name papers absent from the
// corpus; those are kept verbatim and simply contribute no author citations.
struct PaperRecord {
    std::string paper_id;
    month_t month = 0;
    std::vector<std::string> author_ids;
    std::vector<std::string> reference_ids;
};

// Publication stream sorted by (month, paper_id), with unique paper ids.
class Corpus {
public:
    Corpus() = default;

    // Validates invariants, sorts, and builds the id index.
    // Throws DataError on duplicate ids, empty author lists, duplicate
    // authors within a record, or negative months.
    static Corpus from_records(std::vector<PaperRecord> records);

    const std::vector<PaperRecord>& papers() const { return papers_; }
    std::size_t size() const { return papers_.size(); }
    bool empty() const { return papers_.empty(); }

    month_t first_month() const;
    month_t last_month() const;

    // Index of the paper with the given id, if present.
    std::optional<std::uint32_t> find(const std::string& paper_id) const;

    // Contiguous slice of papers published in month m (possibly empty).
    std::span<const PaperRecord> papers_in_month(month_t m) const;

private:
    std::vector<PaperRecord> papers_;
    std::vector<std::pair<std::string, std::uint32_t>> id_index_;  // sorted by id
};

// Reads a line-delimited JSON corpus. Each line is an object with keys
// "paper_id", "authors", "references", and either integer "month" or a
// "date" string converted against the epoch. Errors carry line numbers.
Corpus load_corpus(const std::filesystem::path& path, const Epoch& epoch = {});

// Writes the line-delimited JSON form read back by load_corpus; months are
// emitted as integers so the round trip is exact.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Finite-support distribution over non-negative integers.
struct DiscreteDist {
    std::vector<int> values;
    std::vector<double> weights;  // positive, not necessarily normalized

    static DiscreteDist constant(int v) { return {{v}, {1.0}}; }
    void validate() const;
    double mean() const;
    int max_value() const;
    int sample(Rng& rng) const;
};

// Paper-count schedule over months: constant or linear ramp.
struct Schedule {
    enum class Kind { constant, linear };
    Kind kind = Kind::constant;
    int start = 0;
    int end = 0;  // linear only; value at the final month

    int at(month_t m, int months_total) const;
};

// Controls generate_synthetic. The ground-truth citation process is an
// author-level attachment kernel: each reference is created by sampling a
// target author under target_kernel and then citing one of that author's
// earlier papers, so kernel-parameter recovery experiments are well-posed.
struct SyntheticSpec {
    int months = 0;
    Schedule papers_per_month;
    DiscreteDist authors_per_paper;
    DiscreteDist refs_per_paper;
    double new_author_prob = 0.3;  // chance an author slot introduces a new author
    KernelParams target_kernel;
    std::uint64_t seed = 1;

    void validate() const;

    static SyntheticSpec from_json_file(const std::filesystem::path& path);
    static SyntheticSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// Deterministic synthetic corpus: same spec, same bytes. Month-0 papers
// carry no references.
Corpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace citesim

#endif
