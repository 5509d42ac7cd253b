#include "citesim/simulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"
#include "citesim/rng.hpp"

namespace citesim {

std::string to_string(StartMode m) { return m == StartMode::warm ? "warm" : "cold"; }
std::string to_string(UpdateMode m) {
    return m == UpdateMode::per_month ? "per-month" : "per-citation";
}

StartMode start_mode_from_string(const std::string& name) {
    if (name == "warm") return StartMode::warm;
    if (name == "cold") return StartMode::cold;
    throw std::invalid_argument("unknown start mode '" + name + "' (valid: warm, cold)");
}

UpdateMode update_mode_from_string(const std::string& name) {
    if (name == "per-month") return UpdateMode::per_month;
    if (name == "per-citation") return UpdateMode::per_citation;
    throw std::invalid_argument("unknown update mode '" + name +
                                "' (valid: per-month, per-citation)");
}

void SimConfig::validate(const Corpus& corpus) const {
    kernel.validate();
    if (corpus.empty()) throw DataError("cannot simulate an empty corpus");
    if (t_in > t_f) throw DataError("simulation range: t_in must be <= t_f");
    if (t_in < corpus.first_month() || t_f > corpus.last_month()) {
        throw DataError("simulation range [" + std::to_string(t_in) + ", " + std::to_string(t_f) +
                        "] outside corpus months [" + std::to_string(corpus.first_month()) + ", " +
                        std::to_string(corpus.last_month()) + "]");
    }
}

SimResult run(const Corpus& corpus, const Bpan& empirical, const SimConfig& config) {
    config.validate(corpus);
    Rng rng(config.seed);

    SimResult result;
    AuthorTable& authors = result.authors;

    // Seed authors that exist before t_in. Warm start carries their
    // empirical citation history into the kernel state; cold start keeps
    // only entry months and pre-t_in papers.
    const bool warm = config.start == StartMode::warm;
    std::uint64_t running_total = 0;
    for (const auto& emp : empirical.authors) {
        if (emp.entry_month() >= config.t_in) continue;
        auto idx = authors.add(emp.author_id(), emp.entry_month());
        authors.at(idx) = emp.truncated_before(config.t_in, warm);
        running_total += authors.at(idx).total();
    }

    result.totals.reserve(static_cast<std::size_t>(config.t_f - config.t_in) + 1);
    std::vector<double> weights;
    std::vector<std::uint32_t> scratch_targets;

    for (month_t t = config.t_in; t <= config.t_f; ++t) {
        // 1) Register the month's papers and any new authors before any
        //    citation is distributed, so same-month entrants are eligible
        //    targets through the additive constant.
        auto month_papers = corpus.papers_in_month(t);
        for (const auto& rec : month_papers) {
            for (const auto& a : rec.author_ids) {
                auto idx = authors.add(a, t);
                authors.at(idx).record_paper(t);
            }
        }

        // 2) Kernel weights from history through month t-1.
        const std::size_t n = authors.size();
        weights.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] =
                attachment_weight(authors.at(static_cast<std::uint32_t>(i)), t, config.kernel);
        }
        WeightedSampler sampler(weights);

        // per-month citation counts, committed at month end
        std::vector<std::uint32_t> landed(n, 0);

        // 3) Each paper issues its empirical c_p citations.
        for (const auto& rec : month_papers) {
            auto pi = static_cast<std::size_t>(&rec - corpus.papers().data());
            std::uint64_t c_p = empirical.citations_issued_by_paper[pi];
            if (c_p == 0) continue;

            std::vector<std::pair<std::uint32_t, double>> masked;
            if (!config.allow_self_citations) {
                for (const auto& a : rec.author_ids) {
                    auto idx = authors.find(a);
                    masked.emplace_back(*idx, sampler.weight(*idx));
                    sampler.set(*idx, 0.0);
                }
            }

            for (std::uint64_t d = 0; d < c_p; ++d) {
                auto target = static_cast<std::uint32_t>(sampler.sample(rng));
                landed[target] += 1;
                if (config.update == UpdateMode::per_citation) {
                    sampler.add(target, 1.0);
                }
            }

            for (const auto& [idx, w] : masked) sampler.set(idx, w);
        }

        // 4) Commit the month.
        for (std::size_t i = 0; i < n; ++i) {
            if (landed[i] > 0) {
                authors.at(static_cast<std::uint32_t>(i)).add_citations(t, landed[i]);
                running_total += landed[i];
            }
        }
        result.totals.push_back({t, authors.size(), running_total});
    }
    return result;
}

std::vector<SnapshotRow> snapshot(const AuthorTable& authors, month_t t) {
    std::vector<SnapshotRow> rows;
    rows.reserve(authors.size());
    for (const auto& s : authors) {
        if (s.entry_month() > t) continue;
        SnapshotRow row;
        row.author_id = s.author_id();
        row.k = s.cumulative_at(t);
        row.dk_trailing_year = s.citations_in_window(t, 12);
        row.age_months = static_cast<int>(t - s.entry_month());
        row.paper_count = s.paper_count_at(t);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_snapshot_csv(const std::vector<SnapshotRow>& rows,
                        const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "author_id,k,dk_trailing_year,age_months,paper_count\n";
    for (const auto& r : rows) {
        out << r.author_id << ',' << r.k << ',' << r.dk_trailing_year << ',' << r.age_months
            << ',' << r.paper_count << '\n';
    }
}

}  // namespace citesim
