#include "citesim/bpan.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"

namespace citesim {

AuthorState::AuthorState(std::string author_id, month_t entry_month)
    : id_(std::move(author_id)), entry_(entry_month) {}

void AuthorState::add_citations(month_t t, std::uint32_t n) {
    if (t < entry_) throw std::logic_error("citation before author entry");
    auto idx = static_cast<std::size_t>(t - entry_);
    if (idx >= monthly_.size()) {
        std::uint64_t carry = total();
        monthly_.resize(idx + 1, 0);
        cum_.resize(idx + 1, carry);
    }
    monthly_[idx] += n;
    for (std::size_t i = idx; i < cum_.size(); ++i) cum_[i] += n;
}

void AuthorState::record_paper(month_t t) {
    if (!paper_months_.empty() && t < paper_months_.back()) {
        throw std::logic_error("papers must be recorded in month order");
    }
    paper_months_.push_back(t);
}

std::uint32_t AuthorState::monthly_at(month_t t) const {
    if (t < entry_) return 0;
    auto idx = static_cast<std::size_t>(t - entry_);
    return idx < monthly_.size() ? monthly_[idx] : 0;
}

std::uint64_t AuthorState::cumulative_at(month_t t) const {
    if (t < entry_ || cum_.empty()) return 0;
    auto idx = static_cast<std::size_t>(t - entry_);
    if (idx >= cum_.size()) return cum_.back();
    return cum_[idx];
}

std::uint64_t AuthorState::citations_in_window(month_t t, int w) const {
    return cumulative_at(t) - cumulative_at(t - w);
}

int AuthorState::paper_count_at(month_t t) const {
    auto it = std::upper_bound(paper_months_.begin(), paper_months_.end(), t);
    return static_cast<int>(it - paper_months_.begin());
}

AuthorState AuthorState::truncated_before(month_t m, bool keep_citations) const {
    AuthorState out(id_, entry_);
    auto it = std::upper_bound(paper_months_.begin(), paper_months_.end(), m - 1);
    out.paper_months_.assign(paper_months_.begin(), it);
    if (keep_citations && m > entry_) {
        auto len = std::min(monthly_.size(), static_cast<std::size_t>(m - entry_));
        out.monthly_.assign(monthly_.begin(), monthly_.begin() + len);
        out.cum_.assign(cum_.begin(), cum_.begin() + len);
    }
    return out;
}

std::uint32_t AuthorTable::add(const std::string& author_id, month_t entry_month) {
    auto [it, inserted] = index_.emplace(author_id, static_cast<std::uint32_t>(states_.size()));
    if (!inserted) return it->second;
    states_.emplace_back(author_id, entry_month);
    return it->second;
}

std::optional<std::uint32_t> AuthorTable::find(const std::string& author_id) const {
    auto it = index_.find(author_id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t AuthorTable::count_present_at(month_t t) const {
    std::size_t n = 0;
    for (const auto& s : states_) {
        if (s.entry_month() <= t) ++n;
    }
    return n;
}

std::size_t Bpan::author_count_at(month_t t) const {
    std::size_t n = 0;
    for (const auto& [m, c] : authors_entering_by_month) {
        if (m > t) break;
        n += c;
    }
    return n;
}

std::uint64_t Bpan::cumulative_citations_at(month_t t) const {
    std::uint64_t n = 0;
    for (const auto& [m, c] : citations_by_month) {
        if (m > t) break;
        n += c;
    }
    return n;
}

std::uint64_t citations_in_window(const AuthorState& state, month_t t, int w) {
    if (w < 1) throw std::invalid_argument("window must be >= 1");
    return state.citations_in_window(t, w);
}

std::uint64_t author_count_cited_by(const PaperRecord& paper, const Corpus& corpus,
                                    const BuildOptions& options) {
    std::uint64_t c_p = 0;
    std::unordered_set<std::string> seen;
    for (const auto& ref : paper.reference_ids) {
        if (!seen.insert(ref).second) continue;
        auto idx = corpus.find(ref);
        if (!idx) continue;
        const auto& cited = corpus.papers()[*idx];
        if (options.include_self_citations) {
            c_p += cited.author_ids.size();
        } else {
            for (const auto& a : cited.author_ids) {
                if (std::find(paper.author_ids.begin(), paper.author_ids.end(), a) ==
                    paper.author_ids.end()) {
                    ++c_p;
                }
            }
        }
    }
    return c_p;
}

Bpan build(const Corpus& corpus, const BuildOptions& options) {
    Bpan bpan;
    bpan.citations_issued_by_paper.assign(corpus.size(), 0);

    // First pass in corpus (month) order: register authors at their first
    // paper so entries and histories line up with the publication stream.
    for (std::uint32_t pi = 0; pi < corpus.size(); ++pi) {
        const auto& rec = corpus.papers()[pi];
        bpan.papers_by_month[rec.month].push_back(pi);
        for (const auto& a : rec.author_ids) {
            bool existed = bpan.authors.contains(a);
            auto idx = bpan.authors.add(a, rec.month);
            bpan.authors.at(idx).record_paper(rec.month);
            if (!existed) bpan.authors_entering_by_month[rec.month] += 1;
        }
    }

    // Second pass: one citation unit per (distinct reference, cited author),
    // stamped with the citing paper's month.
    for (std::uint32_t pi = 0; pi < corpus.size(); ++pi) {
        const auto& rec = corpus.papers()[pi];
        std::unordered_set<std::string> seen;
        std::vector<std::pair<std::string, std::uint32_t>> units;  // author -> count
        for (const auto& ref : rec.reference_ids) {
            if (!seen.insert(ref).second) continue;
            auto ridx = corpus.find(ref);
            if (!ridx) continue;  // unknown reference: contributes nothing
            for (const auto& a : corpus.papers()[*ridx].author_ids) {
                if (!options.include_self_citations &&
                    std::find(rec.author_ids.begin(), rec.author_ids.end(), a) !=
                        rec.author_ids.end()) {
                    continue;
                }
                auto it = std::find_if(units.begin(), units.end(),
                                       [&](const auto& u) { return u.first == a; });
                if (it == units.end()) {
                    units.emplace_back(a, 1);
                } else {
                    it->second += 1;
                }
            }
        }
        for (const auto& [author, weight] : units) {
            bpan.edges.push_back({rec.paper_id, author, rec.month, weight});
            auto aidx = bpan.authors.find(author);
            assert(aidx);  // cited paper's authors were registered in pass one
            bpan.authors.at(*aidx).add_citations(rec.month, weight);
            bpan.citations_issued_by_paper[pi] += weight;
            bpan.total_citations += weight;
            bpan.citations_by_month[rec.month] += weight;
        }
    }
    return bpan;
}

void write_history_csv(const AuthorTable& authors, const std::filesystem::path& path,
                       month_t through_month) {
    auto out = open_output(path);
    out << "author_id,month,monthly,cumulative\n";
    for (const auto& s : authors) {
        month_t last = through_month == kNoMonth ? s.last_month() : through_month;
        for (month_t m = s.entry_month(); m <= last; ++m) {
            out << s.author_id() << ',' << m << ',' << s.monthly_at(m) << ','
                << s.cumulative_at(m) << '\n';
        }
        if (last < s.entry_month()) {
            // author with no history rows yet still needs an entry marker
            out << s.author_id() << ',' << s.entry_month() << ",0,0\n";
        }
    }
}

void write_edges_csv(const Bpan& bpan, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "citing_paper,cited_author,month,weight\n";
    for (const auto& e : bpan.edges) {
        out << e.citing_paper << ',' << e.cited_author << ',' << e.month << ',' << e.weight
            << '\n';
    }
}

AuthorTable load_history_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    AuthorTable table;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty history file");
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string author, month_s, monthly_s, cum_s;
        if (!std::getline(ss, author, ',') || !std::getline(ss, month_s, ',') ||
            !std::getline(ss, monthly_s, ',') || !std::getline(ss, cum_s)) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        try {
            month_t m = static_cast<month_t>(std::stol(month_s));
            auto n = static_cast<std::uint32_t>(std::stoul(monthly_s));
            auto idx = table.find(author);
            std::uint32_t ai = idx ? *idx : table.add(author, m);
            if (n > 0) table.at(ai).add_citations(m, n);
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
    }
    return table;
}

}  // namespace citesim
