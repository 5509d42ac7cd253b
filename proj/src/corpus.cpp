#include "citesim/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "citesim/bpan.hpp"
#include "citesim/csv.hpp"
#include "citesim/errors.hpp"
#include "citesim/rng.hpp"

namespace citesim {

using nlohmann::json;

Corpus Corpus::from_records(std::vector<PaperRecord> records) {
    for (const auto& rec : records) {
        if (rec.paper_id.empty()) throw DataError("paper with empty id");
        if (rec.month < 0) {
            throw DataError("paper '" + rec.paper_id + "' has negative month");
        }
        if (rec.author_ids.empty()) {
            throw DataError("paper '" + rec.paper_id + "' has no authors");
        }
        std::unordered_set<std::string> seen;
        for (const auto& a : rec.author_ids) {
            if (!seen.insert(a).second) {
                throw DataError("paper '" + rec.paper_id + "' lists author '" + a + "' twice");
            }
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.month != b.month ? a.month < b.month : a.paper_id < b.paper_id;
    });

    Corpus c;
    c.papers_ = std::move(records);
    c.id_index_.reserve(c.papers_.size());
    for (std::uint32_t i = 0; i < c.papers_.size(); ++i) {
        c.id_index_.emplace_back(c.papers_[i].paper_id, i);
    }
    std::sort(c.id_index_.begin(), c.id_index_.end());
    for (std::size_t i = 1; i < c.id_index_.size(); ++i) {
        if (c.id_index_[i].first == c.id_index_[i - 1].first) {
            throw DataError("duplicate paper_id '" + c.id_index_[i].first + "'");
        }
    }
    return c;
}

month_t Corpus::first_month() const { return papers_.empty() ? 0 : papers_.front().month; }
month_t Corpus::last_month() const { return papers_.empty() ? 0 : papers_.back().month; }

std::optional<std::uint32_t> Corpus::find(const std::string& paper_id) const {
    auto it = std::lower_bound(id_index_.begin(), id_index_.end(), paper_id,
                               [](const auto& e, const std::string& id) { return e.first < id; });
    if (it == id_index_.end() || it->first != paper_id) return std::nullopt;
    return it->second;
}

std::span<const PaperRecord> Corpus::papers_in_month(month_t m) const {
    auto lo = std::lower_bound(papers_.begin(), papers_.end(), m,
                               [](const PaperRecord& p, month_t v) { return p.month < v; });
    auto hi = std::upper_bound(papers_.begin(), papers_.end(), m,
                               [](month_t v, const PaperRecord& p) { return v < p.month; });
    return {&*lo, static_cast<std::size_t>(hi - lo)};
}

Corpus load_corpus(const std::filesystem::path& path, const Epoch& epoch) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");

    std::vector<PaperRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": invalid JSON: " + e.what());
        }
        try {
            PaperRecord rec;
            rec.paper_id = j.at("paper_id").get<std::string>();
            if (j.contains("month")) {
                long m = j.at("month").get<long>();
                if (m < 0) throw DataError("month must be non-negative");
                rec.month = static_cast<month_t>(m);
            } else if (j.contains("date")) {
                rec.month = month_from_date(j.at("date").get<std::string>(), epoch);
            } else {
                throw DataError("record needs either 'month' or 'date'");
            }
            rec.author_ids = j.at("authors").get<std::vector<std::string>>();
            if (j.contains("references")) {
                rec.reference_ids = j.at("references").get<std::vector<std::string>>();
            }
            records.push_back(std::move(rec));
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    try {
        return Corpus::from_records(std::move(records));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    auto out = open_output(path);
    for (const auto& rec : corpus.papers()) {
        json j;
        j["paper_id"] = rec.paper_id;
        j["month"] = rec.month;
        j["authors"] = rec.author_ids;
        j["references"] = rec.reference_ids;
        out << j.dump() << '\n';
    }
}

void DiscreteDist::validate() const {
    if (values.empty() || values.size() != weights.size()) {
        throw DataError("discrete distribution needs matching non-empty values and weights");
    }
    double total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) throw DataError("discrete distribution values must be >= 0");
        if (!(weights[i] >= 0) || !std::isfinite(weights[i])) {
            throw DataError("discrete distribution weights must be finite and >= 0");
        }
        total += weights[i];
    }
    if (total <= 0) throw DataError("discrete distribution has zero total weight");
}

double DiscreteDist::mean() const {
    double total = 0, acc = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        total += weights[i];
        acc += weights[i] * values[i];
    }
    return acc / total;
}

int DiscreteDist::max_value() const {
    int m = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] > 0) m = std::max(m, values[i]);
    }
    return m;
}

int DiscreteDist::sample(Rng& rng) const {
    double total = 0;
    for (double w : weights) total += w;
    double u = rng.uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += weights[i];
        if (u < acc) return values[i];
    }
    return values.back();
}

int Schedule::at(month_t m, int months_total) const {
    if (kind == Kind::constant) return start;
    if (months_total <= 1) return start;
    double f = static_cast<double>(m) / (months_total - 1);
    return static_cast<int>(std::lround(start + f * (end - start)));
}

void SyntheticSpec::validate() const {
    if (months < 0) throw DataError("synthetic spec: months must be >= 0");
    if (papers_per_month.start < 0 ||
        (papers_per_month.kind == Schedule::Kind::linear && papers_per_month.end < 0)) {
        throw DataError("synthetic spec: papers_per_month must be >= 0");
    }
    authors_per_paper.validate();
    refs_per_paper.validate();
    if (authors_per_paper.max_value() < 1) {
        throw DataError("synthetic spec: authors_per_paper must allow at least one author");
    }
    for (std::size_t i = 0; i < authors_per_paper.values.size(); ++i) {
        if (authors_per_paper.values[i] < 1 && authors_per_paper.weights[i] > 0) {
            throw DataError("synthetic spec: papers need at least one author");
        }
    }
    if (new_author_prob < 0 || new_author_prob > 1) {
        throw DataError("synthetic spec: new_author_prob must be in [0, 1]");
    }
    target_kernel.validate();
}

namespace {

DiscreteDist dist_from_json(const json& j, const char* field) {
    DiscreteDist d;
    if (j.is_number_integer()) {
        return DiscreteDist::constant(j.get<int>());
    }
    if (j.contains("constant")) {
        return DiscreteDist::constant(j.at("constant").get<int>());
    }
    if (!j.contains("values") || !j.contains("weights")) {
        throw DataError(std::string(field) + ": expected an integer, {\"constant\": n}, or "
                        "{\"values\": [...], \"weights\": [...]}");
    }
    d.values = j.at("values").get<std::vector<int>>();
    d.weights = j.at("weights").get<std::vector<double>>();
    d.validate();
    return d;
}

json dist_to_json(const DiscreteDist& d) {
    if (d.values.size() == 1) return json{{"constant", d.values[0]}};
    return json{{"values", d.values}, {"weights", d.weights}};
}

Schedule schedule_from_json(const json& j) {
    Schedule s;
    if (j.is_number_integer()) {
        s.kind = Schedule::Kind::constant;
        s.start = j.get<int>();
        return s;
    }
    std::string kind = j.value("kind", "constant");
    if (kind == "constant") {
        s.kind = Schedule::Kind::constant;
        s.start = j.at("value").get<int>();
    } else if (kind == "linear") {
        s.kind = Schedule::Kind::linear;
        s.start = j.at("start").get<int>();
        s.end = j.at("end").get<int>();
    } else {
        throw DataError("papers_per_month: unknown schedule kind '" + kind + "'");
    }
    return s;
}

json schedule_to_json(const Schedule& s) {
    if (s.kind == Schedule::Kind::constant) return json{{"kind", "constant"}, {"value", s.start}};
    return json{{"kind", "linear"}, {"start", s.start}, {"end", s.end}};
}

KernelParams kernel_from_json(const json& j) {
    KernelParams k;
    k.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
    k.additive_A = j.at("A").get<double>();
    if (j.contains("w")) k.window_w = j.at("w").get<int>();
    k.validate();
    return k;
}

}  // namespace

SyntheticSpec SyntheticSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("synthetic spec: invalid JSON: ") + e.what());
    }
    SyntheticSpec spec;
    try {
        spec.months = j.at("months").get<int>();
        spec.papers_per_month = schedule_from_json(j.at("papers_per_month"));
        spec.authors_per_paper = dist_from_json(j.at("authors_per_paper"), "authors_per_paper");
        spec.refs_per_paper = dist_from_json(j.at("refs_per_paper"), "refs_per_paper");
        spec.new_author_prob = j.value("new_author_prob", 0.3);
        spec.target_kernel = kernel_from_json(j.at("target_kernel"));
        spec.seed = j.value("seed", std::uint64_t{1});
    } catch (const json::exception& e) {
        throw DataError(std::string("synthetic spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

SyntheticSpec SyntheticSpec::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return from_json_text(ss.str());
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string SyntheticSpec::to_json_text() const {
    json j;
    j["months"] = months;
    j["papers_per_month"] = schedule_to_json(papers_per_month);
    j["authors_per_paper"] = dist_to_json(authors_per_paper);
    j["refs_per_paper"] = dist_to_json(refs_per_paper);
    j["new_author_prob"] = new_author_prob;
    j["target_kernel"] = json{{"kind", to_string(target_kernel.kind)},
                              {"A", target_kernel.additive_A},
                              {"w", target_kernel.window_w}};
    j["seed"] = seed;
    return j.dump(2);
}

namespace {

std::string padded_id(char prefix, std::size_t n) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%c%07zu", prefix, n);
    return buf;
}

}  // namespace

Corpus generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    // Ground-truth author histories drive the kernel weights; papers_of
    // tracks each author's publications so references can be attributed.
    AuthorTable authors;
    std::vector<std::vector<std::uint32_t>> papers_of;  // author -> paper indices
    std::vector<PaperRecord> records;
    std::unordered_map<std::string, std::uint32_t> record_index;
    std::size_t paper_counter = 0;
    std::size_t author_counter = 0;  // names minted before month-end registration

    for (month_t t = 0; t < spec.months; ++t) {
        const int n_papers = spec.papers_per_month.at(t, spec.months);

        // Reference targets must own a paper from an earlier month, so the
        // sampling pool is frozen to authors present before t. Weights follow
        // the per-month update rule: fixed for the whole month.
        std::vector<double> weights;
        std::size_t eligible = 0;
        for (std::size_t i = 0; i < authors.size(); ++i) {
            if (authors.at(static_cast<std::uint32_t>(i)).entry_month() < t) ++eligible;
        }
        weights.resize(eligible);
        for (std::size_t i = 0; i < eligible; ++i) {
            weights[i] = attachment_weight(authors.at(static_cast<std::uint32_t>(i)), t,
                                           spec.target_kernel);
        }
        WeightedSampler sampler(weights);

        const std::size_t month_first_record = records.size();
        for (int p = 0; p < n_papers; ++p) {
            PaperRecord rec;
            rec.paper_id = padded_id('p', paper_counter++);
            rec.month = t;

            const int n_auth = std::max(1, spec.authors_per_paper.sample(rng));
            for (int s = 0; s < n_auth; ++s) {
                std::string author_id;
                bool want_new = authors.size() == 0 || rng.bernoulli(spec.new_author_prob);
                if (!want_new) {
                    // existing author, uniform; retry on duplicates within
                    // the record, then fall back to a new author
                    bool found = false;
                    for (int attempt = 0; attempt < 16 && !found; ++attempt) {
                        auto idx = static_cast<std::uint32_t>(rng.below(authors.size()));
                        const std::string& cand = authors.at(idx).author_id();
                        if (std::find(rec.author_ids.begin(), rec.author_ids.end(), cand) ==
                            rec.author_ids.end()) {
                            author_id = cand;
                            found = true;
                        }
                    }
                    want_new = !found;
                }
                if (want_new) {
                    author_id = padded_id('a', author_counter++);
                }
                rec.author_ids.push_back(std::move(author_id));
            }

            if (t > 0 && eligible > 0) {
                const int n_refs = spec.refs_per_paper.sample(rng);
                for (int r = 0; r < n_refs; ++r) {
                    std::uint32_t ref_paper = 0;
                    for (int attempt = 0; attempt < 20; ++attempt) {
                        auto a = static_cast<std::uint32_t>(sampler.sample(rng));
                        const auto& st = authors.at(a);
                        // papers from earlier months only
                        int prior = st.paper_count_at(t - 1);
                        ref_paper = papers_of[a][rng.below(static_cast<std::uint64_t>(prior))];
                        const std::string& id = records[ref_paper].paper_id;
                        if (std::find(rec.reference_ids.begin(), rec.reference_ids.end(), id) ==
                            rec.reference_ids.end()) {
                            break;
                        }
                    }
                    rec.reference_ids.push_back(records[ref_paper].paper_id);
                }
            }
            records.push_back(std::move(rec));
        }

        // Register the month's papers and land the ground-truth citations.
        // Mirrors the BPAN rule: each distinct reference credits every one
        // of its authors once, stamped with the citing month.
        for (std::size_t ri = month_first_record; ri < records.size(); ++ri) {
            const PaperRecord& rec = records[ri];
            record_index.emplace(rec.paper_id, static_cast<std::uint32_t>(ri));
            for (const auto& a : rec.author_ids) {
                auto existing = authors.find(a);
                std::uint32_t idx;
                if (existing) {
                    idx = *existing;
                } else {
                    idx = authors.add(a, t);
                    papers_of.emplace_back();
                }
                authors.at(idx).record_paper(t);
                papers_of[idx].push_back(static_cast<std::uint32_t>(ri));
            }
            std::unordered_set<std::string> seen;
            for (const auto& ref : rec.reference_ids) {
                if (!seen.insert(ref).second) continue;
                std::uint32_t ref_idx = record_index.at(ref);  // generated in-corpus
                for (const auto& cited : records[ref_idx].author_ids) {
                    authors.at(*authors.find(cited)).add_citations(t, 1);
                }
            }
        }
    }
    return Corpus::from_records(std::move(records));
}

}  // namespace citesim
