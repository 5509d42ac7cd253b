#include "citesim/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"
#include "citesim/rng.hpp"

namespace citesim {

std::string to_string(Transform t) { return t == Transform::linear ? "linear" : "log10p"; }

Transform transform_from_string(const std::string& name) {
    if (name == "linear") return Transform::linear;
    if (name == "log10p") return Transform::log10p;
    throw std::invalid_argument("unknown transform '" + name + "' (valid: linear, log10p)");
}

double wasserstein1(std::vector<double> a, std::vector<double> b, Transform transform) {
    if (a.empty() || b.empty()) {
        throw DataError("wasserstein1 requires non-empty samples");
    }
    if (transform == Transform::log10p) {
        for (double& v : a) v = std::log10(1.0 + v);
        for (double& v : b) v = std::log10(1.0 + v);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const std::size_t n = a.size(), m = b.size();
    if (n == m) {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += std::abs(a[i] - b[i]);
        return acc / static_cast<double>(n);
    }
    // integral of |F_a^{-1}(u) - F_b^{-1}(u)| du, stepping through the
    // merged quantile breakpoints; progress tracked in units of 1/(n*m)
    // so boundary comparisons stay exact
    double acc = 0;
    std::size_t i = 0, j = 0;
    std::uint64_t pos = 0;
    while (i < n && j < m) {
        const std::uint64_t next_a = static_cast<std::uint64_t>(i + 1) * m;
        const std::uint64_t next_b = static_cast<std::uint64_t>(j + 1) * n;
        const std::uint64_t next = std::min(next_a, next_b);
        acc += static_cast<double>(next - pos) * std::abs(a[i] - b[j]);
        if (next_a == next) ++i;
        if (next_b == next) ++j;
        pos = next;
    }
    return acc / (static_cast<double>(n) * static_cast<double>(m));
}

double wasserstein1(const DistributionSample& a, const DistributionSample& b,
                    Transform transform) {
    return wasserstein1(a.values, b.values, transform);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

}  // namespace

std::vector<double> GridSpec::parse_A(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3 || parts[2].substr(0, 3) != "log") {
            throw DataError("grid-A: expected lo:hi:logN or a comma list, got '" + text + "'");
        }
        double lo = std::stod(parts[0]);
        double hi = std::stod(parts[1]);
        int n = std::stoi(parts[2].substr(3));
        if (lo <= 0 || hi <= lo || n < 1) throw DataError("grid-A: need 0 < lo < hi, N >= 1");
        for (int k = 0; k < n; ++k) {
            double f = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
            out.push_back(std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo))));
        }
        return out;
    }
    for (const auto& p : split(text, ',')) {
        if (!p.empty()) out.push_back(std::stod(p));
    }
    if (out.empty()) throw DataError("grid-A: empty grid '" + text + "'");
    return out;
}

std::vector<int> GridSpec::parse_w(const std::string& text) {
    std::vector<int> out;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        int lo = std::stoi(text.substr(0, colon));
        int hi = std::stoi(text.substr(colon + 1));
        if (lo < 1 || hi < lo) throw DataError("grid-w: need 1 <= lo <= hi");
        for (int w = lo; w <= hi; ++w) out.push_back(w);
        return out;
    }
    for (const auto& p : split(text, ',')) {
        if (!p.empty()) out.push_back(std::stoi(p));
    }
    if (out.empty()) throw DataError("grid-w: empty grid '" + text + "'");
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

bool cell_matches(const SweepCell& c, double A, int w) {
    return c.w == w && std::abs(c.A - A) <= 1e-12 * std::max(1.0, std::abs(A));
}

}  // namespace

SweepResult sweep(const Corpus& corpus, const Bpan& empirical, const GridSpec& grid,
                  const SweepOptions& options) {
    if (grid.A_values.empty() || grid.w_values.empty()) throw DataError("sweep: empty grid");
    if (options.replicates < 1) throw DataError("sweep: replicates must be >= 1");

    // Empirical reference distributions at the end of the run. Cold starts
    // compare against citations accrued since t_in so both sides count the
    // same window.
    const month_t since = options.start == StartMode::cold ? options.t_in : kNoMonth;
    const int burst_year = static_cast<int>((options.t_f + 1) / 12) - 1;
    if (burst_year < 1) throw DataError("sweep: range too short for a burst year");
    DistributionSample emp_cit = citation_distribution(empirical.authors, options.t_f, since);
    DistributionSample emp_burst = burst_distribution(empirical.authors, burst_year, since).sample;

    struct Cell {
        double A;
        int w;
        int completed_at = -1;  // index into options.completed, or -1
    };
    std::vector<Cell> cells;
    for (double A : grid.A_values) {
        for (int w : grid.w_values) {
            Cell c{A, w, -1};
            for (std::size_t k = 0; k < options.completed.size(); ++k) {
                if (cell_matches(options.completed[k], A, w)) {
                    c.completed_at = static_cast<int>(k);
                    break;
                }
            }
            cells.push_back(c);
        }
    }

    SweepResult result;
    result.burst_year = burst_year;
    result.cells.resize(cells.size());

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string error_text;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t ci = cursor.fetch_add(1);
            if (ci >= cells.size() || failed.load()) return;
            const Cell& cell = cells[ci];
            SweepCell out;
            out.A = cell.A;
            out.w = cell.w;
            out.replicates = options.replicates;
            if (cell.completed_at >= 0) {
                const SweepCell& prev = options.completed[cell.completed_at];
                out.d_citations = prev.d_citations;
                out.d_bursts = prev.d_bursts;
                out.replicates = prev.replicates;
                result.cells[ci] = out;
                continue;
            }
            try {
                SimConfig config;
                config.t_in = options.t_in;
                config.t_f = options.t_f;
                config.kernel.kind = options.kind;
                config.kernel.additive_A = cell.A;
                config.kernel.window_w = cell.w;
                config.start = options.start;
                config.update = options.update;
                double d_cit = 0, d_burst = 0;
                for (int rep = 0; rep < options.replicates; ++rep) {
                    config.seed = mix_seed(options.seed, ci, static_cast<std::uint64_t>(rep));
                    SimResult sim = run(corpus, empirical, config);
                    auto sim_cit = citation_distribution(sim.authors, options.t_f);
                    auto sim_burst = burst_distribution(sim.authors, burst_year).sample;
                    d_cit += wasserstein1(sim_cit, emp_cit, options.transform);
                    d_burst += wasserstein1(sim_burst, emp_burst, options.transform);
                }
                out.d_citations = d_cit / options.replicates;
                out.d_bursts = d_burst / options.replicates;
                result.cells[ci] = out;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                error_text = "sweep cell (A=" + std::to_string(cell.A) +
                             ", w=" + std::to_string(cell.w) + "): " + e.what();
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw DataError(error_text);

    // Scale-free combined score: each distance divided by its grid-wide
    // median, then averaged. Completed cells participate in the medians.
    std::vector<double> cit_all, burst_all;
    for (const auto& c : result.cells) {
        cit_all.push_back(c.d_citations);
        burst_all.push_back(c.d_bursts);
    }
    const double med_cit = median_of(cit_all);
    const double med_burst = median_of(burst_all);
    auto norm = [](double d, double med) { return med > 0 ? d / med : (d > 0 ? 1e300 : 0.0); };
    for (auto& c : result.cells) {
        c.score = 0.5 * (norm(c.d_citations, med_cit) + norm(c.d_bursts, med_burst));
    }
    result.best_index = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        if (result.cells[i].score < result.cells[result.best_index].score) {
            result.best_index = i;
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "A,w,d_citations,d_bursts,score,n_reps\n";
    for (const auto& c : result.cells) {
        out << format_double(c.A) << ',' << c.w << ',' << format_double(c.d_citations) << ','
            << format_double(c.d_bursts) << ',' << format_double(c.score) << ',' << c.replicates
            << '\n';
    }
}

std::vector<SweepCell> read_sweep_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<SweepCell> cells;
    std::string line;
    if (!std::getline(in, line)) return cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 6) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 6 columns");
        }
        try {
            SweepCell c;
            c.A = std::stod(parts[0]);
            c.w = std::stoi(parts[1]);
            c.d_citations = std::stod(parts[2]);
            c.d_bursts = std::stod(parts[3]);
            c.score = std::stod(parts[4]);
            c.replicates = std::stoi(parts[5]);
            cells.push_back(c);
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
    }
    return cells;
}

}  // namespace citesim
