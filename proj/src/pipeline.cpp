#include "citesim/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"
#include "citesim/metrics.hpp"
#include "citesim/rng.hpp"
#include "citesim/version.hpp"

namespace citesim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

month_t resolve_month(const std::string& text, month_t fallback, const Epoch& epoch) {
    if (text.empty()) return fallback;
    return parse_month_arg(text, epoch);
}

nlohmann::json epoch_json(const Epoch& e) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d", e.month);
    return std::to_string(e.year) + "-" + buf;
}

int last_complete_year(month_t t) { return static_cast<int>((t + 1) / 12) - 1; }

// Paper months are not part of the history CSV schema; productivity
// columns come from the corpus instead.
void merge_paper_months(AuthorTable& table, const AuthorTable& empirical) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto& state = table.at(static_cast<std::uint32_t>(i));
        auto idx = empirical.find(state.author_id());
        if (!idx) continue;
        for (month_t m : empirical.at(*idx).paper_months()) state.record_paper(m);
    }
}

void write_totals_csv(const SimResult& sim, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "month,author_count,cumulative_citations\n";
    for (const auto& row : sim.totals) {
        out << row.month << ',' << row.author_count << ',' << row.cumulative_citations << '\n';
    }
}

}  // namespace

RunManifest cmd_ingest(const IngestArgs& args) {
    auto t0 = Clock::now();
    Corpus corpus = load_corpus(args.corpus_path, args.epoch);
    Bpan bpan = build(corpus, {args.include_self_citations});

    auto histories = args.out_dir / "author_histories.csv";
    auto edges = args.out_dir / "edges.csv";
    write_history_csv(bpan.authors, histories, corpus.last_month());
    write_edges_csv(bpan, edges);

    RunManifest m;
    m.command = "ingest";
    m.config = {{"corpus", args.corpus_path.string()},
                {"epoch", epoch_json(args.epoch)},
                {"include_self_citations", args.include_self_citations},
                {"out", args.out_dir.string()}};
    m.add_input(args.corpus_path);
    m.add_output(histories);
    m.add_output(edges);
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

RunManifest cmd_synth(const SynthArgs& args) {
    auto t0 = Clock::now();
    SyntheticSpec spec = SyntheticSpec::from_json_file(args.config_path);
    if (args.seed_override) spec.seed = *args.seed_override;
    Corpus corpus = generate_synthetic(spec);

    auto corpus_path = args.out_dir / "corpus.jsonl";
    write_corpus(corpus, corpus_path);

    RunManifest m;
    m.command = "synth";
    m.config = nlohmann::json::parse(spec.to_json_text());
    m.seeds = {spec.seed};
    m.add_input(args.config_path);
    m.add_output(corpus_path);
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

RunManifest cmd_simulate(const SimulateArgs& args) {
    auto t0 = Clock::now();
    Corpus corpus = load_corpus(args.corpus_path, args.epoch);
    Bpan empirical = build(corpus, {args.include_self_citations});

    SimConfig config;
    config.t_in = resolve_month(args.t_in, corpus.first_month(), args.epoch);
    config.t_f = resolve_month(args.t_f, corpus.last_month(), args.epoch);
    config.kernel = args.kernel;
    config.seed = args.seed;
    config.start = args.start;
    config.update = args.update;
    config.allow_self_citations = args.include_self_citations;

    SimResult sim = run(corpus, empirical, config);

    auto histories = args.out_dir / "histories.csv";
    auto totals = args.out_dir / "totals.csv";
    write_history_csv(sim.authors, histories, config.t_f);
    write_totals_csv(sim, totals);

    RunManifest m;
    m.command = "simulate";
    m.config = {{"corpus", args.corpus_path.string()},
                {"epoch", epoch_json(args.epoch)},
                {"t_in", config.t_in},
                {"t_f", config.t_f},
                {"kernel", to_string(config.kernel.kind)},
                {"A", config.kernel.additive_A},
                {"w", config.kernel.window_w},
                {"seed", config.seed},
                {"start", to_string(config.start)},
                {"update", to_string(config.update)},
                {"include_self_citations", args.include_self_citations},
                {"out", args.out_dir.string()}};
    m.seeds = {config.seed};
    m.add_input(args.corpus_path);
    m.add_output(histories);
    m.add_output(totals);
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

RunManifest cmd_metrics(const MetricsArgs& args) {
    auto t0 = Clock::now();
    Corpus corpus = load_corpus(args.corpus_path, args.epoch);
    Bpan empirical = build(corpus, {});

    AuthorTable loaded;
    const bool simulated = !args.histories_path.empty();
    if (simulated) {
        loaded = load_history_csv(args.histories_path);
        merge_paper_months(loaded, empirical.authors);
    }
    const AuthorTable& table = simulated ? loaded : empirical.authors;

    const month_t at = resolve_month(args.at, corpus.last_month(), args.epoch);
    const int burst_year = last_complete_year(at);
    if (burst_year < 1) throw DataError("metrics: month range too short for a burst year");

    auto citations_path = args.out_dir / "citations.csv";
    auto bursts_path = args.out_dir / "bursts.csv";
    auto snapshot_path = args.out_dir / "snapshot.csv";
    auto max_burst_path = args.out_dir / "max_burst.csv";
    auto lag_path = args.out_dir / "lag_correlation.csv";

    write_distribution_csv(citation_distribution(table, at), citations_path);
    write_distribution_csv(burst_distribution(table, burst_year).sample, bursts_path);
    write_snapshot_csv(snapshot(table, at), snapshot_path);
    write_max_burst_csv(max_burst_summary(table, at), max_burst_path);

    std::vector<LagCorrelation> lag_rows;
    const month_t from = std::max(corpus.first_month(), at - args.lag_window_months + 1);
    for (std::uint64_t kmin : args.kmins) {
        for (int lag : args.lags) {
            lag_rows.push_back(lag_correlation(table, lag, kmin, from, at));
        }
    }
    write_lag_correlation_csv(lag_rows, lag_path);

    RunManifest m;
    m.command = "metrics";
    m.config = {{"corpus", args.corpus_path.string()},
                {"histories", args.histories_path.string()},
                {"epoch", epoch_json(args.epoch)},
                {"at", at},
                {"burst_year", burst_year},
                {"lags", args.lags},
                {"kmins", args.kmins},
                {"lag_window_months", args.lag_window_months},
                {"out", args.out_dir.string()}};
    m.add_input(args.corpus_path);
    if (simulated) m.add_input(args.histories_path);
    for (const auto& p : {citations_path, bursts_path, snapshot_path, max_burst_path, lag_path}) {
        m.add_output(p);
    }
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

RunManifest cmd_sweep(const SweepArgs& args) {
    auto t0 = Clock::now();
    Corpus corpus = load_corpus(args.corpus_path, args.epoch);
    Bpan empirical = build(corpus, {});

    GridSpec grid;
    grid.A_values = GridSpec::parse_A(args.grid_A);
    grid.w_values = GridSpec::parse_w(args.grid_w);

    SweepOptions options;
    options.t_in = resolve_month(args.t_in, corpus.first_month(), args.epoch);
    options.t_f = resolve_month(args.t_f, corpus.last_month(), args.epoch);
    options.kind = args.kind;
    options.replicates = args.replicates;
    options.seed = args.seed;
    options.start = args.start;
    options.transform = args.transform;
    options.jobs = args.jobs;

    auto map_path = args.out_dir / "map.csv";
    if (args.resume && std::filesystem::exists(map_path)) {
        options.completed = read_sweep_csv(map_path);
    }

    SweepResult result = sweep(corpus, empirical, grid, options);
    write_sweep_csv(result, map_path);

    RunManifest m;
    m.command = "sweep";
    m.config = {{"corpus", args.corpus_path.string()},
                {"epoch", epoch_json(args.epoch)},
                {"grid_A", args.grid_A},
                {"grid_w", args.grid_w},
                {"kernel", to_string(args.kind)},
                {"replicates", args.replicates},
                {"seed", args.seed},
                {"t_in", options.t_in},
                {"t_f", options.t_f},
                {"start", to_string(args.start)},
                {"transform", to_string(args.transform)},
                {"burst_year", result.burst_year},
                {"resume", args.resume},
                {"best_A", result.best().A},
                {"best_w", result.best().w},
                {"out", args.out_dir.string()}};
    m.seeds = {args.seed};
    m.add_input(args.corpus_path);
    m.add_output(map_path);
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

RunManifest cmd_reproduce(const ReproduceArgs& args) {
    auto t0 = Clock::now();
    RunManifest m;
    m.command = "reproduce";

    Corpus corpus;
    if (!args.synth_config_path.empty()) {
        SyntheticSpec spec = SyntheticSpec::from_json_file(args.synth_config_path);
        corpus = generate_synthetic(spec);
        auto corpus_path = args.out_dir / "corpus.jsonl";
        write_corpus(corpus, corpus_path);
        m.add_input(args.synth_config_path);
        m.add_output(corpus_path);
    } else if (!args.corpus_path.empty()) {
        corpus = load_corpus(args.corpus_path, args.epoch);
        m.add_input(args.corpus_path);
    } else {
        throw DataError("reproduce needs either a synthetic config or a corpus");
    }

    Bpan empirical = build(corpus, {});
    const month_t t_in =
        resolve_month(args.t_in, std::min<month_t>(corpus.first_month() + 12, corpus.last_month()),
                      args.epoch);
    const month_t t_f = resolve_month(args.t_f, corpus.last_month(), args.epoch);

    // Simulations under the two kernels, seeds derived from the base seed.
    SimConfig recency_cfg;
    recency_cfg.t_in = t_in;
    recency_cfg.t_f = t_f;
    recency_cfg.kernel = args.recency_kernel;
    recency_cfg.seed = args.seed;
    recency_cfg.start = args.start;

    SimConfig pa_cfg = recency_cfg;
    pa_cfg.kernel = KernelParams{KernelKind::preferential, args.pa_A, 12};
    pa_cfg.seed = mix_seed(args.seed, 0x5041);

    SimResult recency_sim = run(corpus, empirical, recency_cfg);
    SimResult pa_sim = run(corpus, empirical, pa_cfg);
    m.seeds = {recency_cfg.seed, pa_cfg.seed};

    const month_t since = args.start == StartMode::cold ? t_in : kNoMonth;
    struct Series {
        const char* name;
        const AuthorTable* table;
        month_t since;
    };
    const Series series[] = {{"empirical", &empirical.authors, since},
                             {"pa", &pa_sim.authors, kNoMonth},
                             {"recency", &recency_sim.authors, kNoMonth}};

    // Distribution checkpoints, evenly spaced across the simulated range.
    const int n_cp = std::max(1, args.checkpoints);
    std::vector<month_t> cps;
    for (int k = 1; k <= n_cp; ++k) {
        cps.push_back(t_in + static_cast<month_t>(
                                 std::llround(static_cast<double>(k) * (t_f - t_in) / n_cp)));
    }
    for (const auto& s : series) {
        for (int k = 0; k < n_cp; ++k) {
            const month_t cp = cps[static_cast<std::size_t>(k)];
            auto cit_path = args.out_dir / (std::string(s.name) + "_citations_cp" +
                                            std::to_string(k + 1) + ".csv");
            write_distribution_csv(citation_distribution(*s.table, cp, s.since), cit_path);
            m.add_output(cit_path);
            const int by = last_complete_year(cp);
            if (by >= 1) {
                auto burst_path = args.out_dir / (std::string(s.name) + "_bursts_cp" +
                                                  std::to_string(k + 1) + ".csv");
                write_distribution_csv(burst_distribution(*s.table, by, s.since).sample,
                                       burst_path);
                m.add_output(burst_path);
            }
        }
    }

    // Lag-correlation curves over the trailing ten years.
    std::vector<int> lags;
    for (int lag : {1, 2, 3, 5, 8, 12, 18, 25, 35, args.max_lag}) {
        if (lag <= args.max_lag && (lags.empty() || lag > lags.back())) lags.push_back(lag);
    }
    const std::vector<std::uint64_t> kmins = {0, 100, 500};
    const month_t lag_from = std::max(corpus.first_month(), t_f - 119);
    for (const auto& s : series) {
        std::vector<LagCorrelation> rows;
        for (std::uint64_t kmin : kmins) {
            for (int lag : lags) {
                try {
                    rows.push_back(lag_correlation(*s.table, lag, kmin, lag_from, t_f));
                } catch (const std::domain_error&) {
                    // nothing above this kmin threshold in a small corpus
                }
            }
        }
        auto path = args.out_dir / ("lag_correlation_" + std::string(s.name) + ".csv");
        write_lag_correlation_csv(rows, path);
        m.add_output(path);
    }

    // Parameter map around the recency kernel.
    GridSpec grid;
    grid.A_values = args.sweep_A.empty() ? std::vector<double>{args.recency_kernel.additive_A}
                                         : GridSpec::parse_A(args.sweep_A);
    grid.w_values = GridSpec::parse_w(args.sweep_w);
    SweepOptions sweep_opts;
    sweep_opts.t_in = t_in;
    sweep_opts.t_f = t_f;
    sweep_opts.kind = KernelKind::recency;
    sweep_opts.replicates = args.sweep_replicates;
    sweep_opts.seed = mix_seed(args.seed, 0x5357);
    sweep_opts.start = args.start;
    sweep_opts.jobs = args.jobs;
    SweepResult map = sweep(corpus, empirical, grid, sweep_opts);
    auto map_path = args.out_dir / "sweep_map.csv";
    write_sweep_csv(map, map_path);
    m.add_output(map_path);

    m.config = {{"synth_config", args.synth_config_path.string()},
                {"corpus", args.corpus_path.string()},
                {"epoch", epoch_json(args.epoch)},
                {"t_in", t_in},
                {"t_f", t_f},
                {"recency_A", args.recency_kernel.additive_A},
                {"recency_w", args.recency_kernel.window_w},
                {"pa_A", args.pa_A},
                {"seed", args.seed},
                {"start", to_string(args.start)},
                {"checkpoints", n_cp},
                {"max_lag", args.max_lag},
                {"sweep_A", args.sweep_A},
                {"sweep_w", args.sweep_w},
                {"sweep_replicates", args.sweep_replicates},
                {"best_w", map.best().w},
                {"out", args.out_dir.string()}};
    m.wall_clock_seconds = seconds_since(t0);
    write_manifest(m, args.out_dir / "manifest.json");
    return m;
}

}  // namespace citesim
