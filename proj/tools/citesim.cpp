// citesim: build bipartite paper-author citation networks from bibliographic
// corpora, replay publication history under attachment kernels, and fit
// kernel parameters against citation and burst-size distributions.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "citesim/errors.hpp"
#include "citesim/pipeline.hpp"
#include "citesim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct KernelFlags {
    std::string kind = "pa";
    double A = 1.8;
    int w = 12;

    citesim::KernelParams resolve() const {
        citesim::KernelParams k;
        k.kind = citesim::kernel_kind_from_string(kind);
        k.additive_A = A;
        k.window_w = w;
        k.validate();
        return k;
    }
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& flags) {
    cmd->add_option("--kernel", flags.kind, "Attachment kernel")
        ->check(CLI::IsMember({"pa", "recency"}));
    cmd->add_option("--A", flags.A, "Additive kernel constant");
    cmd->add_option("--w", flags.w, "Recency window in months");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Author-level citation dynamics: networks, simulation, fitting"};
    app.set_version_flag("--version", citesim::kVersion);
    app.require_subcommand(1);

    std::string epoch_text = "1893-01";
    app.add_option("--epoch", epoch_text, "Month-zero anchor for YYYY-MM dates")
        ->capture_default_str();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build the paper-author network and export it");
    citesim::IngestArgs ingest_args;
    ingest->add_option("--corpus", ingest_args.corpus_path, "Line-delimited JSON corpus")
        ->required();
    bool ingest_no_self = false;
    ingest->add_flag("--exclude-self-citations", ingest_no_self,
                     "Drop citations to the citing paper's own authors");
    ingest->add_option("--out", ingest_args.out_dir, "Output directory")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
    citesim::SynthArgs synth_args;
    std::uint64_t synth_seed = 0;
    bool synth_seed_set = false;
    synth->add_option("--config", synth_args.config_path, "Synthetic spec (JSON)")->required();
    synth->add_option("--seed", synth_seed, "Override the spec's seed")
        ->each([&](const std::string&) { synth_seed_set = true; });
    synth->add_option("--out", synth_args.out_dir, "Output directory")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Replay the corpus under a kernel");
    citesim::SimulateArgs sim_args;
    KernelFlags sim_kernel;
    simulate->add_option("--corpus", sim_args.corpus_path, "Line-delimited JSON corpus")
        ->required();
    simulate->add_option("--t-in", sim_args.t_in, "Start month (YYYY-MM or index)");
    simulate->add_option("--t-f", sim_args.t_f, "End month (YYYY-MM or index)");
    add_kernel_flags(simulate, sim_kernel);
    simulate->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
    std::string sim_start = "warm", sim_update = "per-month";
    simulate->add_option("--start", sim_start, "Start mode")
        ->check(CLI::IsMember({"warm", "cold"}));
    simulate->add_option("--update", sim_update, "Weight update cadence")
        ->check(CLI::IsMember({"per-month", "per-citation"}));
    bool sim_no_self = false;
    simulate->add_flag("--exclude-self-citations", sim_no_self,
                       "Forbid papers citing their own authors");
    simulate->add_option("--out", sim_args.out_dir, "Output directory")->required();

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Distributions, correlations, snapshots");
    citesim::MetricsArgs metrics_args;
    metrics->add_option("--corpus", metrics_args.corpus_path, "Line-delimited JSON corpus")
        ->required();
    metrics->add_option("--histories", metrics_args.histories_path,
                        "Simulated histories CSV (default: empirical)");
    metrics->add_option("--at", metrics_args.at, "Evaluation month (YYYY-MM or index)");
    metrics_args.lags = {1, 2, 3, 5, 8, 12, 18, 25, 35, 50};
    metrics->add_option("--lags", metrics_args.lags, "Lags for the correlation curve");
    metrics_args.kmins = {0, 100, 500};
    metrics->add_option("--kmins", metrics_args.kmins, "Citation thresholds for correlations");
    metrics->add_option("--lag-window", metrics_args.lag_window_months,
                        "Months averaged over for correlations")
        ->capture_default_str();
    metrics->add_option("--out", metrics_args.out_dir, "Output directory")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid-search kernel parameters");
    citesim::SweepArgs sweep_args;
    std::string sweep_kind = "recency";
    sweep->add_option("--corpus", sweep_args.corpus_path, "Line-delimited JSON corpus")
        ->required();
    sweep->add_option("--grid-A", sweep_args.grid_A, "A grid (lo:hi:logN or comma list)")
        ->capture_default_str();
    sweep->add_option("--grid-w", sweep_args.grid_w, "w grid (lo:hi or comma list)")
        ->capture_default_str();
    sweep->add_option("--kernel", sweep_kind, "Kernel family to sweep")
        ->check(CLI::IsMember({"pa", "recency"}));
    sweep->add_option("--replicates", sweep_args.replicates, "Runs per grid cell")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Base RNG seed")->capture_default_str();
    sweep->add_option("--t-in", sweep_args.t_in, "Start month");
    sweep->add_option("--t-f", sweep_args.t_f, "End month");
    std::string sweep_start = "warm", sweep_transform = "log10p";
    sweep->add_option("--start", sweep_start, "Start mode")
        ->check(CLI::IsMember({"warm", "cold"}));
    sweep->add_option("--transform", sweep_transform, "Distance transform")
        ->check(CLI::IsMember({"linear", "log10p"}));
    sweep->add_option("--jobs", sweep_args.jobs, "Concurrent grid cells")->capture_default_str();
    sweep->add_flag("--resume", sweep_args.resume, "Skip cells already in the map file");
    sweep->add_option("--out", sweep_args.out_dir, "Output directory")->required();

    // reproduce
    auto* reproduce =
        app.add_subcommand("reproduce", "Full pipeline: corpus, both kernels, metrics, sweep");
    citesim::ReproduceArgs rep_args;
    reproduce->add_option("--config", rep_args.synth_config_path, "Synthetic spec (JSON)");
    reproduce->add_option("--corpus", rep_args.corpus_path, "Existing corpus instead");
    reproduce->add_option("--t-in", rep_args.t_in, "Start month");
    reproduce->add_option("--t-f", rep_args.t_f, "End month");
    reproduce->add_option("--recency-A", rep_args.recency_kernel.additive_A, "Recency kernel A")
        ->capture_default_str();
    reproduce->add_option("--recency-w", rep_args.recency_kernel.window_w, "Recency window")
        ->capture_default_str();
    reproduce->add_option("--pa-A", rep_args.pa_A, "Preferential kernel A")
        ->capture_default_str();
    reproduce->add_option("--seed", rep_args.seed, "Base RNG seed")->capture_default_str();
    std::string rep_start = "warm";
    reproduce->add_option("--start", rep_start, "Start mode")
        ->check(CLI::IsMember({"warm", "cold"}));
    reproduce->add_option("--checkpoints", rep_args.checkpoints, "Distribution checkpoints")
        ->capture_default_str();
    reproduce->add_option("--max-lag", rep_args.max_lag, "Largest correlation lag")
        ->capture_default_str();
    reproduce->add_option("--sweep-A", rep_args.sweep_A, "Sweep A grid (default: recency A)");
    reproduce->add_option("--sweep-w", rep_args.sweep_w, "Sweep w grid")->capture_default_str();
    reproduce->add_option("--sweep-replicates", rep_args.sweep_replicates, "Runs per cell")
        ->capture_default_str();
    reproduce->add_option("--jobs", rep_args.jobs, "Concurrent sweep cells")
        ->capture_default_str();
    reproduce->add_option("--out", rep_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const citesim::Epoch epoch = citesim::Epoch::parse(epoch_text);
        if (ingest->parsed()) {
            ingest_args.epoch = epoch;
            ingest_args.include_self_citations = !ingest_no_self;
            auto m = citesim::cmd_ingest(ingest_args);
            std::cout << "ingest: " << m.outputs.size() << " files under "
                      << ingest_args.out_dir.string() << "\n";
        } else if (synth->parsed()) {
            if (synth_seed_set) synth_args.seed_override = synth_seed;
            auto m = citesim::cmd_synth(synth_args);
            std::cout << "synth: wrote " << m.outputs.front().first << "\n";
        } else if (simulate->parsed()) {
            sim_args.epoch = epoch;
            sim_args.kernel = sim_kernel.resolve();
            sim_args.start = citesim::start_mode_from_string(sim_start);
            sim_args.update = citesim::update_mode_from_string(sim_update);
            sim_args.include_self_citations = !sim_no_self;
            auto m = citesim::cmd_simulate(sim_args);
            std::cout << "simulate: wrote " << m.outputs.front().first << "\n";
        } else if (metrics->parsed()) {
            metrics_args.epoch = epoch;
            auto m = citesim::cmd_metrics(metrics_args);
            std::cout << "metrics: " << m.outputs.size() << " files under "
                      << metrics_args.out_dir.string() << "\n";
        } else if (sweep->parsed()) {
            sweep_args.epoch = epoch;
            sweep_args.kind = citesim::kernel_kind_from_string(sweep_kind);
            sweep_args.start = citesim::start_mode_from_string(sweep_start);
            sweep_args.transform = citesim::transform_from_string(sweep_transform);
            auto m = citesim::cmd_sweep(sweep_args);
            std::cout << "sweep: best A=" << m.config.at("best_A").dump()
                      << " w=" << m.config.at("best_w").dump() << "\n";
        } else if (reproduce->parsed()) {
            rep_args.epoch = epoch;
            rep_args.start = citesim::start_mode_from_string(rep_start);
            rep_args.recency_kernel.validate();
            auto m = citesim::cmd_reproduce(rep_args);
            std::cout << "reproduce: " << m.outputs.size() << " files under "
                      << rep_args.out_dir.string() << "\n";
        }
        return kExitOk;
    } catch (const citesim::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
