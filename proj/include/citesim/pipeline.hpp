#ifndef CITESIM_PIPELINE_HPP
#define CITESIM_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citesim/fit.hpp"
#include "citesim/manifest.hpp"
#include "citesim/month.hpp"
#include "citesim/simulate.hpp"

namespace citesim {

// Command implementations shared by the CLI and the test suites. Each
// command writes its outputs plus a manifest.json under out_dir and returns
// the manifest. Errors are thrown (DataError for bad inputs); the CLI maps
// them to exit codes.

struct IngestArgs {
    std::filesystem::path corpus_path;
    Epoch epoch;
    bool include_self_citations = true;
    std::filesystem::path out_dir;
};

RunManifest cmd_ingest(const IngestArgs& args);

struct SynthArgs {
    std::filesystem::path config_path;
    std::optional<std::uint64_t> seed_override;
    std::filesystem::path out_dir;
};

RunManifest cmd_synth(const SynthArgs& args);

struct SimulateArgs {
    std::filesystem::path corpus_path;
    Epoch epoch;
    std::string t_in;  // YYYY-MM or month index; empty = corpus first month
    std::string t_f;   // empty = corpus last month
    KernelParams kernel;
    std::uint64_t seed = 1;
    StartMode start = StartMode::warm;
    UpdateMode update = UpdateMode::per_month;
    bool include_self_citations = true;
    std::filesystem::path out_dir;
};

RunManifest cmd_simulate(const SimulateArgs& args);

struct MetricsArgs {
    std::filesystem::path corpus_path;
    Epoch epoch;
    // Optional simulated histories (CSV from cmd_simulate); empirical
    // histories are used when absent.
    std::filesystem::path histories_path;
    std::string at;  // snapshot/distribution month; empty = corpus last month
    std::vector<int> lags;
    std::vector<std::uint64_t> kmins;
    int lag_window_months = 120;
    std::filesystem::path out_dir;
};

RunManifest cmd_metrics(const MetricsArgs& args);

struct SweepArgs {
    std::filesystem::path corpus_path;
    Epoch epoch;
    std::string grid_A = "0.01:10:log13";
    std::string grid_w = "1:36";
    KernelKind kind = KernelKind::recency;
    int replicates = 5;
    std::uint64_t seed = 1;
    std::string t_in;
    std::string t_f;
    StartMode start = StartMode::warm;
    Transform transform = Transform::log10p;
    int jobs = 1;
    bool resume = false;
    std::filesystem::path out_dir;
};

RunManifest cmd_sweep(const SweepArgs& args);

struct ReproduceArgs {
    // Either a synthetic spec config or an existing corpus.
    std::filesystem::path synth_config_path;
    std::filesystem::path corpus_path;
    Epoch epoch;
    std::string t_in;  // empty = one year into the corpus
    std::string t_f;
    KernelParams recency_kernel{KernelKind::recency, 0.075, 12};
    double pa_A = 1.8;
    std::uint64_t seed = 1;
    StartMode start = StartMode::warm;
    int checkpoints = 4;
    int max_lag = 50;
    std::string sweep_A;  // optional small sweep grid; empty = skip A dimension
    std::string sweep_w = "6,12,24";
    int sweep_replicates = 3;
    int jobs = 1;
    std::filesystem::path out_dir;
};

RunManifest cmd_reproduce(const ReproduceArgs& args);

}  // namespace citesim

#endif
