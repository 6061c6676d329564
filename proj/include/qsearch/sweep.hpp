#pragma once

#include "qsearch/centrality.hpp"
#include "qsearch/mixture.hpp"
#include "qsearch/multigraph.hpp"
#include "qsearch/scaling.hpp"
#include "qsearch/search.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsearch {

struct FitConfig {
    int k_max = 4;
    int histogram_bins = 40;
    MixtureOptions em;
};

struct SweepConfig {
    std::vector<int> n_list{2000};
    int m = 5;
    double beta = 3.0;
    std::string model = "lcd"; // "lcd" or "er" (same node and edge count, simple graph)
    int samples = 1;
    int nodes_per_sample = 1; // -1: every node except the hub
    std::uint64_t master_seed = 1;
    int workers = 0; // 0: hardware concurrency
    bool centrality_reports = false;
    SearchOptions search;
    FitConfig fit;

    void validate() const;
};

// JSON config with nested sections (network / sweep / search / fit / output);
// missing keys keep their defaults.
SweepConfig load_sweep_config(const std::filesystem::path& path);

// Everything that determines the numbers (seeds, scan grids, EM settings) but
// not runtime-only knobs like the worker count, so outputs stay byte-identical
// across schedulings.
std::string manifest_string(const SweepConfig& config);

// One row per attempted (sample, marked node); search fields are NaN when the
// status is not "ok".
struct SweepRecord {
    int sample_id = 0;
    int n = 0;
    int m = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    int w = -1;
    std::int64_t degree_w = 0;
    int l_hub_w = -1;
    std::int64_t e_hub_w = 0;
    double gamma_opt = 0.0;
    double delta_e = 0.0;
    double tau = 0.0;
    double p_max = 0.0;
    double search_time = 0.0;
    double c_d = 0.0, c_e = 0.0, c_c = 0.0, c_b = 0.0, c_rc = 0.0, c_rb = 0.0;
    double h_hub_w = 0.0;
    std::string status = "ok";
};

std::string sweep_csv_header();
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path& path);

// Output of one (n, sample) work unit, delivered to the sink in deterministic
// unit order regardless of scheduling.
struct SampleOutput {
    int n = 0;
    int sample_id = 0;
    std::uint64_t seed = 0;
    std::vector<SweepRecord> records;
    std::optional<Multigraph> graph;
    std::optional<CentralityReport> report; // absent when the sample failed whole
};

using SampleSink = std::function<void(const SampleOutput&)>;

// Generates graphs, runs the search per marked node (hub excluded), attaches
// centralities; failures become status codes, never aborts. Units run on a
// worker pool; the sink sees them in order.
void run_sweep(const SweepConfig& config, const SampleSink& sink,
               std::ostream* progress = nullptr);
std::vector<SweepRecord> run_sweep_collect(const SweepConfig& config,
                                           std::ostream* progress = nullptr);

// ---- command-level entry points shared by the CLI and tests ----

// One edge-list file per (N, sample): graph_n<N>_s<S>.edges.
std::vector<std::filesystem::path> cmd_generate(const SweepConfig& config,
                                                const std::filesystem::path& out_dir);

// sweep.csv + manifest.json (+ per-sample centrality CSVs when configured).
// Skips when an identical completed run is already present; errors on a
// mismatched or partial one.
std::filesystem::path cmd_sweep(const SweepConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* progress = nullptr);

struct FitOutput {
    MixtureFit fit;
    std::filesystem::path mixture_json;
    std::filesystem::path histogram_csv;
    std::filesystem::path posterior_csv;
};
FitOutput cmd_fit(const std::filesystem::path& sweep_csv, const FitConfig& config,
                  const std::filesystem::path& out_dir);

struct ScalingRow {
    std::string quantity; // mu_1, sigma_1, p_1, ..., T_l1, T_l2, T_l3
    ScalingFit fit;
};
struct ScalingTable {
    std::vector<ScalingRow> rows;
    std::filesystem::path csv;
    const ScalingFit* find(const std::string& quantity) const;
};
ScalingTable cmd_scaling(const std::vector<std::filesystem::path>& sweep_csvs,
                         const FitConfig& config, const std::filesystem::path& out_dir);

struct CorrelationRow {
    std::string measure;
    double r_search_time = 0.0;
    double r_p_max = 0.0;
};
struct CorrelationTable {
    std::vector<CorrelationRow> rows;
    std::filesystem::path csv;
    std::filesystem::path scatter_csv;
    const CorrelationRow* find(const std::string& measure) const;
};
CorrelationTable cmd_correlate(const std::filesystem::path& sweep_csv,
                               const std::filesystem::path& out_dir);

// Fig.-3-style curves: per-gamma squared overlaps and gap for one marked node.
// gamma_lo == 0 picks the default scan bracket.
std::filesystem::path cmd_gamma_profile(const std::filesystem::path& graph_file, int w,
                                        double gamma_lo, double gamma_hi, int points,
                                        const std::filesystem::path& out_csv,
                                        const SearchOptions& opt = {});

} // namespace qsearch
