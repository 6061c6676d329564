// Command-line front end: generate / sweep / fit / scaling / correlate /
// gamma-profile. Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 I/O.

#include "qsearch/errors.hpp"
#include "qsearch/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<int> n_list;
    int m = -1;
    double beta = 0.0;
    std::string model;
    int samples = -1;
    int nodes_per_sample = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = -1;
    int kmax = -1;
    std::string out_dir = "out";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file")->envname("QSEARCH_CONFIG");
    cmd->add_option("--seed", f.seed, "master seed")->envname("QSEARCH_SEED")
        ->each([&f](const std::string&) { f.seed_set = true; });
    cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)")
        ->envname("QSEARCH_WORKERS");
    cmd->add_option("--out", f.out_dir, "output directory")->envname("QSEARCH_OUT");
    cmd->add_option("--n", f.n_list, "node counts")->envname("QSEARCH_N");
    cmd->add_option("--m", f.m, "edges per node")->envname("QSEARCH_M");
    cmd->add_option("--beta", f.beta, "degree exponent")->envname("QSEARCH_BETA");
    cmd->add_option("--model", f.model, "network model: lcd | er")->envname("QSEARCH_MODEL");
    cmd->add_option("--samples", f.samples, "graph samples per N")->envname("QSEARCH_SAMPLES");
    cmd->add_option("--nodes-per-sample", f.nodes_per_sample,
                    "marked nodes per sample (-1 = all non-hub)")
        ->envname("QSEARCH_NODES_PER_SAMPLE");
    cmd->add_option("--kmax", f.kmax, "max mixture components")->envname("QSEARCH_KMAX");
}

qsearch::SweepConfig build_config(const CommonFlags& f) {
    qsearch::SweepConfig config;
    if (!f.config_path.empty())
        config = qsearch::load_sweep_config(f.config_path);
    if (!f.n_list.empty())
        config.n_list = f.n_list;
    if (f.m > 0)
        config.m = f.m;
    if (f.beta > 0.0)
        config.beta = f.beta;
    if (!f.model.empty())
        config.model = f.model;
    if (f.samples > 0)
        config.samples = f.samples;
    if (f.nodes_per_sample != 0)
        config.nodes_per_sample = f.nodes_per_sample;
    if (f.seed_set)
        config.master_seed = f.seed;
    if (f.workers >= 0)
        config.workers = f.workers;
    if (f.kmax > 0)
        config.fit.k_max = f.kmax;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time quantum-walk spatial search on scale-free networks"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string in_csv;
    std::vector<std::string> in_csvs;
    std::string graph_file;
    int profile_w = -1;
    double gamma_lo = 0.0, gamma_hi = 0.0;
    int profile_points = 200;

    auto* generate = app.add_subcommand("generate", "write edge-list files per (N, sample)");
    add_common(generate, flags);
    auto* sweep = app.add_subcommand("sweep", "run searches over samples and marked nodes");
    add_common(sweep, flags);
    auto* fit = app.add_subcommand("fit", "lognormal mixture fit of a sweep CSV");
    add_common(fit, flags);
    fit->add_option("--in", in_csv, "sweep CSV")->required();
    auto* scaling = app.add_subcommand("scaling", "exponent fits across sweep CSVs");
    add_common(scaling, flags);
    scaling->add_option("--in", in_csvs, "sweep CSVs (>= 3 distinct N)")->required();
    auto* correlate = app.add_subcommand("correlate", "centrality correlation table");
    add_common(correlate, flags);
    correlate->add_option("--in", in_csv, "sweep CSV")->required();
    auto* profile = app.add_subcommand("gamma-profile", "overlap and gap curves against gamma");
    add_common(profile, flags);
    profile->add_option("--graph", graph_file, "edge-list file")->required();
    profile->add_option("--w", profile_w, "marked node")->required();
    profile->add_option("--gamma-lo", gamma_lo, "scan start (default: 1e-3/lambda1)");
    profile->add_option("--gamma-hi", gamma_hi, "scan end (default: 10/lambda1)");
    profile->add_option("--points", profile_points, "scan points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const qsearch::SweepConfig config = build_config(flags);
        const std::filesystem::path out_dir = flags.out_dir;
        if (generate->parsed()) {
            const auto paths = qsearch::cmd_generate(config, out_dir);
            std::cout << "wrote " << paths.size() << " edge-list files under " << out_dir
                      << "\n";
        } else if (sweep->parsed()) {
            const auto csv = qsearch::cmd_sweep(config, out_dir, &std::cerr);
            std::cout << csv.string() << "\n";
        } else if (fit->parsed()) {
            const auto out = qsearch::cmd_fit(in_csv, config.fit, out_dir);
            std::cout << "k=" << out.fit.k << " bic=" << out.fit.bic << " -> "
                      << out.mixture_json.string() << "\n";
        } else if (scaling->parsed()) {
            std::vector<std::filesystem::path> paths(in_csvs.begin(), in_csvs.end());
            const auto table = qsearch::cmd_scaling(paths, config.fit, out_dir);
            for (const auto& row : table.rows)
                std::cout << row.quantity << " alpha=" << row.fit.alpha << " +- "
                          << row.fit.stderr_alpha << (row.fit.is_const ? " (const)" : "")
                          << "\n";
        } else if (correlate->parsed()) {
            const auto table = qsearch::cmd_correlate(in_csv, out_dir);
            for (const auto& row : table.rows)
                std::cout << row.measure << " r_T=" << row.r_search_time
                          << " r_P=" << row.r_p_max << "\n";
        } else if (profile->parsed()) {
            const auto out = qsearch::cmd_gamma_profile(
                graph_file, profile_w, gamma_lo, gamma_hi, profile_points,
                out_dir / "gamma_profile.csv", config.search);
            std::cout << out.string() << "\n";
        }
    } catch (const qsearch::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qsearch::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
