#include "qsearch/sweep.hpp"

#include "qsearch/edgelist.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/generator.hpp"
#include "qsearch/graph_stats.hpp"
#include "qsearch/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace qsearch {

using nlohmann::json;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void SweepConfig::validate() const {
    if (n_list.empty())
        throw std::invalid_argument("config: n list must not be empty");
    for (const int n : n_list)
        if (n < 2)
            throw std::invalid_argument("config: every n must be >= 2");
    if (m < 1)
        throw std::invalid_argument("config: m must be >= 1");
    if (!(beta > 2.0))
        throw std::invalid_argument("config: beta must be > 2");
    if (model != "lcd" && model != "er")
        throw std::invalid_argument("config: model must be 'lcd' or 'er'");
    if (samples < 1)
        throw std::invalid_argument("config: samples must be >= 1");
    if (nodes_per_sample < 1 && nodes_per_sample != -1)
        throw std::invalid_argument("config: nodes_per_sample must be >= 1 or -1 for all");
    for (const int n : n_list)
        if (nodes_per_sample > n - 1)
            throw std::invalid_argument("config: nodes_per_sample exceeds non-hub node count");
    if (search.gamma_scan_points < 2 || search.tau_points_per_period < 1)
        throw std::invalid_argument("config: scan grids must be positive");
    if (!(search.gamma_lo_factor > 0.0) || !(search.gamma_hi_factor > search.gamma_lo_factor))
        throw std::invalid_argument("config: gamma scan bracket must satisfy 0 < lo < hi");
    if (!(search.gamma_rel_tol > 0.0) || !(search.tau_rel_tol > 0.0))
        throw std::invalid_argument("config: tolerances must be positive");
    if (fit.k_max < 1 || fit.histogram_bins < 1 || fit.em.restarts < 1)
        throw std::invalid_argument("config: fit settings must be positive");
}

namespace {

json search_options_json(const SearchOptions& s) {
    return json{{"gamma_scan_points", s.gamma_scan_points},
                {"gamma_lo_factor", s.gamma_lo_factor},
                {"gamma_hi_factor", s.gamma_hi_factor},
                {"gamma_rel_tol", s.gamma_rel_tol},
                {"tau_points_per_period", s.tau_points_per_period},
                {"tau_rel_tol", s.tau_rel_tol},
                {"plateau_tol", s.plateau_tol},
                {"epsilon", s.epsilon}};
}

json fit_config_json(const FitConfig& f) {
    return json{{"kmax", f.k_max},
                {"histogram_bins", f.histogram_bins},
                {"restarts", f.em.restarts},
                {"max_iter", f.em.max_iter},
                {"tol", f.em.tol},
                {"min_sigma", f.em.min_sigma},
                {"seed", f.em.seed}};
}

template <typename T> void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key))
        out = j.at(key).get<T>();
}

} // namespace

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("load_sweep_config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("load_sweep_config: " + path.string() + ": " + e.what());
    }

    SweepConfig c;
    if (j.contains("network")) {
        const auto& n = j.at("network");
        maybe(n, "n", c.n_list);
        maybe(n, "m", c.m);
        maybe(n, "beta", c.beta);
        maybe(n, "model", c.model);
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        maybe(s, "samples", c.samples);
        maybe(s, "nodes_per_sample", c.nodes_per_sample);
        maybe(s, "seed", c.master_seed);
        maybe(s, "workers", c.workers);
        maybe(s, "centrality_reports", c.centrality_reports);
    }
    if (j.contains("search")) {
        const auto& s = j.at("search");
        maybe(s, "gamma_scan_points", c.search.gamma_scan_points);
        maybe(s, "gamma_lo_factor", c.search.gamma_lo_factor);
        maybe(s, "gamma_hi_factor", c.search.gamma_hi_factor);
        maybe(s, "gamma_rel_tol", c.search.gamma_rel_tol);
        maybe(s, "tau_points_per_period", c.search.tau_points_per_period);
        maybe(s, "tau_rel_tol", c.search.tau_rel_tol);
        maybe(s, "plateau_tol", c.search.plateau_tol);
        maybe(s, "epsilon", c.search.epsilon);
    }
    if (j.contains("fit")) {
        const auto& f = j.at("fit");
        maybe(f, "kmax", c.fit.k_max);
        maybe(f, "histogram_bins", c.fit.histogram_bins);
        maybe(f, "restarts", c.fit.em.restarts);
        maybe(f, "max_iter", c.fit.em.max_iter);
        maybe(f, "tol", c.fit.em.tol);
        maybe(f, "min_sigma", c.fit.em.min_sigma);
        maybe(f, "seed", c.fit.em.seed);
    }
    return c;
}

std::string manifest_string(const SweepConfig& config) {
    json j;
    j["format"] = "qsearch-sweep-v1";
    j["network"] = {{"n", config.n_list},
                    {"m", config.m},
                    {"beta", config.beta},
                    {"model", config.model}};
    j["sweep"] = {{"samples", config.samples},
                  {"nodes_per_sample", config.nodes_per_sample},
                  {"seed", config.master_seed},
                  {"centrality_reports", config.centrality_reports}};
    j["search"] = search_options_json(config.search);
    j["fit"] = fit_config_json(config.fit);
    j["csv_columns"] = sweep_csv_header();
    return j.dump(2) + "\n";
}

std::string sweep_csv_header() {
    return "sample_id,n,m,beta,seed,w,degree_w,l_hub_w,e_hub_w,gamma_opt,delta_e,tau,p_max,T,"
           "C_d,C_e,C_c,C_b,C_rc,C_rb,H_hub_w,status";
}

namespace {

std::string record_line(const SweepRecord& r) {
    std::ostringstream out;
    out << r.sample_id << ',' << r.n << ',' << r.m << ',' << format_double(r.beta) << ','
        << r.seed << ',' << r.w << ',' << r.degree_w << ',' << r.l_hub_w << ',' << r.e_hub_w
        << ',' << format_double(r.gamma_opt) << ',' << format_double(r.delta_e) << ','
        << format_double(r.tau) << ',' << format_double(r.p_max) << ','
        << format_double(r.search_time) << ',' << format_double(r.c_d) << ','
        << format_double(r.c_e) << ',' << format_double(r.c_c) << ',' << format_double(r.c_b)
        << ',' << format_double(r.c_rc) << ',' << format_double(r.c_rb) << ','
        << format_double(r.h_hub_w) << ',' << r.status;
    return out.str();
}

} // namespace

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_sweep_csv: cannot open " + path.string());
    out << sweep_csv_header() << "\n";
    for (const auto& r : records)
        out << record_line(r) << "\n";
    if (!out)
        throw IoError("write_sweep_csv: write failed for " + path.string());
}

std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_sweep_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != sweep_csv_header())
        throw IoError("read_sweep_csv: unexpected header in " + path.string());

    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::string item;
        std::istringstream row(line);
        while (std::getline(row, item, ','))
            fields.push_back(item);
        if (fields.size() != 22)
            throw IoError("read_sweep_csv: malformed row in " + path.string());
        SweepRecord r;
        int i = 0;
        r.sample_id = std::stoi(fields[i++]);
        r.n = std::stoi(fields[i++]);
        r.m = std::stoi(fields[i++]);
        r.beta = std::strtod(fields[i++].c_str(), nullptr);
        r.seed = std::stoull(fields[i++]);
        r.w = std::stoi(fields[i++]);
        r.degree_w = std::stoll(fields[i++]);
        r.l_hub_w = std::stoi(fields[i++]);
        r.e_hub_w = std::stoll(fields[i++]);
        r.gamma_opt = std::strtod(fields[i++].c_str(), nullptr);
        r.delta_e = std::strtod(fields[i++].c_str(), nullptr);
        r.tau = std::strtod(fields[i++].c_str(), nullptr);
        r.p_max = std::strtod(fields[i++].c_str(), nullptr);
        r.search_time = std::strtod(fields[i++].c_str(), nullptr);
        r.c_d = std::strtod(fields[i++].c_str(), nullptr);
        r.c_e = std::strtod(fields[i++].c_str(), nullptr);
        r.c_c = std::strtod(fields[i++].c_str(), nullptr);
        r.c_b = std::strtod(fields[i++].c_str(), nullptr);
        r.c_rc = std::strtod(fields[i++].c_str(), nullptr);
        r.c_rb = std::strtod(fields[i++].c_str(), nullptr);
        r.h_hub_w = std::strtod(fields[i++].c_str(), nullptr);
        r.status = fields[i++];
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

std::string status_of(const NumericalError& e) {
    if (dynamic_cast<const DegenerateEigenvalueError*>(&e))
        return "degenerate";
    if (dynamic_cast<const BracketFailureError*>(&e))
        return "bracket_failure";
    if (dynamic_cast<const WindowEdgeError*>(&e))
        return "window_edge";
    return "numerical_error";
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return SplitMix64::mix(master ^ SplitMix64::mix(stream + 0x9E3779B97F4A7C15ULL));
}

// Distinct non-hub nodes; draw order is the record order.
std::vector<int> draw_marks(int n, int hub, int count, std::uint64_t seed) {
    std::vector<int> marks;
    if (count < 0) {
        for (int w = 0; w < n; ++w)
            if (w != hub)
                marks.push_back(w);
        return marks;
    }
    SplitMix64 rng = SplitMix64::derive(seed, 0x6D61726BULL); // "mark"
    std::unordered_set<int> chosen;
    while (static_cast<int>(marks.size()) < count) {
        const int w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (w == hub || chosen.count(w))
            continue;
        chosen.insert(w);
        marks.push_back(w);
    }
    return marks;
}

SampleOutput run_sample(const SweepConfig& config, int n, int sample_id) {
    SampleOutput out;
    out.n = n;
    out.sample_id = sample_id;
    out.seed = derive_seed(derive_seed(config.master_seed, static_cast<std::uint64_t>(n)),
                           static_cast<std::uint64_t>(sample_id));

    const Multigraph graph =
        config.model == "er"
            ? generate_erdos_renyi(n, static_cast<std::int64_t>(config.m) * n, out.seed)
            : generate_with_exponent(n, config.m, config.beta, out.seed);
    out.graph = graph;

    const int hub = hub_node(graph);
    const auto hub_dist = bfs_distances(graph, hub);
    const auto marks = draw_marks(n, hub, config.nodes_per_sample, out.seed);

    std::optional<SearchEngine> engine;
    std::string sample_status = "ok";
    try {
        engine.emplace(graph, config.search);
        out.report = centrality_report(graph, engine->perron());
    } catch (const NumericalError& e) {
        sample_status = status_of(e);
    }

    for (const int w : marks) {
        SweepRecord r;
        r.sample_id = sample_id;
        r.n = n;
        r.m = config.m;
        r.beta = config.beta;
        r.seed = out.seed;
        r.w = w;
        r.degree_w = graph.degree(w);
        r.l_hub_w = hub_dist[w];
        r.e_hub_w = graph.multiplicity(hub, w);
        r.gamma_opt = r.delta_e = r.tau = r.p_max = r.search_time = kNaN;
        r.c_d = r.c_e = r.c_c = r.c_b = r.c_rc = r.c_rb = r.h_hub_w = kNaN;
        if (out.report) {
            r.c_d = out.report->degree_c(w);
            r.c_e = out.report->eigen_c(w);
            r.c_c = out.report->closeness_c(w);
            r.c_b = out.report->betweenness_c(w);
            r.c_rc = out.report->rw_closeness_c(w);
            r.c_rb = out.report->rw_betweenness_c(w);
            r.h_hub_w = out.report->mfpt_from_hub(w);
        }
        if (!engine) {
            r.status = sample_status;
        } else {
            try {
                const SearchResult res = engine->run(w);
                r.gamma_opt = res.gamma_opt;
                r.delta_e = res.delta_e;
                r.tau = res.tau;
                r.p_max = res.p_max;
                r.search_time = res.search_time;
                r.status = "ok";
            } catch (const NumericalError& e) {
                r.status = status_of(e);
            }
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

} // namespace

void run_sweep(const SweepConfig& config, const SampleSink& sink, std::ostream* progress) {
    config.validate();

    struct Unit {
        int n;
        int sample_id;
    };
    std::vector<Unit> units;
    for (const int n : config.n_list)
        for (int s = 0; s < config.samples; ++s)
            units.push_back({n, s});

    const int total = static_cast<int>(units.size());
    int workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, total);

    std::mutex mtx;
    std::condition_variable cv;
    std::map<int, SampleOutput> done;
    std::atomic<int> next_unit{0};
    std::exception_ptr failure;

    auto work = [&]() {
        for (;;) {
            const int i = next_unit.fetch_add(1);
            if (i >= total)
                return;
            try {
                SampleOutput out = run_sample(config, units[i].n, units[i].sample_id);
                std::lock_guard lock(mtx);
                done.emplace(i, std::move(out));
                cv.notify_all();
            } catch (...) {
                std::lock_guard lock(mtx);
                if (!failure)
                    failure = std::current_exception();
                next_unit.store(total); // stop handing out units
                cv.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back(work);

    // Emit in unit order as results become available, flushing the contiguous
    // prefix even if a later unit failed.
    int emitted = 0;
    {
        std::unique_lock lock(mtx);
        while (emitted < total) {
            cv.wait(lock, [&] { return done.count(emitted) || failure; });
            while (done.count(emitted)) {
                SampleOutput out = std::move(done.at(emitted));
                done.erase(emitted);
                lock.unlock();
                sink(out);
                if (progress) {
                    int failures = 0;
                    for (const auto& r : out.records)
                        failures += r.status != "ok";
                    *progress << "sweep: n=" << out.n << " sample=" << out.sample_id << " ("
                              << out.records.size() << " nodes, " << failures << " failures)"
                              << std::endl;
                }
                lock.lock();
                ++emitted;
            }
            if (failure && !done.count(emitted))
                break;
        }
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<SweepRecord> run_sweep_collect(const SweepConfig& config, std::ostream* progress) {
    std::vector<SweepRecord> all;
    run_sweep(
        config,
        [&all](const SampleOutput& out) {
            all.insert(all.end(), out.records.begin(), out.records.end());
        },
        progress);
    return all;
}

std::vector<std::filesystem::path> cmd_generate(const SweepConfig& config,
                                                const std::filesystem::path& out_dir) {
    config.validate();
    if (config.model != "lcd")
        throw std::invalid_argument("generate: only the lcd model writes edge-list files");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("generate: cannot create directory " + out_dir.string());

    std::vector<std::filesystem::path> paths;
    for (const int n : config.n_list) {
        for (int s = 0; s < config.samples; ++s) {
            const std::uint64_t seed =
                derive_seed(derive_seed(config.master_seed, static_cast<std::uint64_t>(n)),
                            static_cast<std::uint64_t>(s));
            const Multigraph g = generate_with_exponent(n, config.m, config.beta, seed);
            const auto path =
                out_dir / ("graph_n" + std::to_string(n) + "_s" + std::to_string(s) + ".edges");
            write_edge_list(path, g, {n, config.m, config.beta, seed});
            paths.push_back(path);
        }
    }
    return paths;
}

std::filesystem::path cmd_sweep(const SweepConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* progress) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("sweep: cannot create directory " + out_dir.string());

    const auto csv_path = out_dir / "sweep.csv";
    const auto manifest_path = out_dir / "manifest.json";
    const std::string manifest = manifest_string(config);

    if (std::filesystem::exists(csv_path)) {
        if (!std::filesystem::exists(manifest_path))
            throw IoError("sweep: " + csv_path.string() +
                          " exists without a manifest (partial run?); remove it to rerun");
        std::ifstream in(manifest_path);
        std::stringstream existing;
        existing << in.rdbuf();
        if (existing.str() != manifest)
            throw IoError("sweep: " + out_dir.string() +
                          " holds results from a different configuration; refusing to mix");
        if (progress)
            *progress << "sweep: " << csv_path.string() << " already complete, skipping"
                      << std::endl;
        return csv_path;
    }

    std::ofstream csv(csv_path);
    if (!csv)
        throw IoError("sweep: cannot open " + csv_path.string());
    csv << sweep_csv_header() << "\n";

    run_sweep(
        config,
        [&](const SampleOutput& out) {
            for (const auto& r : out.records)
                csv << record_line(r) << "\n";
            csv.flush(); // partial results survive an interruption
            if (config.centrality_reports && out.report && out.graph) {
                const auto path = out_dir / ("centrality_n" + std::to_string(out.n) + "_s" +
                                             std::to_string(out.sample_id) + ".csv");
                write_centrality_csv(path, *out.graph, *out.report);
            }
        },
        progress);
    if (!csv)
        throw IoError("sweep: write failed for " + csv_path.string());
    csv.close();

    // The manifest marks completion; a CSV without one is a partial run.
    std::ofstream mf(manifest_path);
    if (!mf)
        throw IoError("sweep: cannot open " + manifest_path.string());
    mf << manifest;
    return csv_path;
}

namespace {

std::vector<const SweepRecord*> ok_records(const std::vector<SweepRecord>& records) {
    std::vector<const SweepRecord*> ok;
    for (const auto& r : records)
        if (r.status == "ok" && std::isfinite(r.search_time) && r.search_time > 0.0)
            ok.push_back(&r);
    return ok;
}

} // namespace

FitOutput cmd_fit(const std::filesystem::path& sweep_csv, const FitConfig& config,
                  const std::filesystem::path& out_dir) {
    const auto records = read_sweep_csv(sweep_csv);
    const auto ok = ok_records(records);
    if (static_cast<int>(ok.size()) < 10 * config.k_max)
        throw InsufficientDataError("fit: need at least 10*k_max successful records, have " +
                                    std::to_string(ok.size()));
    std::vector<double> ts;
    ts.reserve(ok.size());
    for (const auto* r : ok)
        ts.push_back(r->search_time);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("fit: cannot create directory " + out_dir.string());

    FitOutput out;
    out.fit = select_components(ts, config.k_max, config.em);

    json j;
    j["k"] = out.fit.k;
    j["components"] = json::array();
    for (const auto& c : out.fit.components)
        j["components"].push_back({{"p", c.p}, {"mu", c.mu}, {"sigma", c.sigma}});
    j["loglik"] = out.fit.loglik;
    j["bic"] = out.fit.bic;
    out.mixture_json = out_dir / "mixture.json";
    {
        std::ofstream f(out.mixture_json);
        if (!f)
            throw IoError("fit: cannot open " + out.mixture_json.string());
        f << j.dump(2) << "\n";
    }

    const LogHistogram h = log_histogram(ts, config.histogram_bins);
    out.histogram_csv = out_dir / "histogram.csv";
    {
        std::ofstream f(out.histogram_csv);
        if (!f)
            throw IoError("fit: cannot open " + out.histogram_csv.string());
        f << "ln_t_lo,ln_t_hi,density\n";
        for (int b = 0; b < h.density.size(); ++b)
            f << format_double(h.edges(b)) << "," << format_double(h.edges(b + 1)) << ","
              << format_double(h.density(b)) << "\n";
    }

    // Mean posterior responsibility per hub distance: which mixture mode the
    // nodes at each distance fall into.
    std::map<int, std::pair<int, Eigen::VectorXd>> by_distance;
    for (const auto* r : ok) {
        const Eigen::VectorXd post = posterior(out.fit, r->search_time);
        auto it = by_distance.find(r->l_hub_w);
        if (it == by_distance.end())
            by_distance.emplace(r->l_hub_w, std::make_pair(1, post));
        else {
            it->second.first += 1;
            it->second.second += post;
        }
    }
    out.posterior_csv = out_dir / "posterior_by_distance.csv";
    {
        std::ofstream f(out.posterior_csv);
        if (!f)
            throw IoError("fit: cannot open " + out.posterior_csv.string());
        f << "l_hub_w,count";
        for (int j2 = 0; j2 < out.fit.k; ++j2)
            f << ",mean_post_" << (j2 + 1);
        f << "\n";
        for (const auto& [l, acc] : by_distance) {
            f << l << "," << acc.first;
            for (int j2 = 0; j2 < out.fit.k; ++j2)
                f << "," << format_double(acc.second(j2) / acc.first);
            f << "\n";
        }
    }
    return out;
}

const ScalingFit* ScalingTable::find(const std::string& quantity) const {
    for (const auto& row : rows)
        if (row.quantity == quantity)
            return &row.fit;
    return nullptr;
}

ScalingTable cmd_scaling(const std::vector<std::filesystem::path>& sweep_csvs,
                         const FitConfig& config, const std::filesystem::path& out_dir) {
    std::map<int, std::vector<double>> ts_by_n;
    std::map<int, std::map<int, std::vector<double>>> ts_by_n_distance;
    for (const auto& path : sweep_csvs) {
        const auto records = read_sweep_csv(path);
        for (const auto* r : ok_records(records)) {
            ts_by_n[r->n].push_back(r->search_time);
            if (r->l_hub_w >= 1)
                ts_by_n_distance[r->n][r->l_hub_w].push_back(r->search_time);
        }
    }
    if (ts_by_n.size() < 3)
        throw InsufficientDataError("scaling: need sweeps for at least 3 distinct N");

    ScalingTable table;

    // Mixture parameters against N, with the component count fixed by BIC on
    // the largest ensemble so components align across sizes.
    const int n_largest = ts_by_n.rbegin()->first;
    const int k = select_components(ts_by_n.at(n_largest), config.k_max, config.em).k;
    std::map<int, MixtureFit> fits;
    for (const auto& [n, ts] : ts_by_n)
        fits.emplace(n, fit_lognormal_mixture(ts, k, config.em));
    for (int i = 0; i < k; ++i) {
        std::vector<std::pair<double, double>> mu_pairs, sigma_pairs, p_pairs;
        for (const auto& [n, fit] : fits) {
            mu_pairs.emplace_back(n, fit.components[i].mu);
            sigma_pairs.emplace_back(n, fit.components[i].sigma);
            p_pairs.emplace_back(n, fit.components[i].p);
        }
        const auto tag = std::to_string(i + 1);
        table.rows.push_back({"mu_" + tag, fit_scaling(mu_pairs, ScalingMode::raw_log_mean)});
        table.rows.push_back({"sigma_" + tag, fit_scaling(sigma_pairs, ScalingMode::log_value)});
        table.rows.push_back({"p_" + tag, fit_scaling(p_pairs, ScalingMode::log_value)});
    }

    // Mean T per hub distance against N.
    for (int l = 1; l <= 3; ++l) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& [n, by_l] : ts_by_n_distance) {
            const auto it = by_l.find(l);
            if (it == by_l.end() || it->second.empty())
                continue;
            double mean = 0.0;
            for (const double t : it->second)
                mean += t;
            pairs.emplace_back(n, mean / static_cast<double>(it->second.size()));
        }
        if (pairs.size() >= 3)
            table.rows.push_back(
                {"T_l" + std::to_string(l), fit_scaling(pairs, ScalingMode::log_value)});
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("scaling: cannot create directory " + out_dir.string());
    table.csv = out_dir / "scaling.csv";
    std::ofstream f(table.csv);
    if (!f)
        throw IoError("scaling: cannot open " + table.csv.string());
    f << "quantity,alpha,stderr,const,points\n";
    for (const auto& row : table.rows)
        f << row.quantity << "," << format_double(row.fit.alpha) << ","
          << format_double(row.fit.stderr_alpha) << "," << (row.fit.is_const ? 1 : 0) << ","
          << row.fit.points << "\n";
    return table;
}

const CorrelationRow* CorrelationTable::find(const std::string& measure) const {
    for (const auto& row : rows)
        if (row.measure == measure)
            return &row;
    return nullptr;
}

CorrelationTable cmd_correlate(const std::filesystem::path& sweep_csv,
                               const std::filesystem::path& out_dir) {
    const auto records = read_sweep_csv(sweep_csv);
    const auto ok = ok_records(records);
    if (ok.size() < 10)
        throw InsufficientDataError("correlate: need at least 10 successful records");

    const int n = static_cast<int>(ok.size());
    Eigen::VectorXd t(n), p(n);
    std::map<std::string, Eigen::VectorXd> measures;
    for (const auto* name : {"C_d", "C_e", "C_c", "C_b", "C_rc", "C_rb", "H_hub_w"})
        measures.emplace(name, Eigen::VectorXd(n));
    for (int i = 0; i < n; ++i) {
        t(i) = ok[i]->search_time;
        p(i) = ok[i]->p_max;
        measures.at("C_d")(i) = ok[i]->c_d;
        measures.at("C_e")(i) = ok[i]->c_e;
        measures.at("C_c")(i) = ok[i]->c_c;
        measures.at("C_b")(i) = ok[i]->c_b;
        measures.at("C_rc")(i) = ok[i]->c_rc;
        measures.at("C_rb")(i) = ok[i]->c_rb;
        measures.at("H_hub_w")(i) = ok[i]->h_hub_w;
    }

    CorrelationTable table;
    for (const auto& [name, values] : measures) {
        CorrelationRow row;
        row.measure = name;
        row.r_search_time = pearson_loglog(values, t);
        row.r_p_max = pearson_loglog(values, p);
        table.rows.push_back(row);
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("correlate: cannot create directory " + out_dir.string());
    table.csv = out_dir / "correlation.csv";
    {
        std::ofstream f(table.csv);
        if (!f)
            throw IoError("correlate: cannot open " + table.csv.string());
        f << "measure,r_ln_T,r_ln_P\n";
        for (const auto& row : table.rows)
            f << row.measure << "," << format_double(row.r_search_time) << ","
              << format_double(row.r_p_max) << "\n";
    }
    table.scatter_csv = out_dir / "scatter.csv";
    {
        std::ofstream f(table.scatter_csv);
        if (!f)
            throw IoError("correlate: cannot open " + table.scatter_csv.string());
        f << "n,sample_id,w,l_hub_w,e_hub_w,T,p_max,C_d,C_e,C_c,C_b,C_rc,C_rb,H_hub_w\n";
        for (const auto* r : ok)
            f << r->n << "," << r->sample_id << "," << r->w << "," << r->l_hub_w << ","
              << r->e_hub_w << "," << format_double(r->search_time) << ","
              << format_double(r->p_max) << "," << format_double(r->c_d) << ","
              << format_double(r->c_e) << "," << format_double(r->c_c) << ","
              << format_double(r->c_b) << "," << format_double(r->c_rc) << ","
              << format_double(r->c_rb) << "," << format_double(r->h_hub_w) << "\n";
    }
    return table;
}

std::filesystem::path cmd_gamma_profile(const std::filesystem::path& graph_file, int w,
                                        double gamma_lo, double gamma_hi, int points,
                                        const std::filesystem::path& out_csv,
                                        const SearchOptions& opt) {
    const auto file = read_edge_list(graph_file);
    const SearchEngine engine(file.graph, opt);
    if (gamma_lo <= 0.0) {
        gamma_lo = opt.gamma_lo_factor / engine.lambda1();
        gamma_hi = opt.gamma_hi_factor / engine.lambda1();
    }
    const auto rows = engine.gamma_profile(w, gamma_lo, gamma_hi, points);

    std::ofstream f(out_csv);
    if (!f)
        throw IoError("gamma-profile: cannot open " + out_csv.string());
    f << "gamma,ov_l1_e0_sq,ov_l1_e1_sq,ov_w_e0_sq,ov_w_e1_sq,delta_e\n";
    for (const auto& row : rows)
        f << format_double(row.gamma) << "," << format_double(row.ov_l1_e0_sq) << ","
          << format_double(row.ov_l1_e1_sq) << "," << format_double(row.ov_w_e0_sq) << ","
          << format_double(row.ov_w_e1_sq) << "," << format_double(row.delta_e) << "\n";
    return out_csv;
}

} // namespace qsearch
