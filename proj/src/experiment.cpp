#include "ginlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ginlab/errors.hpp"
#include "ginlab/kernel_theory.hpp"
#include "ginlab/rng.hpp"

namespace ginlab {

namespace fs = std::filesystem;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("field \"") + key + "\": " + e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

json config_to_json(const ExperimentConfig& cfg) {
    json j{{"spec", spec_to_json(cfg.spec)},
           {"z0", complex_to_json(cfg.z0)},
           {"N_list", cfg.N_list},
           {"trials", cfg.trials},
           {"master_seed", cfg.master_seed},
           {"window_rho", cfg.window_rho},
           {"pair_r_max", cfg.pair_r_max},
           {"pair_bins", cfg.pair_bins},
           {"output_dir", cfg.output_dir},
           {"dump_spectra", cfg.dump_spectra},
           {"jobs", cfg.jobs}};
    if (cfg.boundary) {
        json b{{"resolution", cfg.boundary->resolution}};
        if (cfg.boundary->window) {
            const Window& w = *cfg.boundary->window;
            b["window"] = {w.x_min, w.x_max, w.y_min, w.y_max};
        }
        j["boundary"] = b;
    }
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    if (!j.contains("spec")) throw ValidationError("config is missing \"spec\"");
    ExperimentConfig cfg;
    cfg.spec = spec_from_json(j.at("spec"));
    if (j.contains("z0")) cfg.z0 = complex_from_json(j.at("z0"));
    cfg.N_list = get_or(j, "N_list", cfg.N_list);
    cfg.trials = get_or(j, "trials", cfg.trials);
    cfg.master_seed = get_or(j, "master_seed", cfg.master_seed);
    cfg.window_rho = get_or(j, "window_rho", cfg.window_rho);
    cfg.pair_r_max = get_or(j, "pair_r_max", cfg.pair_r_max);
    cfg.pair_bins = get_or(j, "pair_bins", cfg.pair_bins);
    cfg.output_dir = get_or(j, "output_dir", cfg.output_dir);
    cfg.dump_spectra = get_or(j, "dump_spectra", cfg.dump_spectra);
    cfg.jobs = get_or(j, "jobs", cfg.jobs);
    if (j.contains("boundary") && !j.at("boundary").is_null()) {
        const json& b = j.at("boundary");
        BoundaryRequest req;
        req.resolution = get_or(b, "resolution", 0.0);
        if (b.contains("window")) {
            const auto w = get_or(b, "window", std::vector<double>{});
            if (w.size() != 4) throw ValidationError("boundary.window must be [x_min, x_max, y_min, y_max]");
            req.window = Window{w[0], w[1], w[2], w[3]};
        }
        cfg.boundary = req;
    }
    return cfg;
}

ExperimentConfig load_config(const fs::path& path) { return config_from_json(read_json(path)); }

ValidatedSpec validate_config(const ExperimentConfig& cfg) {
    ValidatedSpec spec = validate_spec(cfg.spec);
    if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
    // Two-point statistics need R0 >= 2.
    if (cfg.spec.R0 < 2) throw ValidationError("R0 must be >= 2 for pair statistics");
    if (cfg.N_list.empty()) throw ValidationError("N_list must not be empty");
    for (int N : cfg.N_list) atom_multiplicities(spec, N);
    if (!(cfg.window_rho > 0.0)) throw ValidationError("window_rho must be positive");
    if (!(cfg.pair_r_max > 0.0) || cfg.pair_r_max > cfg.window_rho / 2.0)
        throw ValidationError("pair_r_max must lie in (0, window_rho / 2]");
    if (cfg.pair_bins < 4) throw ValidationError("pair_bins must be >= 4");
    if (cfg.jobs < 0) throw ValidationError("jobs must be >= 0");
    return spec;
}

fs::path resolve_output_dir(const ExperimentConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("GINLAB_OUTPUT_DIR"); env && *env) return env;
    return fs::current_path();
}

std::string config_hash(const ExperimentConfig& cfg) {
    json j = config_to_json(cfg);
    j.erase("output_dir");
    j.erase("jobs");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DeformationSpec pure_ginibre_spec(int R0) {
    DeformationSpec s;
    s.tau = 1.0;
    s.atoms = {{cplx(0.0, 0.0), 1.0}};
    s.R0 = R0;
    return s;
}

std::uint64_t fallback_seed(std::uint64_t master_seed) { return mix64(master_seed ^ 0xfa11bac4u); }
std::uint64_t baseline_seed(std::uint64_t master_seed) { return mix64(master_seed ^ 0xba5e11eu); }

std::vector<SpectrumSample> run_campaign(const ValidatedSpec& spec, cplx z0, int N, int trials,
                                         std::uint64_t master_seed, int jobs, CampaignLog* log,
                                         int first_trial) {
    std::vector<SpectrumSample> results(static_cast<std::size_t>(trials));
    std::vector<char> resampled(static_cast<std::size_t>(trials), 0);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const int k = next.fetch_add(1);
            if (k >= trials) return;
            const int trial = first_trial + k;
            try {
                try {
                    results[k] = sample_spectrum(spec, z0, N, master_seed, trial);
                } catch (const ConvergenceError& e) {
                    std::cerr << "trial " << trial << ": " << e.what() << "; redrawing\n";
                    resampled[k] = 1;
                } catch (const ResidualError& e) {
                    std::cerr << "trial " << trial << ": " << e.what() << "; redrawing\n";
                    resampled[k] = 1;
                }
                if (resampled[k]) {
                    results[k] = sample_spectrum(spec, z0, N, fallback_seed(master_seed), trial);
                    results[k].seed = master_seed;
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };

    const int n_workers = std::min(resolve_jobs(jobs), std::max(1, trials));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (log)
        for (int k = 0; k < trials; ++k)
            if (resampled[k]) log->resampled_trials.push_back(first_trial + k);
    return results;
}

Window support_window(const ValidatedSpec& spec) {
    // p00 >= 1/tau forces |z - a| <= sqrt(tau) for some atom.
    const double reach = std::sqrt(spec.tau()) * 1.05 + 0.05;
    Window w{1e300, -1e300, 1e300, -1e300};
    for (const Atom& a : spec.atoms()) {
        w.x_min = std::min(w.x_min, a.a.real() - reach);
        w.x_max = std::max(w.x_max, a.a.real() + reach);
        w.y_min = std::min(w.y_min, a.a.imag() - reach);
        w.y_max = std::max(w.y_max, a.a.imag() + reach);
    }
    return w;
}

ModelResult cmd_model(const ExperimentConfig& cfg, bool write_files) {
    const ValidatedSpec spec = validate_spec(cfg.spec);
    ModelResult result;
    json& report = result.report;
    report["version"] = kVersion;
    report["spec"] = spec_to_json(cfg.spec);
    report["z0"] = complex_to_json(cfg.z0);

    const fs::path out = resolve_output_dir(cfg);
    if (cfg.boundary) {
        const Window w = cfg.boundary->window.value_or(support_window(spec));
        double res = cfg.boundary->resolution;
        if (!(res > 0.0)) res = std::max(w.x_max - w.x_min, w.y_max - w.y_min) / 400.0;
        const BoundaryCurve curve = trace_boundary(spec, w, res);
        report["boundary"] = {{"polylines", curve.polylines.size()},
                              {"grid_resolution", curve.grid_resolution}};
        if (write_files) {
            result.boundary_csv = out / "boundary.csv";
            write_boundary_csv(*result.boundary_csv, curve);
            report["boundary"]["csv"] = "boundary.csv";
        }
    }

    const PointClass pc = classify_point(spec, cfg.z0);
    report["classification"] = point_class_to_json(pc);
    if (pc.tag == PointTag::Bulk) {
        const BulkParameters bp = bulk_parameters(spec, cfg.z0);
        report["bulk_parameters"] = bulk_parameters_to_json(bp);
        report["predicted_density"] = bp.predicted_density;
        report["rescaled_density"] = 1.0 / std::numbers::pi;
    }
    if (write_files) write_json(out / "model.json", report);
    if (pc.tag != PointTag::Bulk) bulk_parameters(spec, cfg.z0);  // throws NotBulkError
    return result;
}

RunResult cmd_run(const ExperimentConfig& cfg) {
    const ValidatedSpec spec = validate_config(cfg);
    const BulkParameters bp = bulk_parameters(spec, cfg.z0);
    const ValidatedSpec base_spec = validate_spec(pure_ginibre_spec(cfg.spec.R0));
    const BulkParameters base_bp = bulk_parameters(base_spec, kBaselineZ0);
    const fs::path out = resolve_output_dir(cfg);
    fs::create_directories(out);

    json manifest{{"version", kVersion},
                  {"versions",
                   {{"ginlab", kVersion},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                          std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                          std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                  {"config_hash", config_hash(cfg)},
                  {"config", config_to_json(cfg)},
                  {"started_at", utc_timestamp()},
                  {"runs", json::array()}};

    for (int N : cfg.N_list) {
        const std::string tag = "N" + std::to_string(N);
        CampaignLog log;
        auto t = std::chrono::steady_clock::now();
        std::vector<SpectrumSample> samples =
            run_campaign(spec, cfg.z0, N, cfg.trials, cfg.master_seed, cfg.jobs, &log);
        const double sampling_s = seconds_since(t);

        t = std::chrono::steady_clock::now();
        CampaignLog base_log;
        std::vector<SpectrumSample> base = run_campaign(base_spec, kBaselineZ0, N, cfg.trials,
                                                        baseline_seed(cfg.master_seed), cfg.jobs,
                                                        &base_log);
        const double baseline_s = seconds_since(t);

        t = std::chrono::steady_clock::now();
        json entry{{"N", N}};
        if (cfg.dump_spectra) {
            const std::string name =
                "spectra_N" + std::to_string(N) + "_seed" + std::to_string(cfg.master_seed) + ".csv";
            write_spectra_csv(out / name, samples);
            entry["spectra"] = name;
        }
        const LocalStatistics stats = collect_local(std::move(samples), bp, cfg.window_rho);
        const LocalStatistics base_stats = collect_local(std::move(base), base_bp, cfg.window_rho);
        const ComparisonReport cmp = compare_with_theory(stats, base_stats, cfg.pair_r_max, cfg.pair_bins);

        json report{{"version", kVersion},
                    {"N", N},
                    {"trials", cfg.trials},
                    {"master_seed", cfg.master_seed},
                    {"window_rho", cfg.window_rho},
                    {"bulk_parameters", bulk_parameters_to_json(bp)},
                    {"comparison", comparison_report_to_json(cmp)},
                    {"resampled_trials", log.resampled_trials},
                    {"baseline_resampled_trials", base_log.resampled_trials},
                    {"notes",
                     "ks_spacing_vs_ginibre compares nearest-neighbour spacings with a pure "
                     "Ginibre baseline; it is a universality heuristic, not a test of the "
                     "correlation-function limit"}};
        entry["report"] = "report_" + tag + ".json";
        entry["gofr"] = "gofr_" + tag + ".csv";
        entry["ecdf"] = "ecdf_" + tag + ".csv";
        entry["ecdf_baseline"] = "ecdf_baseline_" + tag + ".csv";
        write_json(out / entry["report"].get<std::string>(), report);
        write_histogram_csv(out / entry["gofr"].get<std::string>(), cmp.g_of_r);
        write_ecdf_csv(out / entry["ecdf"].get<std::string>(), make_ecdf(nn_spacings(stats)));
        write_ecdf_csv(out / entry["ecdf_baseline"].get<std::string>(),
                       make_ecdf(nn_spacings(base_stats)));
        entry["seconds"] = {{"sampling", sampling_s},
                            {"baseline", baseline_s},
                            {"statistics", seconds_since(t)}};
        manifest["runs"].push_back(entry);
    }
    manifest["finished_at"] = utc_timestamp();
    RunResult result{manifest, out / "manifest.json"};
    write_json(result.manifest_path, manifest);
    return result;
}

std::vector<ExampleCase> shipped_examples() {
    std::vector<ExampleCase> cases;
    {
        DeformationSpec s = pure_ginibre_spec(8);
        cases.push_back({"pure_ginibre", s, cplx(0.3, 0.0)});
    }
    {
        DeformationSpec s;
        s.tau = 2.0;
        s.atoms = {{cplx(1.0, 0.0), 0.5}, {cplx(-1.0, 0.0), 0.5}};
        s.R0 = 4;
        cases.push_back({"two_atom", s, cplx(0.0, 0.0)});
    }
    {
        DeformationSpec s;
        s.tau = 1.5;
        s.atoms = {{cplx(0.0, 0.0), 0.5}, {cplx(1.0, 1.0), 0.3}, {cplx(-1.5, 0.0), 0.2}};
        s.r0 = 1;
        s.finite_block = {cplx(3.0, -1.0), cplx(-2.0, 2.0)};
        s.R0 = 4;
        cases.push_back({"three_atom", s, cplx(0.4, 0.3)});
    }
    return cases;
}

std::vector<cplx> support_grid(const ValidatedSpec& spec, int per_side) {
    const Window w = support_window(spec);
    std::vector<cplx> pts;
    for (int i = 0; i < per_side; ++i) {
        for (int j = 0; j < per_side; ++j) {
            const cplx z(w.x_min + (i + 0.5) * (w.x_max - w.x_min) / per_side,
                         w.y_min + (j + 0.5) * (w.y_max - w.y_min) / per_side);
            bool near_atom = false;
            for (const Atom& a : spec.atoms()) near_atom = near_atom || std::abs(a.a - z) < 1e-6;
            if (near_atom) continue;
            if (classify_point(spec, z).tag == PointTag::Bulk) pts.push_back(z);
        }
    }
    return pts;
}

VerifyResult cmd_verify(const VerifyOptions& options) {
    VerifyResult result;
    json checks = json::array();
    auto record = [&](const std::string& name, bool passed, json detail) {
        detail["name"] = name;
        detail["passed"] = passed;
        checks.push_back(detail);
        if (!passed) result.failed.push_back(name);
    };

    for (const ExampleCase& ex : shipped_examples()) {
        const ValidatedSpec spec = validate_spec(ex.spec);
        std::vector<cplx> points{ex.z0};
        for (const cplx& z : support_grid(spec)) points.push_back(z);
        bool all_y = true;
        json y_points = json::array();
        for (const cplx& z : points) {
            const MaxCheckResult r = check_lemma_maximum_y(spec, z, options.inject_t0);
            all_y = all_y && r.passed;
            json item = max_check_to_json(r);
            item["z0"] = complex_to_json(z);
            y_points.push_back(item);
        }
        record(ex.name + "/lemma_maximum_y", all_y, {{"points", y_points}});

        try {
            const MaxCheckResult r = check_lemma_jn(spec, ex.z0, 0.05, std::nullopt, options.inject_t0);
            json item = max_check_to_json(r);
            item["z0"] = complex_to_json(ex.z0);
            record(ex.name + "/lemma_jn", r.passed, item);
        } catch (const InfeasibleError& e) {
            record(ex.name + "/lemma_jn", false, {{"error", e.what()}});
        }
    }

    const HcizResult h = check_hciz(2, {0.0, 1.0}, {0.0, 1.0}, 1.0, options.hciz_samples, options.seed);
    const bool hciz_ok = h.relative_error < 0.01;
    if (h.relative_error > 0.05)
        result.warnings.push_back("hciz: low precision (relative error " +
                                  format_double(h.relative_error) + " with " +
                                  std::to_string(options.hciz_samples) + " samples)");
    record("hciz_n2", hciz_ok,
           {{"samples", options.hciz_samples},
            {"monte_carlo", h.monte_carlo},
            {"closed_form", h.closed_form},
            {"relative_error", h.relative_error},
            {"tolerance", 0.01}});

    result.passed = result.failed.empty();
    result.report = {{"version", kVersion},
                     {"seed", options.seed},
                     {"checks", checks},
                     {"warnings", result.warnings},
                     {"failed", result.failed},
                     {"passed", result.passed}};
    return result;
}

namespace {

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifactError("missing artifact " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

fs::path require_file(const fs::path& dir, const json& entry, const char* key) {
    if (!entry.contains(key)) throw MissingArtifactError(std::string("manifest entry lacks ") + key);
    const fs::path p = dir / entry.at(key).get<std::string>();
    if (!fs::exists(p)) throw MissingArtifactError("missing artifact " + p.string());
    return p;
}

}  // namespace

namespace {

// Metrics that lacked data are null in the report and empty in the CSV.
std::string metric_cell(const json& c, const char* key) {
    const json& v = c.at(key);
    return v.is_null() ? std::string() : format_double(v.get<double>());
}

}  // namespace

ReportResult cmd_report(const fs::path& manifest_path, std::optional<fs::path> out_dir) {
    if (!fs::exists(manifest_path)) throw MissingArtifactError("missing manifest " + manifest_path.string());
    const json manifest = read_json(manifest_path);
    const fs::path dir = manifest_path.parent_path().empty() ? fs::path(".") : manifest_path.parent_path();
    const fs::path out = out_dir.value_or(dir / "plots");
    if (!manifest.contains("runs") || manifest["runs"].empty())
        throw MissingArtifactError("manifest lists no runs");

    // Validate everything before writing anything.
    struct RunFiles {
        int N;
        json report;
        fs::path gofr, ecdf, ecdf_baseline;
    };
    std::vector<RunFiles> runs;
    for (const json& entry : manifest["runs"]) {
        RunFiles f;
        f.N = entry.at("N").get<int>();
        f.report = read_json(require_file(dir, entry, "report"));
        f.gofr = require_file(dir, entry, "gofr");
        f.ecdf = require_file(dir, entry, "ecdf");
        f.ecdf_baseline = require_file(dir, entry, "ecdf_baseline");
        runs.push_back(std::move(f));
    }

    ReportResult result;
    std::ostringstream density, errors;
    density << "N,density_hat,density_theory\n";
    errors << "N,density_rel_err,g_max_abs_dev,ks_spacing_vs_ginibre\n";
    for (const RunFiles& f : runs) {
        const json& c = f.report.at("comparison");
        density << f.N << ',' << metric_cell(c, "density_hat") << ','
                << metric_cell(c, "density_theory") << '\n';
        errors << f.N << ',' << metric_cell(c, "density_rel_err") << ','
               << metric_cell(c, "g_max_abs_dev") << ',' << metric_cell(c, "ks_spacing_vs_ginibre")
               << '\n';

        std::ostringstream g;
        g << "r,value,count,theory\n";
        for (const auto& row : read_csv(f.gofr)) {
            const double r = std::stod(row.at(0));
            g << row.at(0) << ',' << row.at(1) << ',' << row.at(2) << ','
              << format_double(predicted_pair_correlation(r)) << '\n';
        }
        const fs::path gpath = out / ("gofr_vs_theory_N" + std::to_string(f.N) + ".csv");
        write_text(gpath, g.str());
        result.files.push_back(gpath);

        std::ostringstream e;
        e << "ensemble,x,cdf\n";
        for (const auto& row : read_csv(f.ecdf)) e << "deformed," << row.at(0) << ',' << row.at(1) << '\n';
        for (const auto& row : read_csv(f.ecdf_baseline))
            e << "ginibre," << row.at(0) << ',' << row.at(1) << '\n';
        const fs::path epath = out / ("spacing_ecdf_N" + std::to_string(f.N) + ".csv");
        write_text(epath, e.str());
        result.files.push_back(epath);
    }
    write_text(out / "density_vs_N.csv", density.str());
    write_text(out / "error_vs_N.csv", errors.str());
    result.files.insert(result.files.begin(), {out / "density_vs_N.csv", out / "error_vs_N.csv"});
    return result;
}

}  // namespace ginlab
