// Command-line front end: model, run, verify, report.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ginlab/errors.hpp"
#include "ginlab/experiment.hpp"

namespace {

using namespace ginlab;

struct Overrides {
    std::optional<double> tau, z0_re, z0_im, window_rho, pair_r_max;
    std::optional<int> trials, pair_bins, jobs;
    std::optional<std::uint64_t> master_seed;
    std::optional<std::vector<int>> n_list;
    std::optional<std::string> output_dir;
    std::optional<bool> dump_spectra;
};

void add_config_options(CLI::App* cmd, std::string& config_path, Overrides& o) {
    cmd->add_option("-c,--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--spec.tau", o.tau, "Override spec.tau");
    cmd->add_option("--z0.re", o.z0_re, "Override z0.re");
    cmd->add_option("--z0.im", o.z0_im, "Override z0.im");
    cmd->add_option("--N_list", o.n_list, "Override N_list")->delimiter(',');
    cmd->add_option("--trials", o.trials, "Override trials");
    cmd->add_option("--master_seed", o.master_seed, "Override master_seed");
    cmd->add_option("--window_rho", o.window_rho, "Override window_rho");
    cmd->add_option("--pair_r_max", o.pair_r_max, "Override pair_r_max");
    cmd->add_option("--pair_bins", o.pair_bins, "Override pair_bins");
    cmd->add_option("--output_dir", o.output_dir, "Override output_dir");
    cmd->add_option("--dump_spectra", o.dump_spectra, "Override dump_spectra (true/false)");
    cmd->add_option("-j,--jobs", o.jobs, "Worker threads (0 = all cores)");
}

ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
    ExperimentConfig cfg = load_config(path);
    if (o.tau) cfg.spec.tau = *o.tau;
    if (o.z0_re) cfg.z0.real(*o.z0_re);
    if (o.z0_im) cfg.z0.imag(*o.z0_im);
    if (o.n_list) cfg.N_list = *o.n_list;
    if (o.trials) cfg.trials = *o.trials;
    if (o.master_seed) cfg.master_seed = *o.master_seed;
    if (o.window_rho) cfg.window_rho = *o.window_rho;
    if (o.pair_r_max) cfg.pair_r_max = *o.pair_r_max;
    if (o.pair_bins) cfg.pair_bins = *o.pair_bins;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    if (o.dump_spectra) cfg.dump_spectra = *o.dump_spectra;
    if (o.jobs) cfg.jobs = *o.jobs;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed complex Ginibre ensemble: bulk geometry, sampling and verification"};
    app.set_version_flag("--version", std::string("ginlab ") + kVersion);
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;

    auto* model = app.add_subcommand("model", "Classify z0 and compute the bulk rescaling constants");
    add_config_options(model, config_path, overrides);
    bool want_boundary = false;
    double boundary_res = 0.0;
    model->add_flag("--boundary", want_boundary, "Trace the support boundary to boundary.csv");
    model->add_option("--boundary-resolution", boundary_res, "Grid pitch for --boundary");

    auto* run = app.add_subcommand("run", "Sample spectra and compare local statistics with theory");
    add_config_options(run, config_path, overrides);

    auto* verify = app.add_subcommand("verify", "Numerical checks of the maximum lemmas and HCIZ");
    VerifyOptions vopt;
    std::string verify_out;
    verify->add_option("--seed", vopt.seed, "Monte-Carlo seed");
    verify->add_option("--hciz-samples", vopt.hciz_samples, "Haar samples for the HCIZ check");
    verify->add_option("--inject-t0", vopt.inject_t0, "Test hook: replace t0 in the lemma checks");
    verify->add_option("-o,--output", verify_out, "Write the JSON report here as well");

    auto* report = app.add_subcommand("report", "Emit plot-ready CSVs from a run manifest");
    std::string manifest_path, report_out;
    report->add_option("manifest", manifest_path, "manifest.json written by run")->required();
    report->add_option("-o,--output", report_out, "Output directory (default: <manifest dir>/plots)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::Validation);
    }

    try {
        if (*model) {
            ExperimentConfig cfg = load_with_overrides(config_path, overrides);
            if (want_boundary || boundary_res > 0.0) {
                if (!cfg.boundary) cfg.boundary = BoundaryRequest{};
                if (boundary_res > 0.0) cfg.boundary->resolution = boundary_res;
            }
            const ModelResult r = cmd_model(cfg);
            std::cout << r.report.dump(2) << '\n';
        } else if (*run) {
            const ExperimentConfig cfg = load_with_overrides(config_path, overrides);
            const RunResult r = cmd_run(cfg);
            for (const auto& entry : r.manifest["runs"])
                std::cout << "N=" << entry["N"] << " -> " << entry["report"].get<std::string>() << '\n';
            std::cout << "manifest: " << r.manifest_path.string() << '\n';
        } else if (*verify) {
            const VerifyResult r = cmd_verify(vopt);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
            if (!verify_out.empty()) write_json(verify_out, r.report);
            for (const auto& c : r.report["checks"])
                std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
            if (!r.passed) {
                std::cerr << "failed checks:";
                for (const auto& f : r.failed) std::cerr << ' ' << f;
                std::cerr << '\n';
                return static_cast<int>(ErrorKind::Numerical);
            }
        } else if (*report) {
            std::optional<std::filesystem::path> out;
            if (!report_out.empty()) out = report_out;
            for (const auto& f : cmd_report(manifest_path, out).files) std::cout << f.string() << '\n';
        }
    } catch (const GinlabError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Numerical);
    }
    return 0;
}
