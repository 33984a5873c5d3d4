#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ginlab/empirical_stats.hpp"
#include "ginlab/serialization.hpp"

namespace ginlab {

inline constexpr const char* kVersion = "0.1.0";

struct BoundaryRequest {
    std::optional<Window> window;  ///< derived from the atoms when absent
    double resolution = 0.0;       ///< 0 means window extent / 400
};

struct ExperimentConfig {
    DeformationSpec spec;
    cplx z0;
    std::vector<int> N_list{256, 512, 1024};
    int trials = 40;
    std::uint64_t master_seed = 1;
    double window_rho = 5.0;
    double pair_r_max = 2.5;
    int pair_bins = 25;
    std::string output_dir;
    bool dump_spectra = false;
    int jobs = 0;  ///< 0: all hardware threads
    std::optional<BoundaryRequest> boundary;
};

json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks the spec and the run parameters (trials >= 1, R0 >= 2, room for
/// every atom at each N, 0 < pair_r_max <= window_rho / 2, pair_bins >= 4).
ValidatedSpec validate_config(const ExperimentConfig& cfg);

/// output_dir, else $GINLAB_OUTPUT_DIR, else the current directory.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of the canonical config JSON, ignoring output_dir and jobs.
std::string config_hash(const ExperimentConfig& cfg);

/// Pure Ginibre (tau = 1, single atom at 0) with R0 zeros; the universality
/// baseline. Its test point is 0.3.
DeformationSpec pure_ginibre_spec(int R0);
inline constexpr cplx kBaselineZ0{0.3, 0.0};

struct CampaignLog {
    std::vector<int> resampled_trials;
};

/// Samples trials [first_trial, first_trial + trials) on `jobs` workers.
/// Results are ordered by trial index and independent of `jobs`. A trial
/// whose eigensolve fails is redrawn once from a derived fallback seed; a
/// second failure propagates.
std::vector<SpectrumSample> run_campaign(const ValidatedSpec& spec, cplx z0, int N, int trials,
                                         std::uint64_t master_seed, int jobs,
                                         CampaignLog* log = nullptr, int first_trial = 0);

/// Seed of the fallback redraw for a failed trial.
std::uint64_t fallback_seed(std::uint64_t master_seed);

/// Seed of the pure-Ginibre baseline campaign paired with `master_seed`.
std::uint64_t baseline_seed(std::uint64_t master_seed);

struct ModelResult {
    json report;
    std::optional<std::filesystem::path> boundary_csv;
};

/// Classification and bulk constants at z0; optional boundary CSV. For a
/// non-bulk z0 the classification is still written, then NotBulkError is
/// thrown (message contains edge-not-supported on the boundary).
ModelResult cmd_model(const ExperimentConfig& cfg, bool write_files = true);

struct RunResult {
    json manifest;
    std::filesystem::path manifest_path;
};

RunResult cmd_run(const ExperimentConfig& cfg);

struct VerifyOptions {
    std::uint64_t seed = 7;
    long hciz_samples = 1'000'000;
    double inject_t0 = 0.0;  ///< test hook: > 0 replaces t0 in the lemma checks
};

struct VerifyResult {
    json report;
    bool passed = false;
    std::vector<std::string> failed;
    std::vector<std::string> warnings;
};

/// Shipped example configurations (name, spec, z0) checked by cmd_verify.
struct ExampleCase {
    std::string name;
    DeformationSpec spec;
    cplx z0;
};
std::vector<ExampleCase> shipped_examples();

/// Bulk test points on a 5 x 5 grid over the bounding box of the support.
std::vector<cplx> support_grid(const ValidatedSpec& spec, int per_side = 5);

VerifyResult cmd_verify(const VerifyOptions& options);

struct ReportResult {
    std::vector<std::filesystem::path> files;
};

/// Plot-ready CSVs from a finished run. Throws MissingArtifactError when a
/// file named in the manifest is absent.
ReportResult cmd_report(const std::filesystem::path& manifest_path,
                        std::optional<std::filesystem::path> out_dir = std::nullopt);

/// Window that contains the whole support: atoms' bounding box grown by
/// sqrt(tau) plus a margin.
Window support_window(const ValidatedSpec& spec);

}  // namespace ginlab
