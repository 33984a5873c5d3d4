#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ginlab/errors.hpp"
#include "ginlab/experiment.hpp"
#include "ginlab/serialization.hpp"
#include "helpers.hpp"

using namespace ginlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ginlab_unit_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentConfig small_ginibre(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.spec = pure_ginibre_spec(8);
    cfg.z0 = 0.3;
    cfg.N_list = {256};
    cfg.trials = 8;
    cfg.master_seed = 5;
    cfg.output_dir = out.string();
    return cfg;
}

}  // namespace

TEST_CASE("config json round trip") {
    ExperimentConfig cfg;
    cfg.spec = testing::three_atom_raw();
    cfg.z0 = cplx(0.4, 0.3);
    cfg.N_list = {64, 128};
    cfg.trials = 3;
    cfg.master_seed = 99;
    cfg.boundary = BoundaryRequest{Window{-1, 1, -2, 2}, 0.05};
    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back) == config_to_json(cfg));
    CHECK(config_hash(back) == config_hash(cfg));
    cfg.trials = 4;
    CHECK(config_hash(back) != config_hash(cfg));
    CHECK(config_hash(cfg).size() == 16);
}

TEST_CASE("spec json uses the flat atom layout") {
    const json j = json::parse(R"({"tau": 2.0, "atoms": [{"re": 1, "im": 0, "c": 0.5},
                                  {"re": -1, "im": 0, "c": 0.5}], "R0": 4})");
    const DeformationSpec s = spec_from_json(j);
    CHECK(s.atoms.size() == 2);
    CHECK(s.r0 == 0);
    CHECK(s.finite_block.empty());
    CHECK(spec_from_json(spec_to_json(s)).atoms[1].a == cplx(-1.0, 0.0));
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"tau": 1, "atoms": []})")), ValidationError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"tau": "x", "atoms": [], "R0": 2})")),
                    ValidationError);
}

TEST_CASE("validate_config") {
    ExperimentConfig cfg = small_ginibre("x");
    CHECK_NOTHROW(validate_config(cfg));
    cfg.spec.atoms = {{cplx(0.0, 0.0), 0.6}, {cplx(1.0, 0.0), 0.6}};
    CHECK_THROWS_AS(validate_config(cfg), WeightSumError);
    cfg = small_ginibre("x");
    cfg.trials = 0;
    CHECK_THROWS_AS(validate_config(cfg), ValidationError);
    cfg = small_ginibre("x");
    cfg.spec.R0 = 1;
    CHECK_THROWS_AS(validate_config(cfg), ValidationError);
    cfg = small_ginibre("x");
    cfg.pair_r_max = 3.0;
    CHECK_THROWS_AS(validate_config(cfg), ValidationError);
    cfg = small_ginibre("x");
    cfg.N_list = {4};
    CHECK_THROWS_AS(validate_config(cfg), DimensionError);
}

TEST_CASE("output directory falls back to the environment") {
    ExperimentConfig cfg;
    cfg.output_dir = "explicit";
    CHECK(resolve_output_dir(cfg) == fs::path("explicit"));
    cfg.output_dir.clear();
    setenv("GINLAB_OUTPUT_DIR", "/tmp/from_env", 1);
    CHECK(resolve_output_dir(cfg) == fs::path("/tmp/from_env"));
    unsetenv("GINLAB_OUTPUT_DIR");
}

TEST_CASE("seed derivations differ") {
    CHECK(fallback_seed(1) != baseline_seed(1));
    CHECK(fallback_seed(1) != 1);
    CHECK(baseline_seed(1) != baseline_seed(2));
}

TEST_CASE("cmd_model for pure Ginibre") {
    const fs::path out = scratch("model");
    ExperimentConfig cfg = small_ginibre(out);
    cfg.boundary = BoundaryRequest{Window{-2, 2, -2, 2}, 0.02};
    const ModelResult r = cmd_model(cfg);
    CHECK(r.report["classification"]["tag"] == "bulk");
    CHECK(std::abs(r.report["predicted_density"].get<double>() - 1.0 / std::numbers::pi) < 1e-14);
    CHECK(fs::exists(out / "model.json"));
    REQUIRE(r.boundary_csv);
    CHECK(fs::exists(*r.boundary_csv));
    CHECK(slurp(*r.boundary_csv).rfind("curve_id,x,y\n", 0) == 0);
}

TEST_CASE("cmd_model refuses edge and exterior points") {
    ExperimentConfig cfg = small_ginibre(scratch("model_edge"));
    cfg.z0 = 1.0;
    try {
        cmd_model(cfg);
        FAIL("expected NotBulkError");
    } catch (const NotBulkError& e) {
        CHECK(e.exit_code() == 3);
        CHECK(std::string(e.what()).find("edge-not-supported") != std::string::npos);
    }
    cfg.z0 = 0.0;
    CHECK_THROWS_AS(cmd_model(cfg), AtomCollisionError);
}

TEST_CASE("cmd_run is deterministic and independent of worker count") {
    const fs::path a = scratch("run_a"), b = scratch("run_b");
    ExperimentConfig cfg = small_ginibre(a);
    cfg.jobs = 1;
    cfg.dump_spectra = true;
    const RunResult ra = cmd_run(cfg);
    cfg.output_dir = b.string();
    cfg.jobs = 3;
    cmd_run(cfg);
    CHECK(slurp(a / "report_N256.json") == slurp(b / "report_N256.json"));
    CHECK(slurp(a / "gofr_N256.csv") == slurp(b / "gofr_N256.csv"));
    CHECK(slurp(a / "spectra_N256_seed5.csv") == slurp(b / "spectra_N256_seed5.csv"));
    CHECK(fs::exists(ra.manifest_path));
    for (const auto& entry : ra.manifest["runs"])
        for (const char* key : {"report", "gofr", "ecdf", "ecdf_baseline", "spectra"})
            CHECK(fs::exists(a / entry[key].get<std::string>()));
    const json report = read_json(a / "report_N256.json");
    CHECK(report["comparison"].contains("density_rel_err"));
}

TEST_CASE("cmd_run on the two atom spec reports the density error") {
    const fs::path out = scratch("run_two");
    ExperimentConfig cfg;
    cfg.spec = testing::two_atom(2.0).spec();
    cfg.N_list = {128};
    cfg.trials = 12;
    cfg.output_dir = out.string();
    cmd_run(cfg);
    const json report = read_json(out / "report_N128.json");
    CHECK(report["comparison"]["density_rel_err"].is_number());
    CHECK(report["bulk_parameters"]["sigma_sq"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("cmd_report emits plot tables") {
    const fs::path out = scratch("report");
    ExperimentConfig cfg = small_ginibre(out);
    cfg.N_list = {64, 96, 128};
    cfg.trials = 10;
    const RunResult run = cmd_run(cfg);
    const ReportResult rep = cmd_report(run.manifest_path);
    for (const fs::path& p : rep.files) CHECK(fs::exists(p));
    std::istringstream errors(slurp(out / "plots" / "error_vs_N.csv"));
    int lines = 0;
    for (std::string line; std::getline(errors, line);) ++lines;
    CHECK(lines == 4);
    std::istringstream g(slurp(out / "plots" / "gofr_vs_theory_N64.csv"));
    std::string header, first;
    std::getline(g, header);
    std::getline(g, first);
    CHECK(header == "r,value,count,theory");
    CHECK(std::stod(first.substr(0, first.find(','))) == doctest::Approx(2.5 / 50.0));

    fs::remove(out / "report_N96.json");
    CHECK_THROWS_AS(cmd_report(run.manifest_path, out / "plots2"), MissingArtifactError);
    CHECK_FALSE(fs::exists(out / "plots2"));
    CHECK_THROWS_AS(cmd_report(out / "nope.json"), MissingArtifactError);
}

TEST_CASE("cmd_verify passes and catches an injected t0") {
    VerifyOptions opt;
    opt.hciz_samples = 100000;
    const VerifyResult ok = cmd_verify(opt);
    CHECK(ok.passed);
    CHECK(ok.failed.empty());

    opt.inject_t0 = 0.05;
    const VerifyResult bad = cmd_verify(opt);
    CHECK_FALSE(bad.passed);
    CHECK(!bad.failed.empty());

    VerifyOptions low;
    low.hciz_samples = 1000;
    bool warned_when_needed = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        low.seed = seed;
        const VerifyResult r = cmd_verify(low);
        double err = 0.0;
        for (const auto& c : r.report["checks"])
            if (c["name"] == "hciz_n2") err = c["relative_error"].get<double>();
        const bool warned = !r.warnings.empty() &&
                            r.warnings.front().find("low precision") != std::string::npos;
        if ((err > 0.05) != warned) warned_when_needed = false;
    }
    CHECK(warned_when_needed);
}

TEST_CASE("config hash ignores where and how a run executes") {
    ExperimentConfig a = small_ginibre("one");
    ExperimentConfig b = small_ginibre("two");
    b.jobs = 4;
    CHECK(config_hash(a) == config_hash(b));
}
