#include "ginlab/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ginlab/errors.hpp"

namespace ginlab {

namespace {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("field \"") + key + "\": " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
    return {field<double>(j, "re"), field_or<double>(j, "im", 0.0)};
}

json spec_to_json(const DeformationSpec& spec) {
    json atoms = json::array();
    for (const Atom& a : spec.atoms)
        atoms.push_back({{"re", a.a.real()}, {"im", a.a.imag()}, {"c", a.c}});
    json block = json::array();
    for (const cplx& v : spec.finite_block) block.push_back(complex_to_json(v));
    return json{{"tau", spec.tau}, {"atoms", atoms}, {"r0", spec.r0},
                {"finite_block", block}, {"R0", spec.R0}};
}

DeformationSpec spec_from_json(const json& j) {
    DeformationSpec spec;
    spec.tau = field<double>(j, "tau");
    const json atoms = field<json>(j, "atoms");
    if (!atoms.is_array()) throw ValidationError("\"atoms\" must be an array");
    for (const json& a : atoms) spec.atoms.push_back({complex_from_json(a), field<double>(a, "c")});
    spec.r0 = field_or<int>(j, "r0", 0);
    if (j.contains("finite_block")) {
        const json block = field<json>(j, "finite_block");
        if (!block.is_array()) throw ValidationError("\"finite_block\" must be an array");
        for (const json& v : block) spec.finite_block.push_back(complex_from_json(v));
    }
    spec.R0 = field<int>(j, "R0");
    return spec;
}

json point_class_to_json(const PointClass& pc) {
    return json{{"tag", to_string(pc.tag)}, {"p00", pc.p00}};
}

json bulk_parameters_to_json(const BulkParameters& bp) {
    return json{{"z0", complex_to_json(bp.z0)},
                {"t0", bp.t0},
                {"p0", complex_to_json(bp.p0)},
                {"p1", bp.p1},
                {"sigma_sq", bp.sigma_sq},
                {"predicted_density", bp.predicted_density}};
}

json histogram_to_json(const Histogram& h) {
    return json{{"centers", h.centers}, {"values", h.values}, {"counts", h.counts}};
}

json comparison_report_to_json(const ComparisonReport& r) {
    return json{{"density_hat", r.density_hat},
                {"density_theory", r.density_theory},
                {"density_rel_err", r.density_rel_err},
                {"g_of_r", histogram_to_json(r.g_of_r)},
                {"g_max_abs_dev", r.g_max_abs_dev},
                {"g_bins_compared", r.g_bins_compared},
                {"insufficient_data", r.insufficient_data},
                {"ks_spacing_vs_ginibre", r.ks_spacing_vs_ginibre},
                {"counts",
                 {{"total_points", r.total_points},
                  {"density_points", r.density_points},
                  {"pair_count", r.pair_count},
                  {"spacing_count", r.spacing_count},
                  {"baseline_spacing_count", r.baseline_spacing_count}}}};
}

json max_check_to_json(const MaxCheckResult& r) {
    return json{{"argmax_found", r.argmax_found},
                {"argmax_expected", r.argmax_expected},
                {"value_found", r.value_found},
                {"value_expected", r.value_expected},
                {"max_gap", r.max_gap},
                {"tolerance", r.tolerance},
                {"passed", r.passed}};
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifactError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_boundary_csv(const std::filesystem::path& path, const BoundaryCurve& curve) {
    std::ostringstream os;
    os << "curve_id,x,y\n";
    for (std::size_t k = 0; k < curve.polylines.size(); ++k)
        for (const cplx& p : curve.polylines[k].points)
            os << k << ',' << format_double(p.real()) << ',' << format_double(p.imag()) << '\n';
    write_text(path, os.str());
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
    std::ostringstream os;
    os << "r,value,count\n";
    for (std::size_t b = 0; b < h.centers.size(); ++b)
        os << format_double(h.centers[b]) << ',' << format_double(h.values[b]) << ',' << h.counts[b]
           << '\n';
    write_text(path, os.str());
}

void write_ecdf_csv(const std::filesystem::path& path, const Ecdf& e) {
    std::ostringstream os;
    os << "x,cdf\n";
    for (std::size_t i = 0; i < e.x.size(); ++i)
        os << format_double(e.x[i]) << ',' << format_double(e.cdf[i]) << '\n';
    write_text(path, os.str());
}

void write_spectra_csv(const std::filesystem::path& path, const std::vector<SpectrumSample>& samples) {
    std::ostringstream os;
    os << "trial,re,im\n";
    for (const SpectrumSample& s : samples)
        for (const cplx& l : s.eigenvalues)
            os << s.trial_index << ',' << format_double(l.real()) << ',' << format_double(l.imag())
               << '\n';
    write_text(path, os.str());
}

}  // namespace ginlab
