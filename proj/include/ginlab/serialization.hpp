#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ginlab/bulk_parameters.hpp"
#include "ginlab/empirical_stats.hpp"
#include "ginlab/variational_checks.hpp"

namespace ginlab {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"tau", "atoms": [{"re","im","c"}], "r0", "finite_block": [{"re","im"}], "R0"}.
json spec_to_json(const DeformationSpec& spec);
/// Missing or mistyped fields raise ValidationError. Does not validate values.
DeformationSpec spec_from_json(const json& j);

json point_class_to_json(const PointClass& pc);
json bulk_parameters_to_json(const BulkParameters& bp);
json histogram_to_json(const Histogram& h);
json comparison_report_to_json(const ComparisonReport& r);
json max_check_to_json(const MaxCheckResult& r);

/// Shortest round-trip text for a double.
std::string format_double(double x);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

/// curve_id,x,y
void write_boundary_csv(const std::filesystem::path& path, const BoundaryCurve& curve);
/// r,value,count
void write_histogram_csv(const std::filesystem::path& path, const Histogram& h);
/// x,cdf
void write_ecdf_csv(const std::filesystem::path& path, const Ecdf& e);
/// trial,re,im
void write_spectra_csv(const std::filesystem::path& path, const std::vector<SpectrumSample>& samples);

}  // namespace ginlab
