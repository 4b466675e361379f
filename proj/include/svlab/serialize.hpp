#pragma once

// JSON and CSV encodings of the library's value types.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "svlab/ideals.hpp"
#include "svlab/inner.hpp"
#include "svlab/lattice.hpp"
#include "svlab/operators.hpp"
#include "svlab/series.hpp"

namespace svlab {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

// Complex numbers are [re, im] pairs throughout.
void to_json(json& j, const CoeffSeries& f);
void from_json(const json& j, CoeffSeries& f);
void to_json(json& j, const OperatorMatrix& m);
void to_json(json& j, const BoundarySet& k);
void from_json(const json& j, BoundarySet& k);
void to_json(json& j, const InnerFunctionSpec& g);
void from_json(const json& j, InnerFunctionSpec& g);
void to_json(json& j, const IdealSpec& s);
void from_json(const json& j, IdealSpec& s);
void to_json(json& j, const InvarianceReport& r);
void to_json(json& j, const DensitySchedule& s);
void to_json(json& j, const MembershipResult& m);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Header "n,re,im" then one row per coefficient.
std::string to_csv(const CoeffSeries& f);
/// Inverse of to_csv. Rows must be consecutive from n = 0. Throws
/// std::invalid_argument on malformed input.
CoeffSeries coeff_series_from_csv(std::string_view text);

/// Header "x,y" then the points in the given order.
std::string xy_csv(const std::vector<std::pair<double, double>>& points);

}  // namespace svlab
