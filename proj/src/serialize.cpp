#include "svlab/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace svlab {

namespace {

json pair_of(cplx c) { return json::array({c.real(), c.imag()}); }

cplx cplx_of(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<cplx> cplx_list(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(cplx_of(e));
    return out;
}

double parse_double(std::string_view s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number in CSV: " + std::string(s));
    return x;
}

}  // namespace

void to_json(json& j, const CoeffSeries& f) {
    json coeffs = json::array();
    for (cplx c : f.coeffs()) coeffs.push_back(pair_of(c));
    j = json{{"order", f.order()}, {"coeffs", std::move(coeffs)}};
}

void from_json(const json& j, CoeffSeries& f) {
    const auto order = j.at("order").get<std::size_t>();
    auto coeffs = cplx_list(j.at("coeffs"));
    if (coeffs.size() != order + 1) throw std::invalid_argument("coeffs must have order + 1 entries");
    f = CoeffSeries(std::move(coeffs));
}

void to_json(json& j, const OperatorMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) row.push_back(pair_of(m.entries(r, c)));
        rows.push_back(std::move(row));
    }
    j = json{{"kind", to_string(m.kind)},
             {"in_order", m.in_order},
             {"out_order", m.out_order},
             {"entries", std::move(rows)}};
}

void to_json(json& j, const BoundarySet& k) {
    json pts = json::array();
    for (cplx z : k.points()) pts.push_back(pair_of(z));
    j = json{{"points", std::move(pts)}};
}

void from_json(const json& j, BoundarySet& k) { k = BoundarySet(cplx_list(j.at("points"))); }

void to_json(json& j, const InnerFunctionSpec& g) {
    json zeros = json::array();
    for (cplx a : g.zeros) zeros.push_back(pair_of(a));
    json atoms = json::array();
    for (const auto& a : g.atoms) atoms.push_back(json{{"point", pair_of(a.point)}, {"mass", a.mass}});
    j = json{{"zeros", std::move(zeros)}, {"atoms", std::move(atoms)}};
}

void from_json(const json& j, InnerFunctionSpec& g) {
    g = {};
    if (j.contains("zeros")) g.zeros = cplx_list(j.at("zeros"));
    if (j.contains("atoms")) {
        for (const auto& a : j.at("atoms")) g.atoms.push_back({cplx_of(a.at("point")), a.at("mass").get<double>()});
    }
}

void to_json(json& j, const IdealSpec& s) {
    j = json{{"inner", s.inner},
             {"boundary", s.boundary},
             {"generator_count", s.generator_count},
             {"order", s.order},
             {"buffer", s.buffer}};
}

void from_json(const json& j, IdealSpec& s) {
    s = {};
    if (j.contains("inner")) s.inner = j.at("inner").get<InnerFunctionSpec>();
    if (j.contains("boundary")) s.boundary = j.at("boundary").get<BoundarySet>();
    s.generator_count = j.at("generator_count").get<std::size_t>();
    s.order = j.at("order").get<std::size_t>();
    s.buffer = j.value("buffer", std::size_t{0});
}

void to_json(json& j, const InvarianceReport& r) {
    json rows = json::array();
    for (const auto& g : r.per_generator) {
        json row{{"j", g.index}, {"projection_residual", g.projection}};
        row["structural_residual"] = g.structural ? json(*g.structural) : json(nullptr);
        rows.push_back(std::move(row));
    }
    j = json{{"schema_version", kReportSchemaVersion},
             {"label", r.label},
             {"spec", r.spec ? json(*r.spec) : json(nullptr)},
             {"per_generator", std::move(rows)},
             {"verdict", to_string(r.verdict)},
             {"tolerances",
              {{"pass", r.pass_tol}, {"fail", r.fail_threshold}, {"structural", r.structural_tol}}},
             {"truncation", {{"test_order", r.test_order}, {"buffer", r.buffer}}},
             {"rank_deficient", r.rank_deficient}};
}

void to_json(json& j, const DensitySchedule& s) {
    j = json{{"tail_index", s.tail_index},
             {"dilation_param", s.dilation_param},
             {"grid_exponent", s.grid_exponent},
             {"target_eps", s.target_eps},
             {"h2_error_sq", s.h2_error_sq},
             {"s2_error_sq", s.s2_error_sq}};
}

void to_json(json& j, const MembershipResult& m) {
    static constexpr const char* names[] = {"Member", "NonMember", "Inconclusive", "NotInS0"};
    j = json{{"status", names[static_cast<int>(m.status)]},
             {"residual", std::isfinite(m.residual) ? json(m.residual) : json("inf")},
             {"origin_residual", m.origin_residual},
             {"zero_residual", m.zero_residual},
             {"boundary_residual", m.boundary_residual},
             {"cofactor_residual", m.cofactor_residual}};
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string to_csv(const CoeffSeries& f) {
    std::string out = "n,re,im\n";
    for (std::size_t n = 0; n <= f.order(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(f[n].real());
        out += ',';
        out += format_double(f[n].imag());
        out += '\n';
    }
    return out;
}

CoeffSeries coeff_series_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "n,re,im") throw std::invalid_argument("CSV header must be n,re,im");
    std::vector<cplx> coeffs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw std::invalid_argument("CSV row needs 3 fields");
        const std::string_view row(line);
        const double n = parse_double(row.substr(0, c1));
        if (n != static_cast<double>(coeffs.size())) throw std::invalid_argument("CSV rows must be consecutive from 0");
        coeffs.emplace_back(parse_double(row.substr(c1 + 1, c2 - c1 - 1)), parse_double(row.substr(c2 + 1)));
    }
    return CoeffSeries(std::move(coeffs));
}

std::string xy_csv(const std::vector<std::pair<double, double>>& points) {
    std::string out = "x,y\n";
    for (const auto& [x, y] : points) out += format_double(x) + "," + format_double(y) + "\n";
    return out;
}

}  // namespace svlab
