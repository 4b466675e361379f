#include "svlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "svlab/lattice.hpp"

namespace svlab {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSupSamples = 4096;
constexpr double kSupSlack = 1e-9;
constexpr double kSimilarityTol = 1e-14;
constexpr double kInverseTol = 1e-15;
constexpr std::size_t kMaxReportedViolations = 5;

struct CommandName {
    Command command;
    std::string_view name;
};

constexpr CommandName kNames[] = {
    {Command::VerifySimilarity, "verify-similarity"},
    {Command::CheckInvariance, "check-invariance"},
    {Command::NormBounds, "norm-bounds"},
    {Command::DensityDemo, "density-demo"},
    {Command::ExpandInner, "expand-inner"},
    {Command::DumpOperator, "dump-operator"},
    {Command::NegativeControls, "negative-controls"},
};

json base_report(const ExperimentConfig& c) {
    return json{{"schema_version", kReportSchemaVersion}, {"command", to_string(c.command)}};
}

void ensure_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    const fs::path probe = dir / ".svlab_probe";
    {
        std::ofstream out(probe);
        if (!out) throw ConfigError("output directory is not writable: " + dir.string());
    }
    fs::remove(probe, ec);
}

void emit(RunResult& res, const fs::path& path, std::string_view contents) {
    write_atomic(path, contents);
    res.files.push_back(path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Each suite fills `rep`, writes its files and returns whether all contracts held.
bool run_similarity(const ExperimentConfig& c, json& rep, RunResult& res, const fs::path& out) {
    std::vector<std::pair<double, double>> curve;
    double worst = 0.0;
    for (std::size_t n : c.orders) {
        const double r = similarity_residual(n);
        curve.emplace_back(static_cast<double>(n), r);
        worst = std::max(worst, r);
    }
    RandomPolynomials gen(c.seed);
    double intertwine = 0.0, dv = 0.0, vd = 0.0;
    json violations = json::array();
    for (std::size_t t = 0; t < c.trials; ++t) {
        const CoeffSeries f = gen.up_to_degree(c.max_degree);
        const double r = max_abs_diff(apply_V(apply_T(f)), apply_Mz(apply_V(f)));
        const InverseResiduals inv = inverse_residuals(f);
        intertwine = std::max(intertwine, r);
        dv = std::max(dv, inv.dv_residual);
        vd = std::max(vd, inv.vd_residual);
        if ((r > kSimilarityTol || inv.dv_residual > kInverseTol || inv.vd_residual > kInverseTol) &&
            violations.size() < kMaxReportedViolations)
            violations.push_back(json{{"trial", t}, {"f", f}});
    }
    rep["orders"] = c.orders;
    rep["max_residual"] = worst;
    rep["seed"] = c.seed;
    rep["generator"] = RandomPolynomials::description;
    rep["trials"] = c.trials;
    rep["max_degree"] = c.max_degree;
    rep["intertwining_max_residual"] = intertwine;
    rep["dv_max_residual"] = dv;
    rep["vd_max_residual"] = vd;
    rep["tolerance"] = kSimilarityTol;
    rep["violations"] = violations;
    emit(res, out / "similarity_sweep.csv", xy_csv(curve));
    return worst <= kSimilarityTol && violations.empty();
}

bool run_norm_bounds(const ExperimentConfig& c, json& rep) {
    RandomPolynomials gen(c.seed);
    double contraction = 0.0, vbound = 0.0, sup = 0.0, algebra = 0.0;
    std::size_t bad = 0;
    json violations = json::array();
    for (std::size_t t = 0; t < c.trials; ++t) {
        const CoeffSeries f = gen.up_to_degree(c.max_degree);
        const CoeffSeries g = gen.up_to_degree(c.max_degree);
        const double hf = h2_norm(f);
        const CoeffSeries vf = apply_V(f);
        const double r1 = hf > 0.0 ? h2_norm(vf) / hf : 0.0;
        const double r2 = hf > 0.0 ? (h2_norm(vf) + h2_norm(apply_D(vf))) / (2.0 * hf) : 0.0;
        const SupBound sb = sup_bound(f, kSupSamples);
        const double r3 = sb.bound > 0.0 ? sb.sampled_sup / sb.bound : 0.0;
        const double sf = s2_norm(f), sg = s2_norm(g), sfg = s2_norm(mul(f, g));
        const double r4 = (sfg * sfg) / (16.0 * sf * sf * sg * sg);
        contraction = std::max(contraction, r1);
        vbound = std::max(vbound, r2);
        sup = std::max(sup, r3);
        algebra = std::max(algebra, r4);
        const bool ok = r1 <= 1.0 && r2 <= 1.0 && sb.sampled_sup <= sb.bound + kSupSlack && r4 <= 1.0;
        if (!ok) {
            ++bad;
            if (violations.size() < kMaxReportedViolations) violations.push_back(json{{"trial", t}, {"f", f}, {"g", g}});
        }
    }
    rep["seed"] = c.seed;
    rep["generator"] = RandomPolynomials::description;
    rep["trials"] = c.trials;
    rep["max_degree"] = c.max_degree;
    rep["sup_samples"] = kSupSamples;
    rep["worst_ratios"] = {{"contraction", contraction},
                           {"volterra_bound", vbound},
                           {"sup_bound", sup},
                           {"algebra_16", algebra}};
    rep["violation_count"] = bad;
    rep["violations"] = violations;
    return bad == 0;
}

bool run_density(const ExperimentConfig& c, json& rep, RunResult& res, const fs::path& out) {
    std::vector<cplx> a(c.density_terms + 1);
    for (std::size_t n = 1; n <= c.density_terms; ++n) a[n] = 1.0 / static_cast<double>(n);
    const CoeffSeries f(std::move(a));

    bool ok = true;
    json schedules = json::array();
    for (double eps : c.eps) {
        const DensitySchedule s = density_schedule(f, eps);
        ok = ok && s.s2_error_sq < 2.0 * eps;
        schedules.push_back(s);
    }
    std::vector<std::pair<double, double>> curve;
    for (double q : {0.9, 0.99, 0.999, 0.9999}) curve.emplace_back(q, s2_norm(sub(f, dilate(f, q))));
    for (std::size_t i = 1; i < curve.size(); ++i) ok = ok && curve[i].second <= curve[i - 1].second;

    rep["terms"] = c.density_terms;
    rep["schedules"] = schedules;
    json pts = json::array();
    for (const auto& [q, e] : curve) pts.push_back({{"q", q}, {"s2_error", e}});
    rep["dilation_curve"] = pts;
    emit(res, out / "dilation_curve.csv", xy_csv(curve));
    return ok;
}

bool run_invariance(const ExperimentConfig& c, json& rep, RunResult& res, const fs::path& out) {
    bool ok = true;
    json files = json::array();
    for (std::size_t i = 0; i < c.ideals.size(); ++i) {
        const InvarianceReport r = invariance_report(c.ideals[i], c.pass_tol, c.fail_threshold);
        ok = ok && r.verdict == Verdict::Invariant;
        std::vector<std::pair<double, double>> curve;
        for (const auto& g : r.per_generator) curve.emplace_back(static_cast<double>(g.index), g.projection);
        const std::string stem = "invariance_" + std::to_string(i);
        emit(res, out / (stem + ".json"), dump(json(r)));
        emit(res, out / (stem + ".csv"), xy_csv(curve));
        files.push_back({{"spec", i}, {"verdict", to_string(r.verdict)}});
    }
    json endpoints = json::array();
    for (const auto& r : lattice_endpoints(std::max<std::size_t>(c.ideals.front().order, 9))) {
        ok = ok && r.verdict == Verdict::Invariant;
        endpoints.push_back(r);
    }
    rep["reports"] = files;
    rep["endpoints"] = endpoints;
    return ok;
}

bool run_expand_inner(const ExperimentConfig& c, json& rep, RunResult& res, const fs::path& out) {
    const CoeffSeries g = inner_expand(c.inner, c.order);
    double worst = 0.0;
    for (cplx x : g.coeffs()) worst = std::max(worst, std::abs(x));
    bool ok = worst <= 1.0 + 1e-10;
    rep["inner"] = c.inner;
    rep["series"] = g;
    rep["max_coefficient_modulus"] = worst;
    if (c.inner.atoms.empty()) {
        const double dev = boundary_modulus_check(c.inner, 1024);
        rep["boundary_modulus_deviation"] = dev;
        ok = ok && dev <= 1e-12;
    }
    emit(res, out / "inner_series.csv", to_csv(g));
    return ok;
}

void validate(const ExperimentConfig& c) {
    try {
        if (!(c.pass_tol < c.fail_threshold)) throw ConfigError("pass tolerance must be below the fail threshold");
        switch (c.command) {
            case Command::CheckInvariance:
                if (c.ideals.empty()) throw ConfigError("check-invariance needs at least one ideal spec");
                for (const auto& s : c.ideals) {
                    s.validate();
                    check_resolvable(s.inner, s.order + s.buffer);
                }
                break;
            case Command::ExpandInner: check_resolvable(c.inner, c.order); break;
            case Command::DensityDemo:
                for (double e : c.eps)
                    if (!(e > 0.0)) throw ConfigError("eps values must be positive");
                break;
            default: break;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::string_view to_string(Command c) {
    for (const auto& n : kNames)
        if (n.command == c) return n.name;
    return "?";
}

Command command_from_string(std::string_view name) {
    for (const auto& n : kNames)
        if (n.name == name) return n.command;
    throw std::invalid_argument("unknown command: " + std::string(name));
}

const std::vector<Command>& all_commands() {
    static const std::vector<Command> all = [] {
        std::vector<Command> v;
        for (const auto& n : kNames) v.push_back(n.command);
        return v;
    }();
    return all;
}

void to_json(json& j, const ExperimentConfig& c) {
    j = json{{"command", to_string(c.command)},
             {"seed", c.seed},
             {"orders", c.orders},
             {"order", c.order},
             {"trials", c.trials},
             {"max_degree", c.max_degree},
             {"ideals", c.ideals},
             {"inner", c.inner},
             {"kind", to_string(c.kind)},
             {"tolerances", {{"pass", c.pass_tol}, {"fail", c.fail_threshold}}},
             {"eps", c.eps},
             {"density_terms", c.density_terms},
             {"out", c.out_dir}};
}

void from_json(const json& j, ExperimentConfig& c) {
    c = {};
    c.command = command_from_string(j.at("command").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.orders = j.value("orders", c.orders);
    c.order = j.value("order", c.order);
    c.trials = j.value("trials", c.trials);
    c.max_degree = j.value("max_degree", c.max_degree);
    if (j.contains("ideals")) c.ideals = j.at("ideals").get<std::vector<IdealSpec>>();
    if (j.contains("ideal")) c.ideals.push_back(j.at("ideal").get<IdealSpec>());
    if (j.contains("inner")) c.inner = j.at("inner").get<InnerFunctionSpec>();
    if (j.contains("kind")) c.kind = operator_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        c.pass_tol = t.value("pass", c.pass_tol);
        c.fail_threshold = t.value("fail", c.fail_threshold);
    }
    c.eps = j.value("eps", c.eps);
    c.density_terms = j.value("density_terms", c.density_terms);
    c.out_dir = j.value("out", c.out_dir);
}

RunResult run(const ExperimentConfig& config) {
    RunResult res;
    try {
        validate(config);
        const fs::path out(config.out_dir);
        ensure_writable(out);

        json rep = base_report(config);
        bool ok = true;
        switch (config.command) {
            case Command::VerifySimilarity: ok = run_similarity(config, rep, res, out); break;
            case Command::NormBounds: ok = run_norm_bounds(config, rep); break;
            case Command::DensityDemo: ok = run_density(config, rep, res, out); break;
            case Command::CheckInvariance: ok = run_invariance(config, rep, res, out); break;
            case Command::ExpandInner: ok = run_expand_inner(config, rep, res, out); break;
            case Command::DumpOperator: rep["operator"] = matrix_of(config.kind, config.order); break;
            case Command::NegativeControls: {
                json reports = json::array();
                for (const auto& r : negative_controls()) {
                    ok = ok && r.verdict == Verdict::NotInvariant;
                    reports.push_back(r);
                }
                rep["reports"] = reports;
                break;
            }
        }
        rep["pass"] = ok;
        const std::string name = config.command == Command::DumpOperator ? "operator" : std::string(to_string(config.command));
        emit(res, out / (name + ".json"), dump(rep));
        res.report = std::move(rep);
        res.exit_code = ok ? 0 : 1;
        res.message = ok ? "all contracts hold" : "contract violation";
    } catch (const ConfigError& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const json::exception& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const fs::filesystem_error& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.message = e.what();
    }
    return res;
}

double RandomPolynomials::uniform() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

CoeffSeries RandomPolynomials::with_degree(std::size_t degree) {
    std::vector<cplx> a(degree + 1);
    for (auto& c : a) {
        const double re = uniform();
        c = {re, uniform()};
    }
    return CoeffSeries(std::move(a));
}

CoeffSeries RandomPolynomials::up_to_degree(std::size_t max_degree) {
    return with_degree(static_cast<std::size_t>(engine_() % (max_degree + 1)));
}

void write_atomic(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw fs::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::io_error));
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw fs::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
    fs::rename(tmp, path);
}

}  // namespace svlab
