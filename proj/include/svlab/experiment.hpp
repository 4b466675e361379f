#pragma once

// Batch experiments driven by a JSON config: each command runs one
// verification suite and writes a JSON report (plus CSV plot data).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "svlab/ideals.hpp"
#include "svlab/inner.hpp"
#include "svlab/operators.hpp"
#include "svlab/serialize.hpp"

namespace svlab {

enum class Command {
    VerifySimilarity,
    CheckInvariance,
    NormBounds,
    DensityDemo,
    ExpandInner,
    DumpOperator,
    NegativeControls,
};

std::string_view to_string(Command c);
/// Accepts the kebab-case CLI names. Throws std::invalid_argument otherwise.
Command command_from_string(std::string_view name);
const std::vector<Command>& all_commands();

struct ExperimentConfig {
    Command command = Command::VerifySimilarity;
    std::uint64_t seed = 42;
    std::vector<std::size_t> orders{0, 1, 8, 64, 256};  // verify-similarity sweep
    std::size_t order = 64;                             // expand-inner, dump-operator
    std::size_t trials = 1000;
    std::size_t max_degree = 64;
    std::vector<IdealSpec> ideals;                      // check-invariance
    InnerFunctionSpec inner;                            // expand-inner
    OperatorKind kind = OperatorKind::ShiftPlusVolterra;
    double pass_tol = 1e-8;
    double fail_threshold = 1e-1;
    std::vector<double> eps{1e-1, 1e-2, 1e-3};          // density-demo
    std::size_t density_terms = 512;
    std::string out_dir = ".";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

void to_json(json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown commands or malformed values throw.
void from_json(const json& j, ExperimentConfig& c);

/// Raised for invalid configs and unusable output locations (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 contract violation, 2 config or IO error
    json report;
    std::vector<std::filesystem::path> files;
    std::string message;
};

/// Runs one experiment and writes its files under config.out_dir. Never throws.
RunResult run(const ExperimentConfig& config);

/// Random polynomials with i.i.d. coefficients whose real and imaginary parts
/// are uniform on [-1, 1]. Source: mt19937_64 seeded with `seed`; each
/// uniform is (x >> 11) * 2^-53 mapped by u -> 2u - 1; a degree bounded by d
/// is x % (d + 1) from one further draw. The recipe is fixed so that other
/// implementations can replay it.
class RandomPolynomials {
public:
    explicit RandomPolynomials(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [-1, 1)
    CoeffSeries with_degree(std::size_t degree);
    CoeffSeries up_to_degree(std::size_t max_degree);

    static constexpr std::string_view description =
        "mt19937_64(seed); u=(x>>11)*2^-53; coeff=(2u-1)+i(2u'-1); degree=x%(max+1)";

private:
    std::mt19937_64 engine_;
};

/// Writes `contents` to `path` via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace svlab
