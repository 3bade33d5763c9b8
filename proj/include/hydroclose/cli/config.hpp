#pragma once

#include "hydroclose/closures.hpp"
#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/initial.hpp"
#include "hydroclose/sim/state.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydroclose::cli {

using nlohmann::json;

// Bad flags, bad config files, bad family parameters. Exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Family name plus whichever parameters it takes. Polynomials and metrics are
// kept as text until build_family so that reports can echo them verbatim.
struct ClosureSpec {
    std::string family = "cold";  // cold | multidelta | waterbag | burby | fourfield | generic
    int streams = 2;
    std::vector<Rational> heights;
    int level = 1;
    BurbyBranch branch = BurbyBranch::plus;
    Rational kappa;
    std::string mu2;
    std::string mu1;     // optional override of ½ν·g⁻¹ν
    std::string metric;  // "a,b;c,d" rows, empty = identity
    GammaRule rule = GammaRule::euler;
    Rational lambda;
};

ClosureFamily build_family(const ClosureSpec& spec);
json to_json(const ClosureSpec& spec);

// "1..6", "3" or "1,2,5".
std::vector<int> parse_levels(const std::string& text);
// Comma-separated rationals.
std::vector<Rational> parse_rational_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
RationalMatrix parse_metric(const std::string& text, std::size_t dim);
BurbyBranch parse_branch(const std::string& text);
GammaRule parse_rule(const std::string& text);

enum class ModelKind { fluid, streams };

struct InitialSpec {
    double n0 = 1.0;
    double u0 = 0.0;
    std::vector<double> nu0;
    std::vector<sim::Perturbation> perturbations;
    std::vector<sim::BeamSpec> beams;  // streams model, or fluid data mapped from streams
};

struct IntegratorSpec {
    sim::Scheme scheme = sim::Scheme::rk4;
    double dt = 0.0;  // 0 = CFL estimate
    double t_end = 1.0;
    sim::Discretization discretization = sim::Discretization::spectral;
    sim::KernelMode kernels = sim::KernelMode::openmp;
};

struct OutputSpec {
    std::size_t stride = 1;     // steps between diagnostics rows
    std::size_t snapshots = 0;  // diagnostics rows between snapshots, 0 = none
    std::string path;
};

struct CheckSpec {
    double drift_tolerance = 1e-6;
    std::optional<double> casimir_tolerance;  // defaults to drift_tolerance
    std::optional<double> expected_frequency;
    double frequency_tolerance = 0.01;  // relative
    double moment_tolerance = 1e-6;     // compare
};

struct VerifySpec {
    std::vector<int> levels;
    int inversion_samples = 100;
    std::uint64_t seed = 0x5eed;
    bool serial = false;
};

struct RunConfig {
    ModelKind model = ModelKind::fluid;
    sim::Grid grid;
    ClosureSpec closure;
    InitialSpec initial;
    IntegratorSpec integrator;
    OutputSpec output;
    CheckSpec checks;
    VerifySpec verify;
    json source;  // the validated document
};

// Validates against the documented schema; unknown keys are errors.
RunConfig parse_run_config(const json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

// Fluid initial data: mapped from initial.beams when present (the family must
// then be multi-delta with one stream per beam), otherwise homogeneous
// (n0, u0, nu0) plus the listed perturbations.
sim::FieldState initial_fluid_state(const RunConfig& config, const ClosureFamily& family);
sim::StreamState initial_stream_state(const RunConfig& config);

}  // namespace hydroclose::cli
