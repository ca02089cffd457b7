#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hypstab/conformal2d.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/geometry.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab::cli {

enum class Command { RadialFlow, Conformal, Eigen, GaugeCheck, Verify };

enum class ProfileFamily {
    Bump,         ///< damped Gaussian bump, amplitude
    Anisotropic,  ///< damped bump with separate radial / angular amplitudes
    Tent,         ///< Lipschitz tent at tent_center with tent_half_width
    Constant      ///< spatially constant, lambda = 1 + amplitude (u = log(1 + amplitude))
};

struct ExperimentConfig {
    Command command = Command::RadialFlow;
    int n = 4;
    Background background = Background::Hyperbolic;
    double radius = 6.0;
    int intervals = 600;
    double cfl = 0.2;
    double t_end = 5.0;
    int record_every = 1000;
    BoundaryMode boundary = BoundaryMode::Dirichlet;
    ProfileFamily profile = ProfileFamily::Bump;
    double amplitude = 0.01;
    double amplitude_b = -0.005;
    double tent_center = 1.5;
    double tent_half_width = 0.5;
    double eps_abort = 0.5;
    double dt = 0.0;
    double delta = 1e-6;
    double p = 2.0;
    double tol = 0.05;
    ConformalMode mode = ConformalMode::Rescaled;
    double gamma = 0.1;
    std::string csv = "series.csv";
    std::string summary = "summary.txt";
    std::uint64_t seed = 1;
};

/// Configuration text rejected at a given line (1-based).
class ParseError : public ConfigError {
public:
    ParseError(int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct KeyDoc {
    std::string_view key;
    std::string_view help;
};

/// Every accepted key with a one-line description.
const std::vector<KeyDoc>& documented_keys();

/// `key = value` lines; `#` starts a comment; blank lines are ignored.
/// Omitted keys keep their defaults. Unknown or repeated keys, malformed and
/// out-of-range values raise ParseError.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::filesystem::path& path);

std::string_view command_name(Command command);
std::string_view profile_name(ProfileFamily profile);

}  // namespace hypstab::cli
