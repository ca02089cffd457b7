#include "hypstab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hypstab::cli {

ParseError::ParseError(int line, const std::string& message)
    : ConfigError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Raised by the value parsers; the caller adds the line number.
struct ValueError {
    std::string message;
};

double parse_double(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ValueError{std::string(key) + " expects a number, got '" + std::string(text) + "'"};
    }
    return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValueError{std::string(key) + " expects an integer, got '" + std::string(text) +
                         "'"};
    }
    return value;
}

void require(bool ok, std::string_view key, const std::string& range) {
    if (!ok) throw ValueError{std::string(key) + " out of range (" + range + ")"};
}

template <class Enum>
Enum parse_choice(std::string_view key, std::string_view text,
                  const std::map<std::string_view, Enum>& choices) {
    const auto it = choices.find(text);
    if (it == choices.end()) {
        std::string list;
        for (const auto& [name, value] : choices) {
            if (!list.empty()) list += ", ";
            list += name;
        }
        throw ValueError{std::string(key) + " must be one of " + list + ", got '" +
                         std::string(text) + "'"};
    }
    return it->second;
}

struct KeySpec {
    KeyDoc doc;
    std::function<void(ExperimentConfig&, std::string_view)> apply;
};

const std::vector<KeySpec>& key_specs() {
    using C = ExperimentConfig;
    static const std::vector<KeySpec> specs{
        {{"command", "radial-flow | conformal | eigen | gauge-check | verify (radial-flow)"},
         [](C& c, std::string_view v) {
             c.command = parse_choice<Command>("command", v,
                                               {{"radial-flow", Command::RadialFlow},
                                                {"conformal", Command::Conformal},
                                                {"eigen", Command::Eigen},
                                                {"gauge-check", Command::GaugeCheck},
                                                {"verify", Command::Verify}});
         }},
        {{"n", "dimension, 2..16; radial-flow and gauge-check need n >= 3 (4)"},
         [](C& c, std::string_view v) {
             const auto n = parse_integer("n", v);
             require(n >= 2 && n <= 16, "n", "2..16");
             c.n = static_cast<int>(n);
         }},
        {{"background", "hyperbolic | euclidean (hyperbolic)"},
         [](C& c, std::string_view v) {
             c.background = parse_choice<Background>(
                 "background", v,
                 {{"hyperbolic", Background::Hyperbolic}, {"euclidean", Background::Euclidean}});
         }},
        {{"R", "geodesic radius of the ball, > 0 (6)"},
         [](C& c, std::string_view v) {
             c.radius = parse_double("R", v);
             require(c.radius > 0.0 && c.radius <= 50.0, "R", "0 < R <= 50");
         }},
        {{"m", "number of grid intervals, 8..200000; eigen needs m >= 64 (600)"},
         [](C& c, std::string_view v) {
             const auto m = parse_integer("m", v);
             require(m >= RadialGrid::kMinIntervals && m <= 200000, "m", "8..200000");
             c.intervals = static_cast<int>(m);
         }},
        {{"cfl", "Courant factor of the explicit step, in (0, 0.5] (0.2)"},
         [](C& c, std::string_view v) {
             c.cfl = parse_double("cfl", v);
             require(c.cfl > 0.0 && c.cfl <= 0.5, "cfl", "0 < cfl <= 0.5");
         }},
        {{"t_end", "final time, >= 0 (5)"},
         [](C& c, std::string_view v) {
             c.t_end = parse_double("t_end", v);
             require(c.t_end >= 0.0 && c.t_end <= 1e4, "t_end", "0 <= t_end <= 1e4");
         }},
        {{"record_every", "steps between recorded rows, >= 1 (1000)"},
         [](C& c, std::string_view v) {
             const auto r = parse_integer("record_every", v);
             require(r >= 1 && r <= 1000000000, "record_every", ">= 1");
             c.record_every = static_cast<int>(r);
         }},
        {{"boundary", "dirichlet | constant (dirichlet); constant needs a constant profile"},
         [](C& c, std::string_view v) {
             c.boundary = parse_choice<BoundaryMode>(
                 "boundary", v,
                 {{"dirichlet", BoundaryMode::Dirichlet},
                  {"constant", BoundaryMode::NoBoundaryConstantMode}});
         }},
        {{"profile", "bump | anisotropic | tent | constant (bump)"},
         [](C& c, std::string_view v) {
             c.profile = parse_choice<ProfileFamily>("profile", v,
                                                     {{"bump", ProfileFamily::Bump},
                                                      {"anisotropic", ProfileFamily::Anisotropic},
                                                      {"tent", ProfileFamily::Tent},
                                                      {"constant", ProfileFamily::Constant}});
         }},
        {{"amplitude", "profile amplitude, |amplitude| < 1 (0.01)"},
         [](C& c, std::string_view v) {
             c.amplitude = parse_double("amplitude", v);
             require(std::abs(c.amplitude) < 1.0, "amplitude", "|amplitude| < 1");
         }},
        {{"amplitude_b", "angular amplitude of the anisotropic profile, |.| < 1 (-0.005)"},
         [](C& c, std::string_view v) {
             c.amplitude_b = parse_double("amplitude_b", v);
             require(std::abs(c.amplitude_b) < 1.0, "amplitude_b", "|amplitude_b| < 1");
         }},
        {{"tent_center", "center of the tent profile, > 0 (1.5)"},
         [](C& c, std::string_view v) {
             c.tent_center = parse_double("tent_center", v);
             require(c.tent_center > 0.0, "tent_center", "> 0");
         }},
        {{"tent_half_width", "half width of the tent profile, > 0 (0.5)"},
         [](C& c, std::string_view v) {
             c.tent_half_width = parse_double("tent_half_width", v);
             require(c.tent_half_width > 0.0, "tent_half_width", "> 0");
         }},
        {{"eps_abort", "closeness abort threshold, in (0, 1) (0.5)"},
         [](C& c, std::string_view v) {
             c.eps_abort = parse_double("eps_abort", v);
             require(c.eps_abort > 0.0 && c.eps_abort < 1.0, "eps_abort", "0 < eps_abort < 1");
         }},
        {{"dt", "fixed time step replacing the CFL step when > 0 (0)"},
         [](C& c, std::string_view v) {
             c.dt = parse_double("dt", v);
             require(c.dt >= 0.0, "dt", ">= 0");
         }},
        {{"delta", "truncation level of I_delta and I^p_delta, >= 0 (1e-6)"},
         [](C& c, std::string_view v) {
             c.delta = parse_double("delta", v);
             require(c.delta >= 0.0, "delta", ">= 0");
         }},
        {{"p", "exponent of I^p_delta, >= 2 (2)"},
         [](C& c, std::string_view v) {
             c.p = parse_double("p", v);
             require(c.p >= 2.0, "p", ">= 2");
         }},
        {{"tol", "relative tolerance of the decay monotonicity check, >= 0 (0.05)"},
         [](C& c, std::string_view v) {
             c.tol = parse_double("tol", v);
             require(c.tol >= 0.0, "tol", ">= 0");
         }},
        {{"mode", "conformal form: rescaled | unrescaled (rescaled)"},
         [](C& c, std::string_view v) {
             c.mode = parse_choice<ConformalMode>(
                 "mode", v,
                 {{"rescaled", ConformalMode::Rescaled}, {"unrescaled", ConformalMode::Unrescaled}});
         }},
        {{"gamma", "time shift of the unrescaled uniqueness residual, >= 0 (0.1)"},
         [](C& c, std::string_view v) {
             c.gamma = parse_double("gamma", v);
             require(c.gamma >= 0.0 && c.gamma <= 10.0, "gamma", "0 <= gamma <= 10");
         }},
        {{"csv", "time series file name inside the output directory (series.csv)"},
         [](C& c, std::string_view v) { c.csv = std::string(v); }},
        {{"summary", "summary file name inside the output directory (summary.txt)"},
         [](C& c, std::string_view v) { c.summary = std::string(v); }},
        {{"seed", "seed of the randomized property suites, unsigned 64-bit (1)"},
         [](C& c, std::string_view v) {
             std::uint64_t seed = 0;
             const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
             if (ec != std::errc() || ptr != v.data() + v.size()) {
                 throw ValueError{"seed expects an unsigned integer, got '" + std::string(v) + "'"};
             }
             c.seed = seed;
         }},
    };
    return specs;
}

}  // namespace

const std::vector<KeyDoc>& documented_keys() {
    static const std::vector<KeyDoc> docs = [] {
        std::vector<KeyDoc> out;
        for (const auto& spec : key_specs()) out.push_back(spec.doc);
        return out;
    }();
    return docs;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::set<std::string, std::less<>> seen;
    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        ++line_number;
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_number, "expected 'key = value', got '" + std::string(line) + "'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_number, "missing key before '='");
        const auto& specs = key_specs();
        const auto it = std::find_if(specs.begin(), specs.end(),
                                     [&](const KeySpec& s) { return s.doc.key == key; });
        if (it == specs.end()) {
            throw ParseError(line_number, "unknown key '" + std::string(key) + "'");
        }
        if (value.empty()) {
            throw ParseError(line_number, "missing value for '" + std::string(key) + "'");
        }
        if (!seen.insert(std::string(key)).second) {
            throw ParseError(line_number, "duplicate key '" + std::string(key) + "'");
        }
        try {
            it->apply(config, value);
        } catch (const ValueError& e) {
            throw ParseError(line_number, e.message);
        }
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::RadialFlow: return "radial-flow";
        case Command::Conformal: return "conformal";
        case Command::Eigen: return "eigen";
        case Command::GaugeCheck: return "gauge-check";
        case Command::Verify: return "verify";
    }
    return "";
}

std::string_view profile_name(ProfileFamily profile) {
    switch (profile) {
        case ProfileFamily::Bump: return "bump";
        case ProfileFamily::Anisotropic: return "anisotropic";
        case ProfileFamily::Tent: return "tent";
        case ProfileFamily::Constant: return "constant";
    }
    return "";
}

}  // namespace hypstab::cli
