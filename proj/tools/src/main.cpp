#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hypstab/cli/config.hpp"
#include "hypstab/cli/run.hpp"

int main(int argc, char** argv) {
    using namespace hypstab::cli;
    CLI::App app{"Rescaled Ricci flow experiments on hyperbolic balls"};
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    bool list_keys = false;
    app.add_option("--config", config_path, "experiment file of `key = value` lines");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "seed for the randomized suites (overrides the config)");
    app.add_flag("--quiet", quiet, "do not echo the summary");
    app.add_flag("--list-keys", list_keys, "print the accepted configuration keys");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    if (list_keys) {
        for (const auto& doc : documented_keys()) std::cout << doc.key << "\t" << doc.help << '\n';
        return kExitPass;
    }

    ExperimentConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path);
    } catch (const hypstab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    }
    if (seed) config.seed = *seed;
    return run(config, {out_dir, quiet}, std::cerr);
}
