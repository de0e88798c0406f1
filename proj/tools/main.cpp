// Experiment driver: sweep, refine, verify and basis-dump subcommands over a
// shared key-value config. CLI flags override config keys; the
// CHEBPROJ_OUT_DIR environment variable overrides the output directory last.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chebproj/config.hpp"
#include "chebproj/harness.hpp"
#include "chebproj/verify.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::string prefix;
    std::string seed;
    std::string trials;
    std::string epsilon;
    std::string preset;
    bool timing = false;
};

void add_common(CLI::App* app, CommonFlags& flags) {
    app->add_option("-c,--config", flags.config_path, "Config file (key = value with [sections])");
    app->add_option("--set", flags.overrides,
                    "Override a config key, e.g. --set mesh.trials=5 (repeatable)");
    app->add_option("-o,--out", flags.out_dir, "Output directory (output.dir)");
    app->add_option("--prefix", flags.prefix, "Output file prefix (output.prefix)");
    app->add_option("--seed", flags.seed, "Base seed (mesh.seed)");
    app->add_option("--trials", flags.trials, "Trials per cell (mesh.trials)");
    app->add_option("--epsilon", flags.epsilon, "Refinement target (refine.epsilon)");
    app->add_option("--preset", flags.preset, "Weight preset (space.preset)");
    app->add_flag("--timing", flags.timing, "Emit wall times (output.timing)");
}

chebproj::ExperimentConfig resolve(const CommonFlags& flags) {
    chebproj::Config cfg = flags.config_path.empty()
                               ? chebproj::Config()
                               : chebproj::Config::from_file(flags.config_path);
    for (const std::string& kv : flags.overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got: " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!flags.out_dir.empty()) cfg.set("output.dir", flags.out_dir);
    if (!flags.prefix.empty()) cfg.set("output.prefix", flags.prefix);
    if (!flags.seed.empty()) cfg.set("mesh.seed", flags.seed);
    if (!flags.trials.empty()) cfg.set("mesh.trials", flags.trials);
    if (!flags.epsilon.empty()) cfg.set("refine.epsilon", flags.epsilon);
    if (!flags.preset.empty()) cfg.set("space.preset", flags.preset);
    if (flags.timing) cfg.set("output.timing", "true");
    return chebproj::ExperimentConfig::from_config(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshevian spline projector experiments"};
    app.require_subcommand(1);

    CommonFlags sweep_flags, refine_flags, verify_flags, dump_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "Operator-norm sweep over the mesh grid");
    add_common(sweep, sweep_flags);
    CLI::App* refine =
        app.add_subcommand("refine", "Midpoint-insertion refinement experiment");
    add_common(refine, refine_flags);
    CLI::App* verify = app.add_subcommand("verify", "Run every library invariant");
    add_common(verify, verify_flags);
    CLI::App* dump =
        app.add_subcommand("basis-dump", "Sample basis, kernel and Lebesgue values");
    add_common(dump, dump_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return chebproj::run_norm_sweep(resolve(sweep_flags), std::cout);
        if (refine->parsed())
            return chebproj::run_refinement_experiment(resolve(refine_flags), std::cout);
        if (verify->parsed())
            return chebproj::run_verify_suite(resolve(verify_flags), std::cout);
        if (dump->parsed()) return chebproj::run_basis_dump(resolve(dump_flags), std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
