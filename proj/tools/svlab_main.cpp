// svlab: run one verification suite and write its report files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "svlab/experiment.hpp"

int main(int argc, char** argv) {
    using namespace svlab;

    std::string commands;
    for (Command c : all_commands()) commands += "  " + std::string(to_string(c)) + "\n";

    CLI::App app{"Shift-plus-Volterra operator laboratory.\n\nCommands:\n" + commands};
    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::size_t order = 0;
    double tol = 0.0;
    app.add_option("command", command, "Suite to run (overrides the config's command)");
    app.add_option("--config", config_path, "JSON experiment config");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized suites");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory (env SVLAB_OUT if unset)");
    auto* order_opt = app.add_option("--order", order, "Truncation order");
    auto* tol_opt = app.add_option("--tol", tol, "Pass tolerance for invariance verdicts");
    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot read config " << config_path << "\n";
                return 2;
            }
            cfg = json::parse(in).get<ExperimentConfig>();
        } else if (command.empty()) {
            std::cerr << app.help();
            return 2;
        }
        if (!command.empty()) cfg.command = command_from_string(command);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (const char* env = std::getenv("SVLAB_OUT"); env != nullptr && !*out_opt) cfg.out_dir = env;
    if (*out_opt) cfg.out_dir = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (*tol_opt) cfg.pass_tol = tol;
    if (*order_opt) {
        cfg.order = order;
        cfg.orders = {order};
        for (auto& s : cfg.ideals) s.order = order;
    }

    const RunResult res = run(cfg);
    for (const auto& f : res.files) std::cout << f.string() << "\n";
    std::cerr << to_string(cfg.command) << ": " << res.message << " (exit " << res.exit_code << ")\n";
    return res.exit_code;
}
