#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freedisc/experiment.hpp"

// exit codes: 0 ok, 2 config error, 3 numeric failure
int main(int argc, char** argv) {
    CLI::App app{"freedisc: non-local finite-difference energies, their limit "
                 "functionals, and desk-scale convergence experiments"};
    app.require_subcommand(1);

    std::string configPath;
    auto* runCmd = app.add_subcommand("run", "run an experiment config");
    runCmd->add_option("config", configPath, "key=value config file")->required();

    auto* listCmd = app.add_subcommand("list", "list built-in signals, fields, families, kernels");

    std::string kernelSpec = "indicator:1.0";
    int dim = 2;
    double weight = 0.0;
    auto* constCmd = app.add_subcommand("constants", "print kernel moments and sphere constants");
    constCmd->add_option("--kernel", kernelSpec, "kernel spec (default indicator:1.0)");
    constCmd->add_option("--n", dim, "dimension (1 or 2)");
    constCmd->add_option("--weight", weight, "power weight w in |xi|^w J(|xi|)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (runCmd->parsed()) {
            freedisc::run_experiment_file(configPath);
        } else if (listCmd->parsed()) {
            std::cout << freedisc::registry_listing();
        } else if (constCmd->parsed()) {
            freedisc::Config cfg;
            cfg.set("kernel", kernelSpec);
            cfg.set("n", std::to_string(dim));
            char wbuf[32];
            std::snprintf(wbuf, sizeof(wbuf), "%.17g", weight);
            cfg.set("kernel_weight", wbuf);
            freedisc::Kernel k = freedisc::make_kernel(cfg);
            std::printf("kernel %s\n", k.describe().c_str());
            for (double p : {0.0, 1.0, 2.0})
                std::printf("c_%g_%d %.12f\n", p, dim, freedisc::c_pn(p, dim));
            for (double a : {1.0, 2.0, 3.0, 4.0})
                std::printf("j_%g %.12f\n", a, freedisc::j_alpha(k, a));
            std::printf("omega %.12f\n", k.mass());
        }
    } catch (const freedisc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const freedisc::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
