#ifndef FREEDISC_EXPERIMENT_HPP
#define FREEDISC_EXPERIMENT_HPP

#include <string>

#include "freedisc/config.hpp"

namespace freedisc {

inline constexpr const char* kToolVersion = "0.1.0";

// NaN or divergence inside an experiment (CLI exit code 3)
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Runs the experiment described by the config and writes results.csv,
// meta.txt and (for sweeps) summary.txt into the config's `out` directory.
// Files are written atomically (temp + rename). Throws ConfigError for
// unresolved references and NumericError for NaNs.
void run_experiment(const Config& cfg);
void run_experiment_file(const std::string& configPath);

} // namespace freedisc

#endif
