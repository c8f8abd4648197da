#ifndef FREEDISC_CONFIG_HPP
#define FREEDISC_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freedisc/energy_1d.hpp"
#include "freedisc/field.hpp"
#include "freedisc/kernels.hpp"
#include "freedisc/phi_family.hpp"
#include "freedisc/sbv.hpp"

namespace freedisc {

// malformed configs and unresolved references (CLI exit code 2)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// plain-text key=value configuration; '#' starts a comment, later keys
// override earlier ones, insertion order is preserved for serialization
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const; // throws ConfigError if missing
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer_or(const std::string& key, int fallback) const;
    std::vector<double> number_list(const std::string& key) const; // comma separated

    void set(const std::string& key, const std::string& value);
    std::string serialize() const;

private:
    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
};

// Builders for the `name:arg` grammar of the built-in registry.
PhiSpec make_phi(const std::string& spec);   // power:P
PsiSpec make_psi(const std::string& spec);   // power:Q | constant:C | linear:S
PhiEpsFamily make_family(const Config& cfg); // family=..., phi=, psi=, omega=, inner_grid=
Kernel make_kernel(const Config& cfg);       // kernel=indicator:R|exponential|gaussian,
                                             // kernel_weight=W, n=1|2

// signals: constant:C | heaviside:H | ramp:A | csv:PATH
AnySignal1D make_signal(const std::string& spec);
// the explicit limit descriptor of a registry signal (not available for csv)
Sbv1D signal_descriptor(const std::string& spec);

// fields: constant:C | disk:R | affine:A | csv:PATH | pgm:PATH
// grid_n and grid_span control the sampling of the analytic entries
Field2D make_field(const std::string& spec, int gridN, double gridSpan);
PiecewiseField2D field_descriptor(const std::string& spec, int circleSegments = 64);

// deterministic alphabetical listing of every built-in name
std::string registry_listing();

} // namespace freedisc

#endif
