#ifndef FREEDISC_ENERGY_1D_HPP
#define FREEDISC_ENERGY_1D_HPP

#include <optional>
#include <variant>
#include <vector>

#include "freedisc/phi_family.hpp"
#include "freedisc/signal.hpp"

namespace freedisc {

// Integration domain for the 1-D functionals: a bounded interval, or the
// whole line (which requires u constant outside a bounded window).
struct Domain1D {
    static Domain1D whole_line() { return {}; }
    static Domain1D interval(double lo, double hi) {
        Domain1D d;
        d.bounds = std::pair{lo, hi};
        return d;
    }
    std::optional<std::pair<double, double>> bounds;
};

struct Quadrature1DOptions {
    // midpoint-rule step; 0 picks the default (sample step / 4 for sampled
    // signals, eps/256 for analytic ones)
    double hx = 0.0;
};

using AnySignal1D = std::variant<Signal1D, AnalyticSignal1D>;

// F_eps(u, Omega) = integral over Omega of phi_eps(|u(x+eps)-u(x)|/eps) dx,
// composite midpoint rule. Whole-line domains integrate over [lo-eps, hi]
// where the difference can be nonzero.
double f_eps_1d(const AnySignal1D& u, const PhiEpsFamily& fam, double eps,
                const Domain1D& omega = Domain1D::whole_line(),
                const Quadrature1DOptions& opt = {});

struct SweepRow {
    double eps;
    double value;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    bool nonIncreasing = false; // value non-increasing along decreasing eps
    bool nonDecreasing = false;
};

// Applies f_eps_1d per eps and attaches monotonicity diagnostics.
SweepTable f_eps_1d_sweep(const AnySignal1D& u, const PhiEpsFamily& fam,
                          const std::vector<double>& epsList,
                          const Domain1D& omega = Domain1D::whole_line(),
                          const Quadrature1DOptions& opt = {});

} // namespace freedisc

#endif
