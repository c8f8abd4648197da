#include "freedisc/energy_1d.hpp"

#include <cmath>
#include <stdexcept>

#include "freedisc/numeric.hpp"

namespace freedisc {

namespace {

double eval_signal(const AnySignal1D& u, double x) {
    return std::visit([x](const auto& s) { return s(x); }, u);
}

std::pair<double, double> window_of(const AnySignal1D& u) {
    return std::visit(
        [](const auto& s) { return std::pair{s.window_lo(), s.window_hi()}; }, u);
}

double default_hx(const AnySignal1D& u, double eps) {
    if (std::holds_alternative<Signal1D>(u))
        return std::get<Signal1D>(u).step() / 4.0;
    return eps / 256.0;
}

} // namespace

double f_eps_1d(const AnySignal1D& u, const PhiEpsFamily& fam, double eps,
                const Domain1D& omega, const Quadrature1DOptions& opt) {
    if (!(eps > 0.0)) throw std::domain_error("f_eps_1d: eps must be > 0");

    double lo, hi;
    if (omega.bounds) {
        lo = omega.bounds->first;
        hi = omega.bounds->second;
        if (!(hi > lo)) throw std::domain_error("f_eps_1d: empty interval");
    } else {
        auto [wlo, whi] = window_of(u);
        // outside [wlo-eps, whi] both u(x) and u(x+eps) sit in a constant
        // tail, so the integrand is phi_eps(0) there
        if (fam.eval(eps, 0.0) > 0.0) return kInfiniteEnergy;
        lo = wlo - eps;
        hi = whi;
        if (!(hi > lo)) hi = lo + eps;
    }

    double hx = opt.hx > 0.0 ? opt.hx : default_hx(u, eps);
    auto n = static_cast<long>(std::ceil((hi - lo) / hx));
    if (n < 1) n = 1;
    double h = (hi - lo) / static_cast<double>(n);

    KahanSum acc;
    double prevR = -1.0;
    double prevVal = 0.0;
    for (long i = 0; i < n; ++i) {
        double x = lo + (static_cast<double>(i) + 0.5) * h;
        double r = std::abs(eval_signal(u, x + eps) - eval_signal(u, x)) / eps;
        // difference quotients are piecewise constant on long stretches;
        // reusing the previous value avoids re-running the inner minimization
        double v = (r == prevR) ? prevVal : fam.eval(eps, r);
        prevR = r;
        prevVal = v;
        if (is_infinite(v)) return kInfiniteEnergy;
        acc.add(v * h);
    }
    return acc.value();
}

SweepTable f_eps_1d_sweep(const AnySignal1D& u, const PhiEpsFamily& fam,
                          const std::vector<double>& epsList,
                          const Domain1D& omega, const Quadrature1DOptions& opt) {
    if (epsList.empty()) throw std::domain_error("f_eps_1d_sweep: empty eps list");
    SweepTable table;
    table.rows.reserve(epsList.size());
    for (double eps : epsList) table.rows.push_back({eps, f_eps_1d(u, fam, eps, omega, opt)});

    table.nonIncreasing = true;
    table.nonDecreasing = true;
    for (size_t i = 1; i < table.rows.size(); ++i) {
        double prev = table.rows[i - 1].value;
        double cur = table.rows[i].value;
        double tol = 1e-12 * (1.0 + std::abs(prev));
        if (cur > prev + tol) table.nonIncreasing = false;
        if (cur < prev - tol) table.nonDecreasing = false;
    }
    return table;
}

} // namespace freedisc
