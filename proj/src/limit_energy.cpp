#include "freedisc/limit_energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "freedisc/numeric.hpp"

namespace freedisc {

namespace {

double bulk_integral_1d(const Sbv1D& u, const std::function<double(double)>& f) {
    KahanSum acc;
    const auto& knots = u.knots();
    const auto& slopes = u.slopes();
    for (size_t i = 0; i < slopes.size(); ++i) {
        double v = f(std::abs(slopes[i]));
        if (is_infinite(v)) return kInfiniteEnergy;
        acc.add((knots[i + 1] - knots[i]) * v);
    }
    return acc.value();
}

double jump_sum_1d(const Sbv1D& u, const std::function<double(double)>& g) {
    KahanSum acc;
    for (const auto& j : u.jumps()) {
        double v = g(j.height());
        if (is_infinite(v)) return kInfiniteEnergy;
        acc.add(v);
    }
    return acc.value();
}

double bulk_integral_2d(const PiecewiseField2D& u, const std::function<double(double)>& f,
                        const LimitQuad2DOptions& opt) {
    double hx = (u.xhi - u.xlo) / opt.bulkNx;
    double hy = (u.yhi - u.ylo) / opt.bulkNy;
    return parallel_row_sum(opt.bulkNy, [&](int row) {
        double y = u.ylo + (row + 0.5) * hy;
        KahanSum acc;
        for (int col = 0; col < opt.bulkNx; ++col) {
            double x = u.xlo + (col + 0.5) * hx;
            auto g = u.gradient(x, y);
            acc.add(f(std::hypot(g[0], g[1])));
        }
        return acc.value() * hx * hy;
    });
}

double line_integral_2d(const PiecewiseField2D& u, const std::function<double(double)>& g,
                        const LimitQuad2DOptions& opt) {
    if (u.polyline.empty()) return 0.0;
    KahanSum acc;
    for (size_t i = 1; i < u.polyline.size(); ++i) {
        double ax = u.polyline[i - 1][0], ay = u.polyline[i - 1][1];
        double bx = u.polyline[i][0], by = u.polyline[i][1];
        double len = std::hypot(bx - ax, by - ay);
        if (len == 0.0) continue;
        int m = opt.lineSamplesPerSegment;
        double seg = 0.0;
        for (int s = 0; s < m; ++s) {
            double t = (s + 0.5) / m;
            double v = g(u.amplitude(ax + t * (bx - ax), ay + t * (by - ay)));
            if (is_infinite(v)) return kInfiniteEnergy;
            seg += v;
        }
        acc.add(seg * len / m);
    }
    return acc.value();
}

} // namespace

double limit_energy_1d(const Sbv1D& u, const PhiSpec& phi, const PsiSpec& psi) {
    double bulk = bulk_integral_1d(u, [&](double s) { return phi(s); });
    if (is_infinite(bulk)) return kInfiniteEnergy;
    double jump = jump_sum_1d(u, [&](double h) { return psi(h); });
    if (is_infinite(jump)) return kInfiniteEnergy;
    return bulk + jump;
}

double limit_energy_2d(const PiecewiseField2D& u, const PhiSpec& phiIso,
                       const PsiSpec& psi, const LimitQuad2DOptions& opt) {
    u.validate();
    double bulk = bulk_integral_2d(u, [&](double s) { return phiIso(s); }, opt);
    if (is_infinite(bulk)) return kInfiniteEnergy;
    double jump = line_integral_2d(u, [&](double h) { return psi(h); }, opt);
    if (is_infinite(jump)) return kInfiniteEnergy;
    return bulk + jump;
}

double total_variation_1d(const Sbv1D& u) {
    double bulk = bulk_integral_1d(u, [](double s) { return s; });
    double jump = jump_sum_1d(u, [](double h) { return h; });
    return bulk + jump;
}

double target_limit(const PhiEpsFamily& fam, const Kernel& k, int n,
                    const UDescriptor& u, const LimitQuad2DOptions& opt) {
    if (n != k.dim())
        throw std::invalid_argument("target_limit: n must match the kernel dimension");
    bool is1d = std::holds_alternative<Sbv1D>(u);
    if (is1d && n != 1)
        throw std::invalid_argument("target_limit: 1-D descriptor needs n = 1");
    if (!is1d && n != 2)
        throw std::invalid_argument("target_limit: 2-D descriptor needs n = 2");

    auto bulk = [&](const std::function<double(double)>& f) {
        return is1d ? bulk_integral_1d(std::get<Sbv1D>(u), f)
                    : bulk_integral_2d(std::get<PiecewiseField2D>(u), f, opt);
    };
    auto jump = [&](const std::function<double(double)>& g) {
        return is1d ? jump_sum_1d(std::get<Sbv1D>(u), g)
                    : line_integral_2d(std::get<PiecewiseField2D>(u), g, opt);
    };
    auto hasJumps = [&] {
        return is1d ? !std::get<Sbv1D>(u).jumps().empty()
                    : !std::get<PiecewiseField2D>(u).polyline.empty();
    };
    auto jumpMeasure = [&] { // H^{n-1}(S_u): count in 1-D, length in 2-D
        if (is1d) return static_cast<double>(std::get<Sbv1D>(u).jumps().size());
        return std::get<PiecewiseField2D>(u).curve_length();
    };

    switch (fam.kind()) {
        case PhiEpsFamily::Kind::Power: {
            double p = fam.exponent_p();
            if (hasJumps()) return kInfiniteEnergy;
            return c_pn(p, n) * j_alpha(k, p + n) * bulk([p](double s) { return std::pow(s, p); });
        }
        case PhiEpsFamily::Kind::Root: {
            double invp = 1.0 / fam.exponent_p();
            if (bulk([](double s) { return s; }) > 0.0) return kInfiniteEnergy;
            double lam = c_pn(0.0, n) * j_alpha(k, n + invp);
            return lam * jump([invp](double h) { return std::pow(h, invp); });
        }
        case PhiEpsFamily::Kind::Linear: {
            double lam = c_pn(1.0, n) * j_alpha(k, n + 1.0);
            return lam * (bulk([](double s) { return s; }) + jump([](double h) { return h; }));
        }
        case PhiEpsFamily::Kind::ArctanMS: {
            double lam = c_pn(2.0, n) * j_alpha(k, n + 1.0);
            double mu = (std::numbers::pi / 2.0) * c_pn(0.0, n) * j_alpha(k, n + 1.0);
            return lam * bulk([](double s) { return s * s; }) + mu * jumpMeasure();
        }
        case PhiEpsFamily::Kind::Rational32: {
            double lam = c_pn(2.0, n) * j_alpha(k, n + 1.0);
            double mu = c_pn(0.0, n) * j_alpha(k, n + 1.0);
            return lam * bulk([](double s) { return s * s; }) +
                   mu * jump([](double h) { return std::sqrt(h); });
        }
        case PhiEpsFamily::Kind::Constructed:
            throw std::invalid_argument("target_limit: no closed-form target for constructed families");
    }
    throw std::invalid_argument("target_limit: unknown family");
}

} // namespace freedisc
