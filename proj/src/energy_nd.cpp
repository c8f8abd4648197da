#include "freedisc/energy_nd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freedisc/numeric.hpp"

namespace freedisc {

double StencilQuadrature::total_weight() const {
    KahanSum acc;
    for (const auto& o : offsets) acc.add(o.weight);
    return acc.value();
}

StencilQuadrature StencilQuadrature::build(const Kernel& k, double latticeStep) {
    if (!(latticeStep > 0.0))
        throw std::invalid_argument("stencil: lattice step must be > 0");
    double R = k.truncation_radius();
    StencilQuadrature q;
    q.latticeStep = latticeStep;
    auto range = static_cast<long>(std::floor(R / latticeStep + 1e-12));
    double cell = latticeStep * latticeStep;
    for (long j = -range; j <= range; ++j) {
        for (long i = -range; i <= range; ++i) {
            if (i == 0 && j == 0) continue;
            double x = static_cast<double>(i) * latticeStep;
            double y = static_cast<double>(j) * latticeStep;
            double nrm = std::hypot(x, y);
            if (nrm > R) continue;
            double w = k.eta(nrm) * cell;
            if (w > 0.0) q.offsets.push_back({x, y, nrm, w});
        }
    }
    if (q.offsets.empty()) throw std::domain_error("stencil: no offsets inside the radius");
    return q;
}

namespace {

struct XGrid {
    double x0, y0, hx, hy;
    int nx, ny;
};

XGrid make_grid(const Field2D& u, double margin, const QuadratureNDOptions& opt) {
    double hx = opt.hx > 0.0 ? opt.hx : u.step_x();
    double hy = opt.hy > 0.0 ? opt.hy : u.step_y();
    double xlo = u.window_x_lo() - margin;
    double xhi = u.window_x_hi() + margin;
    double ylo = u.window_y_lo() - margin;
    double yhi = u.window_y_hi() + margin;
    int nx = std::max(1, static_cast<int>(std::ceil((xhi - xlo) / hx)));
    int ny = std::max(1, static_cast<int>(std::ceil((yhi - ylo) / hy)));
    return {xlo, ylo, (xhi - xlo) / nx, (yhi - ylo) / ny, nx, ny};
}

// Shared x-integration core: per-row compensated sums of
// sum_offsets w * phi_{eps|xi|}(|u(x+eps xi)-u(x)|/(eps|xi|)), reduced in
// fixed row order.
double integrate_offsets(const Field2D& u, const PhiEpsFamily& fam, double eps,
                         const std::vector<StencilQuadrature::Offset>& offsets,
                         const XGrid& g) {
    double cellArea = g.hx * g.hy;
    return parallel_row_sum(g.ny, [&](int row) {
        double y = g.y0 + (row + 0.5) * g.hy;
        KahanSum acc;
        for (int col = 0; col < g.nx; ++col) {
            double x = g.x0 + (col + 0.5) * g.hx;
            double ux = u(x, y);
            for (const auto& o : offsets) {
                double rho = eps * o.norm;
                double diff = u(x + eps * o.x, y + eps * o.y) - ux;
                if (diff == 0.0) continue; // phi_eps(0) = 0 for every family here
                acc.add(o.weight * fam.eval(rho, std::abs(diff) / rho));
            }
        }
        return acc.value() * cellArea;
    });
}

} // namespace

double f_eps_nd(const Field2D& u, const PhiEpsFamily& fam, const Kernel& k,
                double eps, const StencilQuadrature& q,
                const QuadratureNDOptions& opt) {
    if (!(eps > 0.0)) throw std::domain_error("f_eps_nd: eps must be > 0");
    if (q.offsets.empty()) throw std::domain_error("f_eps_nd: empty stencil");
    if (fam.eval(1.0, 0.0) > 0.0) return kInfiniteEnergy; // whole-plane integral
    double margin = opt.windowMargin >= 0.0 ? opt.windowMargin : eps * k.truncation_radius();
    XGrid g = make_grid(u, margin, opt);
    return integrate_offsets(u, fam, eps, q.offsets, g);
}

double f_eps_xi(const Field2D& u, const PhiEpsFamily& fam, double eps,
                double xiX, double xiY, const QuadratureNDOptions& opt) {
    if (!(eps > 0.0)) throw std::domain_error("f_eps_xi: eps must be > 0");
    double nrm = std::hypot(xiX, xiY);
    if (!(nrm > 0.0)) throw std::domain_error("f_eps_xi: xi must be nonzero");
    if (fam.eval(1.0, 0.0) > 0.0) return kInfiniteEnergy; // whole-plane integral
    std::vector<StencilQuadrature::Offset> one{{xiX, xiY, nrm, 1.0}};
    double margin = opt.windowMargin >= 0.0 ? opt.windowMargin : eps * nrm;
    XGrid g = make_grid(u, margin, opt);
    return integrate_offsets(u, fam, eps, one, g);
}

AnalyticSignal1D slice(const Field2D& u, double xiX, double xiY, double y) {
    double nrm = std::hypot(xiX, xiY);
    if (!(nrm > 0.0)) throw std::domain_error("slice: xi must be nonzero");
    double dx = xiX / nrm, dy = xiY / nrm;
    double px = dy * y, py = -dx * y; // y * (unit normal of xi)

    // window: projections of the rectangle corners onto the line; outside it
    // the clamped bilinear evaluation is frozen at a corner or fixed edge point
    double tlo = std::numeric_limits<double>::infinity();
    double thi = -tlo;
    for (double cx : {u.window_x_lo(), u.window_x_hi()}) {
        for (double cy : {u.window_y_lo(), u.window_y_hi()}) {
            double t = (cx - px) * dx + (cy - py) * dy;
            tlo = std::min(tlo, t);
            thi = std::max(thi, t);
        }
    }
    auto map = [&u, px, py, dx, dy](double t) { return u(px + t * dx, py + t * dy); };
    return AnalyticSignal1D(map, tlo, thi);
}

double f_eps_vis(const Field2D& u, const PhiEpsFamily& fam, const Kernel& k,
                 double eps, const Rect& omega, const StencilQuadrature& q,
                 const QuadratureNDOptions& opt) {
    if (!(eps > 0.0)) throw std::domain_error("f_eps_vis: eps must be > 0");
    if (!(omega.xhi > omega.xlo) || !(omega.yhi > omega.ylo))
        throw std::domain_error("f_eps_vis: empty rectangle");
    (void)k;
    double hx = opt.hx > 0.0 ? opt.hx : u.step_x();
    double hy = opt.hy > 0.0 ? opt.hy : u.step_y();
    int nx = std::max(1, static_cast<int>(std::ceil((omega.xhi - omega.xlo) / hx)));
    int ny = std::max(1, static_cast<int>(std::ceil((omega.yhi - omega.ylo) / hy)));
    double gx = (omega.xhi - omega.xlo) / nx;
    double gy = (omega.yhi - omega.ylo) / ny;
    double cellArea = gx * gy;
    const double phiZero = fam.eval(1.0, 0.0); // rho-independent for every family
    return parallel_row_sum(ny, [&](int row) {
        double y = omega.ylo + (row + 0.5) * gy;
        KahanSum acc;
        for (int col = 0; col < nx; ++col) {
            double x = omega.xlo + (col + 0.5) * gx;
            double ux = u(x, y);
            for (const auto& o : q.offsets) {
                double tx = x + eps * o.x;
                double ty = y + eps * o.y;
                if (!omega.contains(tx, ty)) continue;
                double rho = eps * o.norm;
                double diff = u(tx, ty) - ux;
                if (diff == 0.0) {
                    if (phiZero > 0.0) acc.add(o.weight * phiZero);
                    continue;
                }
                acc.add(o.weight * fam.eval(rho, std::abs(diff) / rho));
            }
        }
        return acc.value() * cellArea;
    });
}

Field2D mollify(const Field2D& u, const Kernel& k, double delta, double latticeStep) {
    if (!(delta > 0.0)) throw std::domain_error("mollify: delta must be > 0");
    if (k.profile(k.truncation_radius() + 1.0) != 0.0)
        throw std::domain_error("mollify: kernel must be compactly supported");
    double h = latticeStep > 0.0 ? latticeStep : k.truncation_radius() / 8.0;
    double R = k.truncation_radius();
    auto range = static_cast<long>(std::floor(R / h + 1e-12));

    // convolution stencil including the origin cell
    std::vector<StencilQuadrature::Offset> offsets;
    double mass = 0.0;
    for (long j = -range; j <= range; ++j) {
        for (long i = -range; i <= range; ++i) {
            double x = static_cast<double>(i) * h;
            double y = static_cast<double>(j) * h;
            double nrm = std::hypot(x, y);
            if (nrm > R) continue;
            double w = k.eta(nrm) * h * h;
            if (w > 0.0) {
                offsets.push_back({x, y, nrm, w});
                mass += w;
            }
        }
    }
    if (!(mass > 0.0)) throw std::domain_error("mollify: stencil has zero mass");

    Field2D out(u.origin_x(), u.origin_y(), u.step_x(), u.step_y(), u.nx(), u.ny());
    for (int j = 0; j < u.ny(); ++j) {
        double y = u.node_y(j);
        for (int i = 0; i < u.nx(); ++i) {
            double x = u.node_x(i);
            KahanSum acc;
            for (const auto& o : offsets) acc.add(o.weight * u(x + delta * o.x, y + delta * o.y));
            out.at(i, j) = acc.value() / mass;
        }
    }
    return out;
}

} // namespace freedisc
