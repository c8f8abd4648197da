#ifndef FREEDISC_ENERGY_ND_HPP
#define FREEDISC_ENERGY_ND_HPP

#include <array>
#include <vector>

#include "freedisc/field.hpp"
#include "freedisc/kernels.hpp"
#include "freedisc/phi_family.hpp"
#include "freedisc/signal.hpp"

namespace freedisc {

// Lattice discretization of the xi-integral: offsets xi with 0 < |xi| <= R
// and weights eta(xi) h^2. The xi = 0 node is dropped (the integrand is a 0/0
// there and the cell weight vanishes with h).
struct StencilQuadrature {
    struct Offset {
        double x, y;
        double norm;
        double weight;
    };
    double latticeStep = 0.0;
    std::vector<Offset> offsets;

    double total_weight() const;

    static StencilQuadrature build(const Kernel& k, double latticeStep);
};

struct QuadratureNDOptions {
    double hx = 0.0; // x-integration step; 0 uses the field step
    double hy = 0.0;
    // window enlargement around the sampled rectangle; < 0 uses eps*R for
    // f_eps_nd and eps*|xi| for f_eps_xi. Passing the same margin to both
    // makes their grids coincide, so the definitional identity
    // f_eps_nd = sum of weight * f_eps_xi holds to summation order.
    double windowMargin = -1.0;
};

// F_eps(u, R^n) over the plane: double sum over x-cells (enlarged by eps*R
// around the sampled rectangle) and stencil offsets.
double f_eps_nd(const Field2D& u, const PhiEpsFamily& fam, const Kernel& k,
                double eps, const StencilQuadrature& q,
                const QuadratureNDOptions& opt = {});

// Directional functional F_{eps,xi}: single-offset x-integral.
double f_eps_xi(const Field2D& u, const PhiEpsFamily& fam, double eps,
                double xiX, double xiY, const QuadratureNDOptions& opt = {});

// 1-D restriction u_{xi,y}(t) = u(y nhat + t xi/|xi|), nhat the unit normal
// of xi. The active window covers the projections of the rectangle corners;
// beyond it the clamped evaluation is constant.
AnalyticSignal1D slice(const Field2D& u, double xiX, double xiY, double y);

// Variant restricted to pairs inside an axis-aligned rectangle (convex, so
// vis(Omega) = Omega x Omega): both x and x+eps*xi must lie in Omega.
struct Rect {
    double xlo, ylo, xhi, yhi;
    bool contains(double x, double y) const {
        return x >= xlo && x <= xhi && y >= ylo && y <= yhi;
    }
};

double f_eps_vis(const Field2D& u, const PhiEpsFamily& fam, const Kernel& k,
                 double eps, const Rect& omega, const StencilQuadrature& q,
                 const QuadratureNDOptions& opt = {});

// C^delta u(x) = (1/omega0) integral u(x + delta xi) eta(xi) dxi, sampled on
// u's grid. Normalized by the discrete stencil mass so constants are
// reproduced exactly.
Field2D mollify(const Field2D& u, const Kernel& k, double delta,
                double latticeStep = 0.0);

} // namespace freedisc

#endif
