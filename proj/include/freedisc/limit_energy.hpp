#ifndef FREEDISC_LIMIT_ENERGY_HPP
#define FREEDISC_LIMIT_ENERGY_HPP

#include <variant>

#include "freedisc/kernels.hpp"
#include "freedisc/phi_family.hpp"
#include "freedisc/phi_spec.hpp"
#include "freedisc/sbv.hpp"

namespace freedisc {

// sum over pieces of length * phi(|slope|) plus sum over jumps of
// psi(|u+ - u-|); exact on the explicit representation.
double limit_energy_1d(const Sbv1D& u, const PhiSpec& phi, const PsiSpec& psi);

struct LimitQuad2DOptions {
    int bulkNx = 256;
    int bulkNy = 256;
    int lineSamplesPerSegment = 8;
};

// 2-D quadrature of phi(|grad u|) over the rectangle plus arc-length midpoint
// quadrature of psi(amplitude) along the polyline.
double limit_energy_2d(const PiecewiseField2D& u, const PhiSpec& phiIso,
                       const PsiSpec& psi, const LimitQuad2DOptions& opt = {});

// |Du| of the representation: sum length*|slope| + sum |jump|.
double total_variation_1d(const Sbv1D& u);

using UDescriptor = std::variant<Sbv1D, PiecewiseField2D>;

// Assembles the limit value of one of the closed-form families (power, root,
// linear, arctanMS, rational32) on an explicit descriptor, using the kernel
// moments j_alpha and the sphere constants c_{p,n}. Returns the infinite
// sentinel when the descriptor leaves the family's finiteness domain (jumps
// for the power family, nonzero gradient for the root family).
double target_limit(const PhiEpsFamily& fam, const Kernel& k, int n,
                    const UDescriptor& u, const LimitQuad2DOptions& opt = {});

} // namespace freedisc

#endif
