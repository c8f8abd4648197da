#ifndef FREEDISC_KERNELS_HPP
#define FREEDISC_KERNELS_HPP

#include <string>
#include <vector>

#include "freedisc/phi_spec.hpp"

namespace freedisc {

// Radial weight eta(xi) = |xi|^w J(|xi|) with a radial profile J truncated at
// radius R (exact support for the indicator profile, tail mass < 1e-12 for
// exponential/gaussian). Owns the moments j_alpha and the mass omega.
class Kernel {
public:
    enum class Profile { Indicator, Exponential, Gaussian, Tabulated };

    static Kernel indicator(double r0, int dim = 2, double weight = 0.0);
    // truncation 0 keeps the default radius (tail mass < 1e-12)
    static Kernel exponential(int dim = 2, double weight = 0.0, double truncation = 0.0);
    static Kernel gaussian(int dim = 2, double weight = 0.0, double truncation = 0.0);
    static Kernel tabulated(std::vector<double> knots, std::vector<double> values,
                            int dim = 2, double weight = 0.0);

    // profile value J(rho)
    double profile(double rho) const;
    // eta(xi) for |xi| = rho, i.e. rho^w J(rho)
    double eta(double rho) const;

    double truncation_radius() const { return radius_; }
    int dim() const { return dim_; }
    double weight() const { return weight_; }

    // omega = ||eta||_{L^1(R^n)} = c_{0,n} * (profile moment of order n + w)
    double mass() const;

    std::string describe() const;

private:
    Kernel() = default;
    Profile profile_ = Profile::Indicator;
    double radius_ = 1.0;
    int dim_ = 2;
    double weight_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> values_;

    friend double j_alpha(const Kernel&, double);
};

// j_alpha = integral_0^inf rho^(alpha-1) J(rho) drho, alpha >= 1. Moments are
// of the profile J alone; the |xi|^w weight enters through the caller's
// choice of alpha.
double j_alpha(const Kernel& k, double alpha);

// c_{p,n} = integral over S^(n-1) of |<v,e1>|^p. n = 1 gives 2 exactly,
// n = 2 integrates |cos|^p over the circle.
double c_pn(double p, int n);

// (S phi)(z) = (1/omega) integral phi(|<z e1, xi/|xi|>|) eta(xi) dxi for a
// radial kernel; factors into (radial moment) x (sphere integral) / omega.
double s_phi(const PhiSpec& phiBar, const Kernel& k, double z);

// The 1-D profile phiBar with integral_{S^(n-1)} phiBar(|<alpha,v>|) = phi(|alpha|);
// supported for power specs only: phiBar = phi / c_{p,n}.
PhiSpec sectionable_lift(const PhiSpec& phi, int n);

} // namespace freedisc

#endif
