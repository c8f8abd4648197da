#include "freedisc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace freedisc {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return Quad::integrate(f, a, b, 15, 1e-13);
}

void check_dim(int n) {
    if (n != 1 && n != 2) throw std::invalid_argument("kernel: dimension must be 1 or 2");
}

double table_value(const std::vector<double>& knots, const std::vector<double>& values, double rho) {
    if (rho <= knots.front()) return values.front();
    if (rho >= knots.back()) return 0.0;
    auto it = std::upper_bound(knots.begin(), knots.end(), rho);
    size_t i = static_cast<size_t>(it - knots.begin());
    double t = (rho - knots[i - 1]) / (knots[i] - knots[i - 1]);
    return values[i - 1] + t * (values[i] - values[i - 1]);
}

} // namespace

Kernel Kernel::indicator(double r0, int dim, double weight) {
    if (!(r0 > 0.0)) throw std::invalid_argument("indicator kernel: radius must be > 0");
    check_dim(dim);
    Kernel k;
    k.profile_ = Profile::Indicator;
    k.radius_ = r0;
    k.dim_ = dim;
    k.weight_ = weight;
    return k;
}

Kernel Kernel::exponential(int dim, double weight, double truncation) {
    check_dim(dim);
    Kernel k;
    k.profile_ = Profile::Exponential;
    // exp(-60) ~ 9e-27: tail mass below 1e-12 for every moment used here
    k.radius_ = truncation > 0.0 ? truncation : 60.0;
    k.dim_ = dim;
    k.weight_ = weight;
    return k;
}

Kernel Kernel::gaussian(int dim, double weight, double truncation) {
    check_dim(dim);
    Kernel k;
    k.profile_ = Profile::Gaussian;
    k.radius_ = truncation > 0.0 ? truncation : 10.0; // exp(-100): tail far below 1e-12
    k.dim_ = dim;
    k.weight_ = weight;
    return k;
}

Kernel Kernel::tabulated(std::vector<double> knots, std::vector<double> values,
                         int dim, double weight) {
    check_dim(dim);
    if (knots.size() < 2 || knots.size() != values.size())
        throw std::invalid_argument("tabulated kernel: need >= 2 matching knots/values");
    for (size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1]))
            throw std::invalid_argument("tabulated kernel: knots must be increasing");
    bool nonzero = false;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("tabulated kernel: J must be >= 0");
        if (v > 0.0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("tabulated kernel: J must not vanish identically");
    Kernel k;
    k.profile_ = Profile::Tabulated;
    k.radius_ = knots.back();
    k.dim_ = dim;
    k.weight_ = weight;
    k.knots_ = std::move(knots);
    k.values_ = std::move(values);
    return k;
}

double Kernel::profile(double rho) const {
    if (rho < 0.0) throw std::domain_error("kernel profile: rho must be >= 0");
    switch (profile_) {
        case Profile::Indicator: return rho <= radius_ ? 1.0 : 0.0;
        case Profile::Exponential: return rho <= radius_ ? std::exp(-rho) : 0.0;
        case Profile::Gaussian: return rho <= radius_ ? std::exp(-rho * rho) : 0.0;
        case Profile::Tabulated: return table_value(knots_, values_, rho);
    }
    return 0.0;
}

double Kernel::eta(double rho) const {
    double j = profile(rho);
    if (j == 0.0) return 0.0;
    return (weight_ == 0.0 ? 1.0 : std::pow(rho, weight_)) * j;
}

double Kernel::mass() const {
    return c_pn(0.0, dim_) * j_alpha(*this, dim_ + weight_);
}

std::string Kernel::describe() const {
    std::ostringstream os;
    switch (profile_) {
        case Profile::Indicator: os << "indicator:" << radius_; break;
        case Profile::Exponential: os << "exponential"; break;
        case Profile::Gaussian: os << "gaussian"; break;
        case Profile::Tabulated: os << "tabulated[" << knots_.size() << "]"; break;
    }
    if (weight_ != 0.0) os << " weight=" << weight_;
    os << " n=" << dim_;
    return os.str();
}

double j_alpha(const Kernel& k, double alpha) {
    if (alpha < 1.0) throw std::domain_error("j_alpha: alpha must be >= 1");
    auto f = [&](double rho) { return std::pow(rho, alpha - 1.0) * k.profile(rho); };
    if (k.profile_ == Kernel::Profile::Tabulated) {
        // piecewise-linear profile: integrate segment by segment
        double total = 0.0;
        for (size_t i = 1; i < k.knots_.size(); ++i)
            total += integrate(f, k.knots_[i - 1], k.knots_[i]);
        return total;
    }
    return integrate(f, 0.0, k.truncation_radius());
}

double c_pn(double p, int n) {
    if (p < 0.0) throw std::domain_error("c_pn: p must be >= 0");
    check_dim(n);
    if (n == 1) return 2.0; // S^0 = {-1,+1}, |<v,e1>|^p = 1 at both points
    auto f = [p](double t) { return std::pow(std::cos(t), p); };
    return 4.0 * integrate(f, 0.0, std::numbers::pi / 2.0);
}

double s_phi(const PhiSpec& phiBar, const Kernel& k, double z) {
    if (z < 0.0) throw std::domain_error("s_phi: z must be >= 0");
    int n = k.dim();
    double moment = j_alpha(k, n + k.weight());
    double sphere;
    if (n == 1) {
        sphere = 2.0 * phiBar(z);
    } else {
        auto f = [&](double t) { return phiBar(z * std::abs(std::cos(t))); };
        sphere = 4.0 * integrate(f, 0.0, std::numbers::pi / 2.0);
    }
    return moment * sphere / k.mass();
}

PhiSpec sectionable_lift(const PhiSpec& phi, int n) {
    check_dim(n);
    if (!phi.is_power())
        throw std::runtime_error("sectionable_lift: only power specs are supported");
    double p = phi.exponent();
    return PhiSpec::power(p, phi.scale() / c_pn(p, n));
}

} // namespace freedisc
