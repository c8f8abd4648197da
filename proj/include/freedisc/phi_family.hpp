#ifndef FREEDISC_PHI_FAMILY_HPP
#define FREEDISC_PHI_FAMILY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freedisc/numeric.hpp"
#include "freedisc/phi_spec.hpp"

namespace freedisc {

// The pair (phi*, psi*) a family converges to, with an overall 1/scale
// factor: bulk integrand is bulk(r)/scale, jump integrand jump(r)/scale.
// A disengaged optional encodes the +inf branch (e.g. psi* == +inf for the
// pure-power family, phi* == +inf for the root family).
struct LimitIntegrands {
    std::optional<PhiSpec> bulk;
    std::optional<PsiSpec> jump;
    double scale = 1.0;

    // the infinite branches apply for r > 0 only: every family here has
    // phi_eps(0) = 0, so both limit integrands vanish at 0
    double bulk_at(double r) const {
        if (!bulk) return r == 0.0 ? 0.0 : kInfiniteEnergy;
        return (*bulk)(r) / scale;
    }
    double jump_at(double r) const {
        if (r == 0.0) return 0.0;
        return jump ? (*jump)(r) / scale : kInfiniteEnergy;
    }
};

// The eps-indexed integrand family {phi_eps}. Closed-form variants cover the
// worked examples; the constructed variant realizes
//   phi_eps(r) = (1/omega) min{ phi(l) + psi(eps(r-l))/eps : l in [0,r] }
// by a dense grid of innerGrid+1 points on [0,r] plus golden-section
// refinement around the best sample.
class PhiEpsFamily {
public:
    enum class Kind { Constructed, Power, Root, Linear, ArctanMS, Rational32 };

    static PhiEpsFamily constructed(PhiSpec phi, PsiSpec psi, double omega,
                                    int innerGrid = 4096);
    static PhiEpsFamily power(double p);     // phi_eps(r) = r^p
    static PhiEpsFamily root(double p);      // phi_eps(r) = eps^(1/p-1) r^(1/p)
    static PhiEpsFamily linear();            // phi_eps(r) = r
    static PhiEpsFamily arctan_ms();         // phi_eps(r) = arctan(eps r^2)/eps
    static PhiEpsFamily rational32();        // phi_eps(r) = r^2/(sqrt(eps) r^(3/2)+1)

    // phi_eps(r); eps > 0, r >= 0
    double eval(double eps, double r) const;

    // eps * phi_eps(r/eps); eps > 0, r > 0
    double scaled_jump(double eps, double r) const;

    // true for the variants with a smooth r-derivative on (0,inf) usable by
    // the minimizer (arctanMS, power, rational32)
    bool differentiable() const;
    double deriv(double eps, double r) const;

    LimitIntegrands limit_integrands() const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int inner_grid() const { return innerGrid_; }
    double omega() const { return omega_; }
    // p of the power/root variants
    double exponent_p() const { return p_; }

private:
    PhiEpsFamily() = default;

    Kind kind_ = Kind::ArctanMS;
    std::string name_ = "arctanMS";
    double p_ = 2.0;
    double omega_ = 1.0;
    int innerGrid_ = 4096;
    std::optional<PhiSpec> phi_;
    std::optional<PsiSpec> psi_;
};

// lambda(alpha,beta) = min{ beta phi*((alpha-l)/beta) + psi*(l) : l in [0,alpha] }
// with psi*(0) = 0. Same grid+refine scheme as the constructed family.
double lambda_eval(const PhiSpec& phiStar, const PsiSpec& psiStar,
                   double alpha, double beta, int gridPoints = 4096);

// Structured evaluation of
//   Theta(eps,alpha,beta) = min{ sum_i eps phi_eps(x_i/eps) :
//                                sum |x_i| >= alpha, N_eps = [beta/eps] },
// using the two-candidate structure available under (li1)/(li2): either all
// increments equal, or one distinguished increment x1 in [alpha/N, alpha]
// with the remainder split equally. Requires 0 < eps <= beta.
double theta_structured(const PhiEpsFamily& fam, double eps,
                        double alpha, double beta, int scanPoints = 1024);

// Exhaustive oracle for Theta: minimizes over the simplex sum x_i = alpha
// discretized with gridPerVariable points per variable, followed by a local
// zoom. Guarded to N_eps <= 4.
double theta_bruteforce(const PhiEpsFamily& fam, double eps,
                        double alpha, double beta, int gridPerVariable = 64);

// mu(r) = min{ f(l) + g(r-l) : l in [0,r] } sampled on [0,rmax]: the
// inf-convolution envelope, convex up to the switch point rbar and concave
// after it.
struct EnvelopeReport {
    double rbar = 0.0;
    std::vector<double> r;
    std::vector<double> mu;
    bool convexOkBelow = false;
    bool concaveOkAbove = false;
    bool nonDecreasing = false;
};

EnvelopeReport mu_envelope(const PhiSpec& f, const PsiSpec& g,
                           double rmax, int samples, int innerGrid = 4096);

// Sampled verification of the hypotheses (li1), (li2), (Est), (Cpt1), (Cpt2).
struct SamplingPlan {
    std::vector<double> epsValues;
    std::vector<double> rValues;       // arguments for li1/li2 (scaled by 1/eps internally for Cpt1)
    std::vector<double> aValues;       // A for (Est)/(Cpt2)
    std::vector<double> sValues;       // S for (Est), B for (Cpt2)
    std::vector<double> mValues;       // M for (Cpt1)
    std::vector<int> kValues;          // k for (Cpt2)
    std::vector<double> hCandidates;   // candidate H_M slopes for (Cpt1)
    double tolerance = 1e-9;

    static SamplingPlan standard();
};

struct HypothesisCheck {
    bool pass = false;
    std::string witness; // violating tuple when pass == false
};

struct Cpt1Fit {
    double M = 0.0;
    double H = 0.0;
    double K = 0.0;
};

struct HypothesisReport {
    HypothesisCheck li1, li2, est, cpt1, cpt2;
    std::vector<Cpt1Fit> cpt1Fits; // one per M that admitted a candidate
    bool all_pass() const {
        return li1.pass && li2.pass && est.pass && cpt1.pass && cpt2.pass;
    }
};

HypothesisReport probe_hypotheses(const PhiEpsFamily& fam, const SamplingPlan& plan);

} // namespace freedisc

#endif
