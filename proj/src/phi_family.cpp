#include "freedisc/phi_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace freedisc {

namespace {

std::string tuple_witness(const char* fmt, double a, double b, double c, double d = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
    return buf;
}

long floor_ratio(double beta, double eps) {
    // [beta/eps] with a guard against 49.999999999999993-style rounding
    double q = beta / eps;
    return static_cast<long>(std::floor(q * (1.0 + 4e-15)));
}

} // namespace

PhiEpsFamily PhiEpsFamily::constructed(PhiSpec phi, PsiSpec psi, double omega, int innerGrid) {
    if (!(omega > 0.0)) throw std::invalid_argument("constructed family: omega must be > 0");
    if (innerGrid < 8) throw std::invalid_argument("constructed family: inner grid too small");
    PhiEpsFamily f;
    f.kind_ = Kind::Constructed;
    f.name_ = "constructed(" + phi.describe() + "," + psi.describe() + ")";
    f.phi_ = std::move(phi);
    f.psi_ = std::move(psi);
    f.omega_ = omega;
    f.innerGrid_ = innerGrid;
    return f;
}

PhiEpsFamily PhiEpsFamily::power(double p) {
    if (p < 1.0) throw std::invalid_argument("power family: p must be >= 1");
    PhiEpsFamily f;
    f.kind_ = Kind::Power;
    f.name_ = "power:" + std::to_string(p);
    f.p_ = p;
    return f;
}

PhiEpsFamily PhiEpsFamily::root(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("root family: p must be > 1");
    PhiEpsFamily f;
    f.kind_ = Kind::Root;
    f.name_ = "root:" + std::to_string(p);
    f.p_ = p;
    return f;
}

PhiEpsFamily PhiEpsFamily::linear() {
    PhiEpsFamily f;
    f.kind_ = Kind::Linear;
    f.name_ = "linear";
    return f;
}

PhiEpsFamily PhiEpsFamily::arctan_ms() {
    PhiEpsFamily f;
    f.kind_ = Kind::ArctanMS;
    f.name_ = "arctanMS";
    return f;
}

PhiEpsFamily PhiEpsFamily::rational32() {
    PhiEpsFamily f;
    f.kind_ = Kind::Rational32;
    f.name_ = "rational32";
    return f;
}

double PhiEpsFamily::eval(double eps, double r) const {
    if (!(eps > 0.0)) throw std::domain_error("phi_eps: eps must be > 0");
    if (r < 0.0) throw std::domain_error("phi_eps: r must be >= 0");
    switch (kind_) {
        case Kind::Power:
            return std::pow(r, p_);
        case Kind::Root:
            return std::pow(eps, 1.0 / p_ - 1.0) * std::pow(r, 1.0 / p_);
        case Kind::Linear:
            return r;
        case Kind::ArctanMS:
            return std::atan(eps * r * r) / eps;
        case Kind::Rational32:
            return r * r / (std::sqrt(eps) * std::pow(r, 1.5) + 1.0);
        case Kind::Constructed: {
            const PhiSpec& phi = *phi_;
            const PsiSpec& psi = *psi_;
            if (r == 0.0) return phi(0.0) / omega_;
            auto objective = [&](double l) { return phi(l) + psi(eps * (r - l)) / eps; };
            return grid_refine_min(objective, 0.0, r, innerGrid_).value / omega_;
        }
    }
    return 0.0;
}

double PhiEpsFamily::scaled_jump(double eps, double r) const {
    if (!(r > 0.0)) throw std::domain_error("scaled_jump: r must be > 0");
    return eps * eval(eps, r / eps);
}

bool PhiEpsFamily::differentiable() const {
    return kind_ == Kind::ArctanMS || kind_ == Kind::Power || kind_ == Kind::Rational32;
}

double PhiEpsFamily::deriv(double eps, double r) const {
    if (!(eps > 0.0)) throw std::domain_error("phi_eps deriv: eps must be > 0");
    if (r < 0.0) throw std::domain_error("phi_eps deriv: r must be >= 0");
    switch (kind_) {
        case Kind::ArctanMS: {
            double t = eps * r * r;
            return 2.0 * r / (1.0 + t * t);
        }
        case Kind::Power:
            if (p_ == 1.0) return 1.0;
            return p_ * std::pow(r, p_ - 1.0);
        case Kind::Rational32: {
            double g = std::sqrt(eps) * std::pow(r, 1.5) + 1.0;
            return (2.0 * r + 0.5 * std::sqrt(eps) * std::pow(r, 2.5)) / (g * g);
        }
        default:
            throw std::runtime_error("phi_eps deriv: family is not differentiable");
    }
}

LimitIntegrands PhiEpsFamily::limit_integrands() const {
    switch (kind_) {
        case Kind::Constructed:
            return {phi_, psi_, omega_};
        case Kind::Power:
            return {PhiSpec::power(p_), std::nullopt, 1.0};
        case Kind::Root:
            return {std::nullopt, PsiSpec::power(1.0 / p_), 1.0};
        case Kind::Linear:
            return {PhiSpec::power(1.0), PsiSpec::linear(1.0), 1.0};
        case Kind::ArctanMS:
            return {PhiSpec::power(2.0), PsiSpec::constant(std::numbers::pi / 2.0), 1.0};
        case Kind::Rational32:
            return {PhiSpec::power(2.0), PsiSpec::power(0.5), 1.0};
    }
    return {};
}

double lambda_eval(const PhiSpec& phiStar, const PsiSpec& psiStar,
                   double alpha, double beta, int gridPoints) {
    if (!(beta > 0.0)) throw std::domain_error("lambda: beta must be > 0");
    if (alpha < 0.0) throw std::domain_error("lambda: alpha must be >= 0");
    if (alpha == 0.0) return beta * phiStar(0.0);
    auto objective = [&](double l) {
        return beta * phiStar((alpha - l) / beta) + psiStar(l);
    };
    return grid_refine_min(objective, 0.0, alpha, gridPoints).value;
}

double theta_structured(const PhiEpsFamily& fam, double eps,
                        double alpha, double beta, int scanPoints) {
    if (!(eps > 0.0) || eps > beta)
        throw std::domain_error("theta: need 0 < eps <= beta");
    if (alpha < 0.0) throw std::domain_error("theta: alpha must be >= 0");
    long n = floor_ratio(beta, eps);
    double dn = static_cast<double>(n);

    // candidate P1: all increments equal
    double best = eps * dn * fam.eval(eps, alpha / (eps * dn));
    if (n >= 2 && alpha > 0.0) {
        // candidates P2: one distinguished increment, remainder split equally
        double rest = dn - 1.0;
        auto objective = [&](double x1) {
            return eps * fam.eval(eps, x1 / eps) +
                   eps * rest * fam.eval(eps, (alpha - x1) / (eps * rest));
        };
        best = std::min(best,
                        grid_refine_min(objective, alpha / dn, alpha, scanPoints).value);
    }
    return best;
}

double theta_bruteforce(const PhiEpsFamily& fam, double eps,
                        double alpha, double beta, int gridPerVariable) {
    if (!(eps > 0.0) || eps > beta)
        throw std::domain_error("theta_bruteforce: need 0 < eps <= beta");
    if (alpha < 0.0) throw std::domain_error("theta_bruteforce: alpha must be >= 0");
    long n = floor_ratio(beta, eps);
    if (n > 4) throw std::runtime_error("theta_bruteforce: N_eps > 4 is unsupported");

    auto term = [&](double x) { return eps * fam.eval(eps, x / eps); };
    if (alpha == 0.0) return static_cast<double>(n) * term(0.0);
    if (n == 1) return term(alpha);

    const int d = static_cast<int>(n) - 1; // free coordinates; last one closes the sum
    auto value_at = [&](const std::vector<double>& x) {
        double sum = 0.0;
        double total = 0.0;
        for (double xi : x) {
            sum += term(xi);
            total += xi;
        }
        if (total > alpha * (1.0 + 1e-12)) return kInfiniteEnergy;
        return sum + term(std::max(0.0, alpha - total));
    };

    int k = std::max(4, gridPerVariable);
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> x(static_cast<size_t>(d), 0.0);
    std::vector<double> bestX(static_cast<size_t>(d), 0.0);
    double bestVal = kInfiniteEnergy;
    for (;;) {
        for (int j = 0; j < d; ++j) x[static_cast<size_t>(j)] = alpha * idx[static_cast<size_t>(j)] / k;
        double v = value_at(x);
        if (v < bestVal) {
            bestVal = v;
            bestX = x;
        }
        int j = 0;
        while (j < d && ++idx[static_cast<size_t>(j)] > k) {
            idx[static_cast<size_t>(j)] = 0;
            ++j;
        }
        if (j == d) break;
    }

    // local zoom around the best grid point
    double w = alpha / k;
    std::vector<double> probe(static_cast<size_t>(d), 0.0);
    for (int round = 0; round < 48 && w > 1e-14 * alpha; ++round) {
        std::vector<int> off(static_cast<size_t>(d), 0);
        std::vector<double> center = bestX;
        for (;;) {
            for (int j = 0; j < d; ++j) {
                double c = center[static_cast<size_t>(j)] + (off[static_cast<size_t>(j)] - 4) * (w / 4.0);
                probe[static_cast<size_t>(j)] = std::clamp(c, 0.0, alpha);
            }
            double v = value_at(probe);
            if (v < bestVal) {
                bestVal = v;
                bestX = probe;
            }
            int j = 0;
            while (j < d && ++off[static_cast<size_t>(j)] > 8) {
                off[static_cast<size_t>(j)] = 0;
                ++j;
            }
            if (j == d) break;
        }
        w *= 0.5;
    }
    return bestVal;
}

EnvelopeReport mu_envelope(const PhiSpec& f, const PsiSpec& g,
                           double rmax, int samples, int innerGrid) {
    if (!(rmax > 0.0)) throw std::domain_error("mu_envelope: rmax must be > 0");
    if (samples < 8) throw std::invalid_argument("mu_envelope: need at least 8 samples");

    EnvelopeReport rep;
    rep.r.resize(static_cast<size_t>(samples));
    rep.mu.resize(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        double r = rmax * i / (samples - 1);
        rep.r[static_cast<size_t>(i)] = r;
        if (r == 0.0) {
            rep.mu[static_cast<size_t>(i)] = f(0.0);
            continue;
        }
        auto objective = [&](double l) { return f(l) + g(r - l); };
        rep.mu[static_cast<size_t>(i)] = grid_refine_min(objective, 0.0, r, innerGrid).value;
    }

    // rbar: largest sampled r where mu still agrees with f (mu == f on [0,rbar])
    size_t rbarIdx = 0;
    for (size_t i = 0; i < rep.r.size(); ++i) {
        double fr = f(rep.r[i]);
        if (std::abs(rep.mu[i] - fr) <= 1e-9 * (1.0 + std::abs(fr))) rbarIdx = i;
    }
    rep.rbar = rep.r[rbarIdx];

    auto secondDiff = [&](size_t i) {
        double hl = rep.r[i] - rep.r[i - 1];
        double hr = rep.r[i + 1] - rep.r[i];
        return (rep.mu[i + 1] - rep.mu[i]) / hr - (rep.mu[i] - rep.mu[i - 1]) / hl;
    };
    rep.convexOkBelow = true;
    rep.concaveOkAbove = true;
    for (size_t i = 1; i + 1 < rep.r.size(); ++i) {
        double sd = secondDiff(i);
        double tol = 1e-8 * (1.0 + std::abs(rep.mu[i]));
        if (rep.r[i + 1] <= rep.rbar && sd < -tol) rep.convexOkBelow = false;
        if (rep.r[i - 1] >= rep.rbar && sd > tol) rep.concaveOkAbove = false;
    }
    rep.nonDecreasing = true;
    for (size_t i = 1; i < rep.mu.size(); ++i) {
        if (rep.mu[i] < rep.mu[i - 1] - 1e-8 * (1.0 + std::abs(rep.mu[i - 1])))
            rep.nonDecreasing = false;
    }
    return rep;
}

SamplingPlan SamplingPlan::standard() {
    SamplingPlan p;
    p.epsValues = {1.0, 0.3, 0.1, 0.03, 0.01};
    p.rValues.resize(81);
    for (int i = 0; i < 81; ++i) p.rValues[static_cast<size_t>(i)] = 10.0 * i / 80.0;
    p.aValues = {0.0, 0.5, 1.0, 2.0, 4.0};
    p.sValues = {0.25, 0.5, 1.0, 2.0, 4.0};
    p.mValues = {1.0, 2.0, 4.0};
    p.kValues = {1, 2, 3};
    p.hCandidates = {2.0, 1.0, 0.5, 0.25, 0.1, 0.05};
    return p;
}

HypothesisReport probe_hypotheses(const PhiEpsFamily& fam, const SamplingPlan& plan) {
    if (plan.epsValues.empty() || plan.rValues.empty() || plan.aValues.empty() ||
        plan.sValues.empty() || plan.mValues.empty() || plan.kValues.empty() ||
        plan.hCandidates.empty())
        throw std::domain_error("probe_hypotheses: sampling plan has an empty grid");

    HypothesisReport rep;
    std::vector<double> rGrid = plan.rValues;
    std::sort(rGrid.begin(), rGrid.end());
    const double tol = plan.tolerance;

    // (li1): non-decreasing on the sampled grid, per eps
    rep.li1.pass = true;
    for (double eps : plan.epsValues) {
        double prev = fam.eval(eps, rGrid.front());
        for (size_t i = 1; i < rGrid.size() && rep.li1.pass; ++i) {
            double v = fam.eval(eps, rGrid[i]);
            if (v < prev - tol * (1.0 + std::abs(prev))) {
                rep.li1.pass = false;
                rep.li1.witness = tuple_witness("eps=%g r=%g value drops to %g", eps, rGrid[i], v);
            }
            prev = v;
        }
    }

    // (li2): slopes non-decreasing up to a single switch, non-increasing after
    rep.li2.pass = true;
    for (double eps : plan.epsValues) {
        std::vector<double> slope;
        for (size_t i = 1; i < rGrid.size(); ++i) {
            double dv = fam.eval(eps, rGrid[i]) - fam.eval(eps, rGrid[i - 1]);
            slope.push_back(dv / (rGrid[i] - rGrid[i - 1]));
        }
        size_t switchIdx = slope.size();
        for (size_t i = 1; i < slope.size(); ++i) {
            if (slope[i] < slope[i - 1] - tol * (1.0 + std::abs(slope[i - 1]))) {
                switchIdx = i;
                break;
            }
        }
        for (size_t i = switchIdx; i + 1 < slope.size() && rep.li2.pass; ++i) {
            if (slope[i + 1] > slope[i] + tol * (1.0 + std::abs(slope[i]))) {
                rep.li2.pass = false;
                rep.li2.witness =
                    tuple_witness("eps=%g slope rises again near r=%g (convex-concave broken)",
                                  eps, rGrid[i + 1], 0.0);
            }
        }
        if (!rep.li2.pass) break;
    }

    // (Est): phi_eps(A+S) <= phi*(A) + psi*(eps S)/eps
    rep.est.pass = true;
    LimitIntegrands lim = fam.limit_integrands();
    for (double eps : plan.epsValues) {
        for (double a : plan.aValues) {
            for (double s : plan.sValues) {
                double rhsBulk = lim.bulk_at(a);
                double rhsJump = lim.jump_at(eps * s);
                if (is_infinite(rhsBulk) || is_infinite(rhsJump)) continue;
                double rhs = rhsBulk + rhsJump / eps;
                double lhs = fam.eval(eps, a + s);
                if (lhs > rhs + 1e-9 * (1.0 + rhs)) {
                    rep.est.pass = false;
                    rep.est.witness = tuple_witness("eps=%g A=%g S=%g violates by %g",
                                                    eps, a, s, lhs - rhs);
                }
            }
        }
    }

    // (Cpt1): fit K on the coarse half of the eps grid, verify on all of it.
    // A candidate H whose residual max keeps growing as eps shrinks fails the
    // held-out verification, which is exactly the blow-up (Cpt1) forbids.
    rep.cpt1.pass = true;
    std::vector<double> epsSorted = plan.epsValues;
    std::sort(epsSorted.begin(), epsSorted.end(), std::greater<>());
    size_t trainCount = (epsSorted.size() + 1) / 2;
    const int cptSamples = 201;
    for (double M : plan.mValues) {
        bool found = false;
        for (double H : plan.hCandidates) {
            double K = 0.0;
            for (size_t e = 0; e < trainCount; ++e) {
                double eps = epsSorted[e];
                double rmax = M / eps;
                for (int i = 0; i <= cptSamples; ++i) {
                    double r = rmax * i / cptSamples;
                    K = std::max(K, H * r - fam.eval(eps, r));
                }
            }
            bool ok = true;
            for (double eps : epsSorted) {
                double rmax = M / eps;
                for (int i = 0; i <= cptSamples && ok; ++i) {
                    double r = rmax * i / cptSamples;
                    double need = H * r - K;
                    if (fam.eval(eps, r) < need - 1e-9 * (1.0 + std::abs(need) + K)) ok = false;
                }
                if (!ok) break;
            }
            if (ok) {
                rep.cpt1Fits.push_back({M, H, K});
                found = true;
                break;
            }
        }
        if (!found) {
            rep.cpt1.pass = false;
            rep.cpt1.witness = tuple_witness("M=%g: no candidate H admits a stable K", M, 0, 0);
        }
    }

    // (Cpt2): phi_{(k+1)eps}((A+B)/(k+1)) <= phi_eps(A)/(k+1) + k/(k+1) phi_{k eps}(B/k)
    rep.cpt2.pass = true;
    for (double eps : plan.epsValues) {
        for (int k : plan.kValues) {
            for (double a : plan.aValues) {
                for (double b : plan.sValues) {
                    double lhs = fam.eval((k + 1) * eps, (a + b) / (k + 1));
                    double rhs = fam.eval(eps, a) / (k + 1) +
                                 (static_cast<double>(k) / (k + 1)) * fam.eval(k * eps, b / k);
                    if (lhs > rhs + 1e-9 * (1.0 + rhs)) {
                        rep.cpt2.pass = false;
                        rep.cpt2.witness = tuple_witness("eps=%g k=%g A=%g B=%g",
                                                         eps, static_cast<double>(k), a, b);
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace freedisc
