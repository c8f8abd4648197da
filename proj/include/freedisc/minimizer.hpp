#ifndef FREEDISC_MINIMIZER_HPP
#define FREEDISC_MINIMIZER_HPP

#include <optional>
#include <variant>
#include <vector>

#include "freedisc/energy_nd.hpp"
#include "freedisc/field.hpp"
#include "freedisc/phi_family.hpp"
#include "freedisc/signal.hpp"

namespace freedisc {

// E(u) = grid-restricted nonlocal energy + kappa ||u - g||_2^2. The family
// must have a smooth r-derivative (arctanMS, power, rational32). 1-D problems
// use the single offset +eps; 2-D problems need a kernel and stencil.
struct DenoiseProblem {
    std::variant<Signal1D, Field2D> data;
    PhiEpsFamily family;
    double eps;
    double kappa;
    std::optional<Kernel> kernel;             // 2-D only
    std::optional<StencilQuadrature> stencil; // 2-D only

    void validate() const;
    size_t dof() const;
};

double discrete_energy(const DenoiseProblem& p, const std::vector<double>& u);

// nonlocal part only (no fidelity): what the compactness statements bound
double discrete_nonlocal_energy(const DenoiseProblem& p, const std::vector<double>& u);

// exact gradient of discrete_energy with respect to the grid values
std::vector<double> gradient(const DenoiseProblem& p, const std::vector<double>& u);

struct DescentOptions {
    int maxIters = 500;
    double gradTol = 1e-6;  // sup-norm stop
    double armijo = 1e-4;
    double backtrack = 0.5;
    double initialStep = 1.0;
};

enum class DescentStatus { Converged, MaxIters, Stalled };

struct DescentState {
    std::vector<double> u;
    std::vector<double> energyHistory;   // non-increasing by construction
    std::vector<double> gradNormHistory; // sup norms
    double step = 0.0;
    int iterations = 0;
    DescentStatus status = DescentStatus::MaxIters;
};

// Gradient descent with Armijo backtracking, started from u0 = g.
DescentState solve(const DenoiseProblem& p, const DescentOptions& opt = {});

struct ContinuationStage {
    double eps;
    double nonlocalEnergy;
    double totalEnergy;
    double supNorm;
    double l1DistFromPrevious; // cell-measure-weighted
};

struct ContinuationResult {
    DescentState finalState;
    std::vector<ContinuationStage> stages;
    double supEnergyPlusSup = 0.0; // sup over stages of F_eps(u_eps) + ||u_eps||_inf
};

// Warm-started descent along a strictly decreasing eps schedule; records the
// bounded-energy and successive-distance evidence used by the compactness
// statements.
ContinuationResult eps_continuation(const DenoiseProblem& p,
                                    const std::vector<double>& epsSchedule,
                                    const DescentOptions& opt = {});

} // namespace freedisc

#endif
