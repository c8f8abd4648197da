#include "freedisc/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freedisc/numeric.hpp"

namespace freedisc {

namespace {

// one interpolation footprint: up to four (node, coefficient) pairs
struct Footprint {
    int idx[4];
    double coeff[4];
    int count;
};

struct Pair {
    int source;        // node whose value is subtracted
    Footprint target;  // interpolated evaluation point
    double rho;        // eps * |xi|
    double weight;     // stencil weight * cell measure
};

// Precomputed pair structure of the discrete energy: every (node, offset)
// couple with its interpolation footprint.
struct PairTable {
    std::vector<Pair> pairs;
    double cellMeasure = 0.0;
    size_t dof = 0;
};

Footprint footprint_1d(double t, int n) {
    Footprint f{};
    if (t <= 0.0) {
        f.idx[0] = 0; f.coeff[0] = 1.0; f.count = 1;
        return f;
    }
    if (t >= n - 1) {
        f.idx[0] = n - 1; f.coeff[0] = 1.0; f.count = 1;
        return f;
    }
    int i = static_cast<int>(t);
    double fr = t - i;
    f.idx[0] = i; f.coeff[0] = 1.0 - fr;
    f.idx[1] = i + 1; f.coeff[1] = fr;
    f.count = 2;
    return f;
}

PairTable build_pairs(const DenoiseProblem& p) {
    PairTable tab;
    if (std::holds_alternative<Signal1D>(p.data)) {
        const auto& g = std::get<Signal1D>(p.data);
        int n = static_cast<int>(g.size());
        tab.dof = g.size();
        tab.cellMeasure = g.step();
        double shift = p.eps / g.step();
        tab.pairs.reserve(g.size());
        for (int i = 0; i < n; ++i) {
            Pair pr{};
            pr.source = i;
            pr.target = footprint_1d(i + shift, n);
            pr.rho = p.eps;
            pr.weight = tab.cellMeasure;
            tab.pairs.push_back(pr);
        }
        return tab;
    }
    const auto& g = std::get<Field2D>(p.data);
    tab.dof = g.data().size();
    tab.cellMeasure = g.step_x() * g.step_y();
    const auto& st = *p.stencil;
    tab.pairs.reserve(tab.dof * st.offsets.size());
    int nx = g.nx(), ny = g.ny();
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            for (const auto& o : st.offsets) {
                Pair pr{};
                pr.source = j * nx + i;
                double s = std::clamp(i + p.eps * o.x / g.step_x(), 0.0, static_cast<double>(nx - 1));
                double t = std::clamp(j + p.eps * o.y / g.step_y(), 0.0, static_cast<double>(ny - 1));
                int i0 = std::min(static_cast<int>(s), nx - 2 >= 0 ? nx - 2 : 0);
                int j0 = std::min(static_cast<int>(t), ny - 2 >= 0 ? ny - 2 : 0);
                int i1 = std::min(i0 + 1, nx - 1);
                int j1 = std::min(j0 + 1, ny - 1);
                double fs = s - i0, ft = t - j0;
                Footprint f{};
                f.idx[0] = j0 * nx + i0; f.coeff[0] = (1 - fs) * (1 - ft);
                f.idx[1] = j0 * nx + i1; f.coeff[1] = fs * (1 - ft);
                f.idx[2] = j1 * nx + i0; f.coeff[2] = (1 - fs) * ft;
                f.idx[3] = j1 * nx + i1; f.coeff[3] = fs * ft;
                f.count = 4;
                pr.target = f;
                pr.rho = p.eps * o.norm;
                pr.weight = o.weight * tab.cellMeasure;
                tab.pairs.push_back(pr);
            }
        }
    }
    return tab;
}

const std::vector<double>& data_values(const DenoiseProblem& p, std::vector<double>& scratch) {
    if (std::holds_alternative<Signal1D>(p.data)) return std::get<Signal1D>(p.data).samples();
    scratch = std::get<Field2D>(p.data).data();
    return scratch;
}

double interp_value(const Footprint& f, const std::vector<double>& u) {
    double v = 0.0;
    for (int c = 0; c < f.count; ++c) v += f.coeff[c] * u[static_cast<size_t>(f.idx[c])];
    return v;
}

double nonlocal_impl(const DenoiseProblem& p, const PairTable& tab,
                     const std::vector<double>& u) {
    KahanSum nl;
    for (const auto& pr : tab.pairs) {
        double d = interp_value(pr.target, u) - u[static_cast<size_t>(pr.source)];
        if (d == 0.0) continue;
        nl.add(pr.weight * p.family.eval(pr.rho, std::abs(d) / pr.rho));
    }
    return nl.value();
}

double energy_impl(const DenoiseProblem& p, const PairTable& tab,
                   const std::vector<double>& g, const std::vector<double>& u) {
    KahanSum fid;
    for (size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - g[i];
        fid.add(d * d);
    }
    return nonlocal_impl(p, tab, u) + p.kappa * tab.cellMeasure * fid.value();
}

std::vector<double> gradient_impl(const DenoiseProblem& p, const PairTable& tab,
                                  const std::vector<double>& g,
                                  const std::vector<double>& u) {
    std::vector<double> out(u.size(), 0.0);
    for (const auto& pr : tab.pairs) {
        double d = interp_value(pr.target, u) - u[static_cast<size_t>(pr.source)];
        if (d == 0.0) continue;
        double r = std::abs(d) / pr.rho;
        double s = pr.weight * p.family.deriv(pr.rho, r) * (d > 0 ? 1.0 : -1.0) / pr.rho;
        for (int c = 0; c < pr.target.count; ++c)
            out[static_cast<size_t>(pr.target.idx[c])] += s * pr.target.coeff[c];
        out[static_cast<size_t>(pr.source)] -= s;
    }
    for (size_t i = 0; i < u.size(); ++i)
        out[i] += 2.0 * p.kappa * tab.cellMeasure * (u[i] - g[i]);
    return out;
}

DescentState solve_from(const DenoiseProblem& p, std::vector<double> u0,
                        const DescentOptions& opt) {
    PairTable tab = build_pairs(p);
    std::vector<double> scratch;
    const std::vector<double>& gdata = data_values(p, scratch);

    DescentState st;
    st.u = std::move(u0);
    double energy = energy_impl(p, tab, gdata, st.u);
    st.energyHistory.push_back(energy);
    double step = opt.initialStep;

    for (int it = 0; it < opt.maxIters; ++it) {
        std::vector<double> g = gradient_impl(p, tab, gdata, st.u);
        double gSup = 0.0, gSq = 0.0;
        for (double v : g) {
            gSup = std::max(gSup, std::abs(v));
            gSq += v * v;
        }
        st.gradNormHistory.push_back(gSup);
        if (gSup <= opt.gradTol) {
            st.status = DescentStatus::Converged;
            st.step = step;
            st.iterations = it;
            return st;
        }
        std::vector<double> trial(st.u.size());
        bool accepted = false;
        // start a bit above the last accepted step so the search can re-grow
        step = std::min(step * 2.0, 1e6);
        while (step > 1e-18) {
            for (size_t i = 0; i < st.u.size(); ++i) trial[i] = st.u[i] - step * g[i];
            double trialEnergy = energy_impl(p, tab, gdata, trial);
            if (trialEnergy <= energy - opt.armijo * step * gSq) {
                st.u.swap(trial);
                energy = trialEnergy;
                accepted = true;
                break;
            }
            step *= opt.backtrack;
        }
        if (!accepted) {
            st.status = DescentStatus::Stalled;
            st.step = step;
            st.iterations = it;
            return st;
        }
        st.energyHistory.push_back(energy);
        st.step = step;
        st.iterations = it + 1;
    }
    st.status = DescentStatus::MaxIters;
    return st;
}

} // namespace

void DenoiseProblem::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("denoise: eps must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("denoise: kappa must be > 0");
    if (!family.differentiable())
        throw std::runtime_error("denoise: family must be differentiable (arctanMS, power, rational32)");
    if (std::holds_alternative<Field2D>(data)) {
        if (!kernel || !stencil)
            throw std::invalid_argument("denoise: 2-D problems need a kernel and a stencil");
    }
}

size_t DenoiseProblem::dof() const {
    if (std::holds_alternative<Signal1D>(data)) return std::get<Signal1D>(data).size();
    return std::get<Field2D>(data).data().size();
}

double discrete_energy(const DenoiseProblem& p, const std::vector<double>& u) {
    p.validate();
    if (u.size() != p.dof()) throw std::invalid_argument("discrete_energy: shape mismatch");
    PairTable tab = build_pairs(p);
    std::vector<double> scratch;
    const std::vector<double>& g = data_values(p, scratch);
    return energy_impl(p, tab, g, u);
}

double discrete_nonlocal_energy(const DenoiseProblem& p, const std::vector<double>& u) {
    p.validate();
    if (u.size() != p.dof()) throw std::invalid_argument("discrete_nonlocal_energy: shape mismatch");
    return nonlocal_impl(p, build_pairs(p), u);
}

std::vector<double> gradient(const DenoiseProblem& p, const std::vector<double>& u) {
    p.validate();
    if (u.size() != p.dof()) throw std::invalid_argument("gradient: shape mismatch");
    PairTable tab = build_pairs(p);
    std::vector<double> scratch;
    const std::vector<double>& g = data_values(p, scratch);
    return gradient_impl(p, tab, g, u);
}

DescentState solve(const DenoiseProblem& p, const DescentOptions& opt) {
    p.validate();
    std::vector<double> scratch;
    std::vector<double> u0 = data_values(p, scratch);
    return solve_from(p, std::move(u0), opt);
}

ContinuationResult eps_continuation(const DenoiseProblem& p,
                                    const std::vector<double>& epsSchedule,
                                    const DescentOptions& opt) {
    p.validate();
    if (epsSchedule.empty()) throw std::domain_error("eps_continuation: empty schedule");
    for (size_t i = 0; i < epsSchedule.size(); ++i) {
        if (!(epsSchedule[i] > 0.0))
            throw std::domain_error("eps_continuation: schedule must be positive");
        if (i > 0 && !(epsSchedule[i] < epsSchedule[i - 1]))
            throw std::domain_error("eps_continuation: schedule must be strictly decreasing");
    }

    ContinuationResult res;
    std::vector<double> scratch;
    std::vector<double> current = data_values(p, scratch);
    std::vector<double> previous;
    double cell = build_pairs(p).cellMeasure;

    for (double eps : epsSchedule) {
        DenoiseProblem stageProblem = p;
        stageProblem.eps = eps;
        DescentState st = solve_from(stageProblem, current, opt);
        current = st.u;

        ContinuationStage stage{};
        stage.eps = eps;
        stage.nonlocalEnergy = discrete_nonlocal_energy(stageProblem, current);
        stage.totalEnergy = st.energyHistory.back();
        stage.supNorm = 0.0;
        for (double v : current) stage.supNorm = std::max(stage.supNorm, std::abs(v));
        stage.l1DistFromPrevious = 0.0;
        if (!previous.empty()) {
            double s = 0.0;
            for (size_t i = 0; i < current.size(); ++i) s += std::abs(current[i] - previous[i]);
            stage.l1DistFromPrevious = s * cell;
        }
        res.supEnergyPlusSup = std::max(res.supEnergyPlusSup,
                                        stage.nonlocalEnergy + stage.supNorm);
        res.stages.push_back(stage);
        previous = current;
        res.finalState = std::move(st);
    }
    return res;
}

} // namespace freedisc
