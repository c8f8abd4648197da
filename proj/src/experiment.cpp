#include "freedisc/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "freedisc/energy_nd.hpp"
#include "freedisc/limit_energy.hpp"
#include "freedisc/minimizer.hpp"
#include "freedisc/numeric.hpp"

namespace freedisc {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

void check_value(double v, const std::string& what) {
    if (std::isnan(v)) throw NumericError("NaN while computing " + what);
}

// reads a key, materializing the default into the config so that meta.txt
// carries the fully resolved run
struct Resolver {
    Config& cfg;
    std::string str(const std::string& key, const std::string& def) {
        if (!cfg.has(key)) cfg.set(key, def);
        return cfg.get(key);
    }
    double num(const std::string& key, double def) {
        if (!cfg.has(key)) cfg.set(key, fmt17(def));
        return cfg.number(key);
    }
    int integer(const std::string& key, int def) {
        if (!cfg.has(key)) cfg.set(key, std::to_string(def));
        return cfg.integer_or(key, def);
    }
};

std::vector<double> decreasing_eps_list(const Config& cfg) {
    std::vector<double> eps = cfg.number_list("eps");
    for (size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw ConfigError("eps list must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw ConfigError("eps list must be strictly decreasing");
    }
    return eps;
}

// 1-D limit of a family on an explicit descriptor, through the family's own
// limit pair (handles the infinite branches)
double family_limit_1d(const PhiEpsFamily& fam, const Sbv1D& u) {
    LimitIntegrands lim = fam.limit_integrands();
    KahanSum acc;
    const auto& knots = u.knots();
    for (size_t i = 0; i < u.slopes().size(); ++i) {
        double v = lim.bulk_at(std::abs(u.slopes()[i]));
        if (is_infinite(v)) return kInfiniteEnergy;
        acc.add((knots[i + 1] - knots[i]) * v);
    }
    for (const auto& j : u.jumps()) {
        double v = lim.jump_at(j.height());
        if (is_infinite(v)) return kInfiniteEnergy;
        acc.add(v);
    }
    return acc.value();
}

double lambda_of(const LimitIntegrands& lim, double alpha, double beta, int grid) {
    if (alpha == 0.0) return beta * lim.bulk_at(0.0);
    auto objective = [&](double l) {
        double bulk = lim.bulk_at((alpha - l) / beta);
        double jump = lim.jump_at(l);
        if (is_infinite(bulk) || is_infinite(jump)) return kInfiniteEnergy;
        return beta * bulk + jump;
    };
    return grid_refine_min(objective, 0.0, alpha, grid).value;
}

struct Extrapolation {
    double limit = 0.0;
    double spread = 0.0; // difference against the extrapolation one pair earlier
};

Extrapolation richardson(const std::vector<SweepRow>& rows, double order) {
    if (rows.size() < 2) return {rows.empty() ? 0.0 : rows.back().value, 0.0};
    auto pairLimit = [&](size_t i, size_t j) {
        double ei = std::pow(rows[i].eps, order);
        double ej = std::pow(rows[j].eps, order);
        double c = (rows[i].value - rows[j].value) / (ei - ej);
        return rows[j].value - c * ej;
    };
    size_t n = rows.size();
    double last = pairLimit(n - 2, n - 1);
    double prev = n >= 3 ? pairLimit(n - 3, n - 2) : last;
    return {last, std::abs(last - prev)};
}

std::string sweep_summary(const std::string& kind, const Extrapolation& ex,
                          std::optional<double> target) {
    std::ostringstream os;
    os << "experiment " << kind << "\n";
    os << "limit_extrapolated " << fmt17(ex.limit) << "\n";
    os << "extrapolation_spread " << fmt17(ex.spread) << "\n";
    if (!target) {
        os << "target unavailable\n";
        return os.str();
    }
    os << "target " << fmt17(*target) << "\n";
    if (!is_infinite(*target)) {
        double abserr = std::abs(ex.limit - *target);
        os << "abs_error " << fmt17(abserr) << "\n";
        os << "rel_error " << fmt17(abserr / std::max(std::abs(*target), 1e-300)) << "\n";
    }
    return os.str();
}

void write_meta(const fs::path& dir, const Config& cfg) {
    atomic_write(dir / "meta.txt",
                 "# freedisc " + std::string(kToolVersion) + "\n" + cfg.serialize());
}

void run_sweep1d(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    AnySignal1D u = make_signal(cfg.get("signal"));
    PhiEpsFamily fam = make_family(cfg);
    std::vector<double> epsList = decreasing_eps_list(cfg);
    Quadrature1DOptions qopt;
    qopt.hx = rv.num("hx", 0.0);
    double order = rv.num("order", 1.0);

    SweepTable table = f_eps_1d_sweep(u, fam, epsList, Domain1D::whole_line(), qopt);
    std::ostringstream csv;
    csv << "eps,value\n";
    for (const auto& row : table.rows) {
        check_value(row.value, "sweep1d value");
        csv << fmt17(row.eps) << "," << fmt17(row.value) << "\n";
    }
    atomic_write(dir / "results.csv", csv.str());

    // csv-loaded signals have no explicit limit descriptor
    std::optional<double> target;
    try {
        target = family_limit_1d(fam, signal_descriptor(cfg.get("signal")));
    } catch (const ConfigError&) {
    }
    atomic_write(dir / "summary.txt",
                 sweep_summary("sweep1d", richardson(table.rows, order), target));
}

void run_sweepnd(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    int gridN = rv.integer("grid_n", 256);
    double gridSpan = rv.num("grid_span", 1.4);
    Field2D u = make_field(cfg.get("field"), gridN, gridSpan);
    PhiEpsFamily fam = make_family(cfg);
    Kernel k = make_kernel(cfg);
    double xiStep = rv.num("xi_step", k.truncation_radius() / 8.0);
    StencilQuadrature st = StencilQuadrature::build(k, xiStep);
    std::vector<double> epsList = decreasing_eps_list(cfg);
    double order = rv.num("order", 1.0);
    int segments = rv.integer("circle_segments", 64);

    std::vector<SweepRow> rows;
    std::ostringstream csv;
    csv << "eps,value\n";
    for (double eps : epsList) {
        double v = f_eps_nd(u, fam, k, eps, st);
        check_value(v, "sweepnd value");
        rows.push_back({eps, v});
        csv << fmt17(eps) << "," << fmt17(v) << "\n";
    }
    atomic_write(dir / "results.csv", csv.str());

    std::optional<double> target;
    try {
        PiecewiseField2D descriptor = field_descriptor(cfg.get("field"), segments);
        if (cfg.has("polyline")) descriptor.polyline = load_polyline_csv(cfg.get("polyline"));
        target = target_limit(fam, k, k.dim(), descriptor);
    } catch (const ConfigError&) { // loaded fields have no explicit descriptor
    }
    atomic_write(dir / "summary.txt",
                 sweep_summary("sweepnd", richardson(rows, order), target));
}

void run_probe(Config& cfg, const fs::path& dir) {
    PhiEpsFamily fam = make_family(cfg);
    SamplingPlan plan = SamplingPlan::standard();
    if (cfg.has("probe_eps")) plan.epsValues = cfg.number_list("probe_eps");
    HypothesisReport rep = probe_hypotheses(fam, plan);

    std::ostringstream csv;
    csv << "hypothesis,pass,witness\n";
    auto line = [&](const char* name, const HypothesisCheck& c) {
        csv << name << "," << (c.pass ? "1" : "0") << "," << c.witness << "\n";
    };
    line("li1", rep.li1);
    line("li2", rep.li2);
    line("Est", rep.est);
    line("Cpt1", rep.cpt1);
    line("Cpt2", rep.cpt2);
    for (const auto& fit : rep.cpt1Fits)
        csv << "cpt1_fit,M=" << fmt17(fit.M) << ",H=" << fmt17(fit.H)
            << " K=" << fmt17(fit.K) << "\n";
    atomic_write(dir / "results.csv", csv.str());
}

void run_envelope(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    PhiSpec f = make_phi(cfg.get("phi"));
    PsiSpec g = make_psi(cfg.get("psi"));
    double rmax = rv.num("rmax", 3.0);
    int samples = rv.integer("samples", 256);
    int innerGrid = rv.integer("inner_grid", 4096);
    EnvelopeReport rep = mu_envelope(f, g, rmax, samples, innerGrid);

    std::ostringstream csv;
    csv << "r,mu\n";
    for (size_t i = 0; i < rep.r.size(); ++i)
        csv << fmt17(rep.r[i]) << "," << fmt17(rep.mu[i]) << "\n";
    atomic_write(dir / "results.csv", csv.str());

    std::ostringstream sum;
    sum << "experiment envelope\n"
        << "rbar " << fmt17(rep.rbar) << "\n"
        << "convex_below " << rep.convexOkBelow << "\n"
        << "concave_above " << rep.concaveOkAbove << "\n"
        << "non_decreasing " << rep.nonDecreasing << "\n";
    atomic_write(dir / "summary.txt", sum.str());
}

void run_theta(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    PhiEpsFamily fam = make_family(cfg);
    std::vector<double> alphas = cfg.number_list("alpha");
    std::vector<double> betas = cfg.number_list("beta");
    double epsDiv = rv.num("eps_div", 50.0);
    LimitIntegrands lim = fam.limit_integrands();

    std::ostringstream csv;
    csv << "alpha,beta,eps,theta,lambda,margin\n";
    for (double a : alphas) {
        for (double b : betas) {
            double eps = b / epsDiv;
            double th = theta_structured(fam, eps, a, b);
            double la = lambda_of(lim, a, b, 4096);
            check_value(th, "theta");
            csv << fmt17(a) << "," << fmt17(b) << "," << fmt17(eps) << ","
                << fmt17(th) << "," << fmt17(la) << "," << fmt17(th - la) << "\n";
        }
    }
    atomic_write(dir / "results.csv", csv.str());
}

Field2D random_blocks_field(std::mt19937& rng, int gridN, double gridSpan, int blocks) {
    double step = 2.0 * gridSpan / gridN;
    Field2D f(-gridSpan + step / 2.0, -gridSpan + step / 2.0, step, step, gridN, gridN);
    std::vector<double> level(static_cast<size_t>(blocks) * blocks);
    for (auto& v : level) v = (rng() >> 8) * (1.0 / 16777216.0); // uniform [0,1)
    int collar = std::max(2, gridN / 8); // constant background ring
    for (int j = collar; j < gridN - collar; ++j) {
        for (int i = collar; i < gridN - collar; ++i) {
            int bi = (i - collar) * blocks / (gridN - 2 * collar);
            int bj = (j - collar) * blocks / (gridN - 2 * collar);
            f.at(i, j) = level[static_cast<size_t>(bj) * blocks + bi];
        }
    }
    return f;
}

void run_compactness(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    PhiEpsFamily fam = make_family(cfg);
    Kernel k = make_kernel(cfg);
    double xiStep = rv.num("xi_step", k.truncation_radius() / 8.0);
    StencilQuadrature st = StencilQuadrature::build(k, xiStep);
    std::vector<double> deltas = cfg.number_list("delta");
    int fieldCount = rv.integer("fields", 20);
    int gridN = rv.integer("grid_n", 48);
    double gridSpan = rv.num("grid_span", 1.0);
    auto seed = static_cast<unsigned>(rv.integer("seed", 1));
    std::vector<double> kList = cfg.has("k") ? cfg.number_list("k") : std::vector<double>{2, 3};

    // (H_M, K_M) for M = 2 sup|u| = 2, fitted by the hypothesis probe
    SamplingPlan plan = SamplingPlan::standard();
    plan.mValues = {2.0};
    HypothesisReport rep = probe_hypotheses(fam, plan);
    if (rep.cpt1Fits.empty()) throw NumericError("compactness: no (H_M, K_M) fit");
    double H = rep.cpt1Fits.front().H;
    double K = rep.cpt1Fits.front().K;
    double R = k.truncation_radius();
    double omega0 = k.mass();

    std::mt19937 rng(seed);
    std::ostringstream csv;
    csv << "field,delta,f_delta,conv_l1,bound52,ok52";
    for (double kk : kList) csv << ",f_" << kk << "delta,ok53_" << kk;
    csv << "\n";
    for (int fieldIdx = 0; fieldIdx < fieldCount; ++fieldIdx) {
        Field2D u = random_blocks_field(rng, gridN, gridSpan, 6);
        double area = (u.window_x_hi() - u.window_x_lo()) * (u.window_y_hi() - u.window_y_lo());
        for (double delta : deltas) {
            double fd = f_eps_nd(u, fam, k, delta, st);
            check_value(fd, "compactness energy");
            Field2D cu = mollify(u, k, delta, xiStep);
            double l1 = 0.0;
            for (size_t i = 0; i < u.data().size(); ++i)
                l1 += std::abs(cu.data()[i] - u.data()[i]);
            l1 *= u.step_x() * u.step_y();
            double bound = R / (H * omega0) * (omega0 * K * area + fd) * delta;
            csv << fieldIdx << "," << fmt17(delta) << "," << fmt17(fd) << ","
                << fmt17(l1) << "," << fmt17(bound) << "," << (l1 <= bound ? 1 : 0);
            for (double kk : kList) {
                double fkd = f_eps_nd(u, fam, k, kk * delta, st);
                bool ok = fkd <= fd + 1e-6 * (1.0 + fd);
                csv << "," << fmt17(fkd) << "," << (ok ? 1 : 0);
            }
            csv << "\n";
        }
    }
    atomic_write(dir / "results.csv", csv.str());
}

void save_minimizer(const DenoiseProblem& prob, const std::vector<double>& u,
                    const fs::path& dir) {
    if (std::holds_alternative<Signal1D>(prob.data)) {
        Signal1D out = std::get<Signal1D>(prob.data);
        out.samples() = u;
        out.save_csv((dir / "minimizer.csv").string());
    } else {
        Field2D out = std::get<Field2D>(prob.data);
        out.data() = u;
        out.save_csv((dir / "minimizer.csv").string());
        out.save_pgm((dir / "minimizer.pgm").string());
    }
}

void run_denoise(Config& cfg, const fs::path& dir) {
    Resolver rv{cfg};
    DenoiseProblem prob{Signal1D(0.0, 1.0, {0.0, 0.0}), make_family(cfg),
                        cfg.number("eps"), cfg.number("kappa"), std::nullopt, std::nullopt};
    bool is1d = cfg.has("signal");
    if (is1d) {
        AnySignal1D s = make_signal(cfg.get("signal"));
        if (std::holds_alternative<Signal1D>(s)) {
            prob.data = std::get<Signal1D>(s);
        } else {
            int n = rv.integer("sample_n", 201);
            double span = rv.num("sample_span", 1.0);
            const auto& a = std::get<AnalyticSignal1D>(s);
            double step = 2.0 * span / (n - 1);
            std::vector<double> vals(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = a(-span + step * i);
            prob.data = Signal1D(-span, step, std::move(vals));
        }
    } else {
        int gridN = rv.integer("grid_n", 64);
        double gridSpan = rv.num("grid_span", 1.0);
        prob.data = make_field(cfg.get("field"), gridN, gridSpan);
        Kernel k = make_kernel(cfg);
        double xiStep = rv.num("xi_step", k.truncation_radius() / 8.0);
        prob.stencil = StencilQuadrature::build(k, xiStep);
        prob.kernel = std::move(k);
    }

    DescentOptions opt;
    opt.maxIters = rv.integer("max_iters", 500);
    opt.gradTol = rv.num("grad_tol", 1e-6);

    std::ostringstream csv;
    std::ostringstream sum;
    if (cfg.has("eps_schedule")) {
        ContinuationResult res = eps_continuation(prob, cfg.number_list("eps_schedule"), opt);
        csv << "stage,eps,nonlocal,total,l1_dist_prev\n";
        for (size_t i = 0; i < res.stages.size(); ++i) {
            const auto& s = res.stages[i];
            csv << i << "," << fmt17(s.eps) << "," << fmt17(s.nonlocalEnergy) << ","
                << fmt17(s.totalEnergy) << "," << fmt17(s.l1DistFromPrevious) << "\n";
        }
        sum << "experiment denoise (continuation)\n"
            << "sup_energy_plus_sup " << fmt17(res.supEnergyPlusSup) << "\n";
        save_minimizer(prob, res.finalState.u, dir);
    } else {
        DescentState st = solve(prob, opt);
        check_value(st.energyHistory.back(), "denoise energy");
        csv << "iter,energy,grad_sup\n";
        for (size_t i = 0; i < st.energyHistory.size(); ++i) {
            csv << i << "," << fmt17(st.energyHistory[i]) << ","
                << (i < st.gradNormHistory.size() ? fmt17(st.gradNormHistory[i]) : "") << "\n";
        }
        sum << "experiment denoise\n"
            << "status "
            << (st.status == DescentStatus::Converged
                    ? "converged"
                    : st.status == DescentStatus::Stalled ? "stalled" : "max_iters")
            << "\n"
            << "iterations " << st.iterations << "\n"
            << "final_energy " << fmt17(st.energyHistory.back()) << "\n";
        save_minimizer(prob, st.u, dir);
    }
    atomic_write(dir / "results.csv", csv.str());
    atomic_write(dir / "summary.txt", sum.str());
}

void run_constants(Config& cfg, const fs::path& dir) {
    Kernel k = make_kernel(cfg);
    int n = k.dim();
    std::vector<double> ps = cfg.has("p") ? cfg.number_list("p") : std::vector<double>{0, 1, 2};
    std::vector<double> alphas =
        cfg.has("alpha") ? cfg.number_list("alpha") : std::vector<double>{1, 2, 3, 4};

    std::ostringstream csv;
    csv << "name,value\n";
    for (double p : ps) {
        std::ostringstream name;
        name << "c_" << p << "_" << n;
        csv << name.str() << "," << fmt17(c_pn(p, n)) << "\n";
    }
    for (double a : alphas) {
        std::ostringstream name;
        name << "j_" << a;
        csv << name.str() << "," << fmt17(j_alpha(k, a)) << "\n";
    }
    csv << "omega," << fmt17(k.mass()) << "\n";
    atomic_write(dir / "results.csv", csv.str());
}

} // namespace

void run_experiment(const Config& input) {
    Config cfg = input;
    std::string kind = cfg.get("experiment");
    fs::path dir = cfg.get("out");
    fs::create_directories(dir);

    if (kind == "sweep1d") run_sweep1d(cfg, dir);
    else if (kind == "sweepnd") run_sweepnd(cfg, dir);
    else if (kind == "probe") run_probe(cfg, dir);
    else if (kind == "envelope") run_envelope(cfg, dir);
    else if (kind == "theta") run_theta(cfg, dir);
    else if (kind == "compactness") run_compactness(cfg, dir);
    else if (kind == "denoise") run_denoise(cfg, dir);
    else if (kind == "constants") run_constants(cfg, dir);
    else throw ConfigError("unknown experiment kind '" + kind + "'");

    write_meta(dir, cfg);
}

void run_experiment_file(const std::string& configPath) {
    run_experiment(Config::parse_file(configPath));
}

} // namespace freedisc
