#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "freedisc/config.hpp"
#include "freedisc/experiment.hpp"

using namespace freedisc;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("config") {

TEST_CASE("parsing: comments, overrides, errors") {
    Config cfg = Config::parse_string("a=1\n# comment\nb = two # trailing\na=3\n\n");
    CHECK(cfg.number("a") == 3.0);
    CHECK(cfg.get("b") == "two");
    CHECK(cfg.get_or("missing", "x") == "x");
    CHECK_THROWS_AS(cfg.get("missing"), ConfigError);
    CHECK_THROWS_AS(cfg.number("b"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("justakey\n"), ConfigError);
    CHECK(Config::parse_string("list=1,2.5,3\n").number_list("list").size() == 3);
}

TEST_CASE("registry builders resolve the documented names") {
    Config famCfg = Config::parse_string("family=arctanMS\n");
    CHECK(make_family(famCfg).name() == "arctanMS");
    Config consCfg = Config::parse_string("family=constructed\nphi=power:2\npsi=power:0.5\n");
    CHECK(make_family(consCfg).kind() == PhiEpsFamily::Kind::Constructed);
    CHECK_THROWS_AS(make_family(Config::parse_string("family=nope\n")), ConfigError);

    Config kCfg = Config::parse_string("kernel=indicator:2.0\nn=1\nkernel_weight=1\n");
    Kernel k = make_kernel(kCfg);
    CHECK(k.truncation_radius() == 2.0);
    CHECK(k.dim() == 1);

    CHECK_THROWS_AS(make_signal("mystery:1"), ConfigError);
    Sbv1D heavi = signal_descriptor("heaviside:2.0");
    CHECK(heavi.jumps().size() == 1);
    CHECK(heavi.jumps()[0].height() == doctest::Approx(2.0));
    Sbv1D ramp = signal_descriptor("ramp:1.5");
    CHECK(ramp.jumps().empty());
    CHECK(ramp.slopes()[0] == doctest::Approx(1.5));
}

TEST_CASE("signal csv round trip") {
    TempDir tmp("freedisc_test_signal_csv");
    Signal1D s(-1.0, 0.25, {0.0, 0.5, 1.0, 0.25, -0.75});
    fs::path p = tmp.path / "sig.csv";
    s.save_csv(p.string());
    Signal1D t = Signal1D::load_csv(p.string());
    CHECK(t.origin() == doctest::Approx(-1.0));
    CHECK(t.step() == doctest::Approx(0.25));
    REQUIRE(t.size() == s.size());
    for (size_t i = 0; i < s.size(); ++i)
        CHECK(t.samples()[i] == doctest::Approx(s.samples()[i]).epsilon(1e-16));
}

TEST_CASE("field csv and pgm round trips") {
    TempDir tmp("freedisc_test_field_io");
    Field2D f(-1.0, -2.0, 0.5, 0.25, 6, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 6; ++i) f.at(i, j) = std::sin(i * 1.7 + j * 0.9);

    fs::path csv = tmp.path / "f.csv";
    f.save_csv(csv.string());
    Field2D g = Field2D::load_csv(csv.string());
    CHECK(g.nx() == 6);
    CHECK(g.ny() == 4);
    CHECK(g.origin_x() == doctest::Approx(-1.0));
    CHECK(g.step_y() == doctest::Approx(0.25));
    for (size_t i = 0; i < f.data().size(); ++i)
        CHECK(g.data()[i] == doctest::Approx(f.data()[i]).epsilon(1e-16));

    fs::path pgm = tmp.path / "f.pgm";
    f.save_pgm(pgm.string(), 4095);
    Field2D h = Field2D::load_pgm(pgm.string());
    double span = 2.0; // value range is about [-1,1]
    for (size_t i = 0; i < f.data().size(); ++i)
        CHECK(std::abs(h.data()[i] - f.data()[i]) <= span / 4095.0);
}

TEST_CASE("registry listing is deterministic and complete") {
    std::string a = registry_listing();
    std::string b = registry_listing();
    CHECK(a == b);
    CHECK(a.find("arctanMS") != std::string::npos);
    CHECK(a.find("heaviside") != std::string::npos);
    CHECK(a.find("disk") != std::string::npos);
    CHECK(a.find("indicator") != std::string::npos);
}

TEST_CASE("sweep experiment: determinism and meta round trip") {
    TempDir tmp("freedisc_test_sweep");
    Config cfg = Config::parse_string(
        "experiment=sweep1d\nsignal=heaviside:1.0\nfamily=arctanMS\neps=1,0.1,0.01\n");
    cfg.set("out", tmp.path.string());
    run_experiment(cfg);
    std::string first = read_file(tmp.path / "results.csv");
    std::string meta = read_file(tmp.path / "meta.txt");
    CHECK(first.find("eps,value") == 0);
    CHECK(meta.find("experiment=sweep1d") != std::string::npos);

    run_experiment(cfg);
    CHECK(read_file(tmp.path / "results.csv") == first);

    // meta.txt is itself a runnable config reproducing the results
    TempDir tmp2("freedisc_test_sweep_meta");
    Config metaCfg = Config::parse_file((tmp.path / "meta.txt").string());
    metaCfg.set("out", tmp2.path.string());
    run_experiment(metaCfg);
    CHECK(read_file(tmp2.path / "results.csv") == first);

    std::string summary = read_file(tmp.path / "summary.txt");
    CHECK(summary.find("limit_extrapolated") != std::string::npos);
    CHECK(summary.find("target") != std::string::npos);
}

TEST_CASE("sweep targets handle the infinite-bulk families") {
    TempDir tmp("freedisc_test_root_sweep");
    // jump-only family on a pure step: the 1-D limit is psi*(1) = 1
    Config cfg = Config::parse_string(
        "experiment=sweep1d\nsignal=heaviside:1.0\nfamily=root:2\neps=0.5,0.25\n");
    cfg.set("out", tmp.path.string());
    run_experiment(cfg);
    std::string sum = read_file(tmp.path / "summary.txt");
    CHECK(sum.find("target 1\n") != std::string::npos);

    // a ramp has nonzero gradient, so the same family's target is infinite
    TempDir tmp2("freedisc_test_root_ramp");
    Config cfg2 = Config::parse_string(
        "experiment=sweep1d\nsignal=ramp:1.0\nfamily=root:2\neps=0.5,0.25\n");
    cfg2.set("out", tmp2.path.string());
    run_experiment(cfg2);
    std::string sum2 = read_file(tmp2.path / "summary.txt");
    CHECK(sum2.find("target inf") != std::string::npos);
}

TEST_CASE("sweeps over loaded data omit the target gracefully") {
    TempDir tmp("freedisc_test_csv_sweep");
    Signal1D s(-1.0, 0.01, std::vector<double>(201, 0.0));
    for (size_t i = 100; i < s.size(); ++i) s.samples()[i] = 1.0;
    fs::path sig = tmp.path / "step.csv";
    s.save_csv(sig.string());
    Config cfg = Config::parse_string("experiment=sweep1d\nfamily=arctanMS\neps=0.5,0.25\n");
    cfg.set("signal", "csv:" + sig.string());
    cfg.set("out", (tmp.path / "run").string());
    run_experiment(cfg);
    std::string sum = read_file(tmp.path / "run" / "summary.txt");
    CHECK(sum.find("target unavailable") != std::string::npos);
    CHECK(sum.find("limit_extrapolated") != std::string::npos);
}

TEST_CASE("constants experiment writes the table") {
    TempDir tmp("freedisc_test_constants");
    Config cfg = Config::parse_string("experiment=constants\nkernel=indicator:1.0\nn=2\n");
    cfg.set("out", tmp.path.string());
    run_experiment(cfg);
    std::string csv = read_file(tmp.path / "results.csv");
    CHECK(csv.find("c_0_2,6.28318530717958") != std::string::npos);
    CHECK(csv.find("j_3,0.333333333333333") != std::string::npos);
}

TEST_CASE("probe experiment emits one line per hypothesis") {
    TempDir tmp("freedisc_test_probe");
    Config cfg = Config::parse_string("experiment=probe\nfamily=power:2\nprobe_eps=1,0.1,0.03\n");
    cfg.set("out", tmp.path.string());
    run_experiment(cfg);
    std::string csv = read_file(tmp.path / "results.csv");
    for (const char* name : {"li1,1", "li2,1", "Est,1", "Cpt1,1", "Cpt2,1"})
        CHECK(csv.find(name) != std::string::npos);
}

TEST_CASE("sweepnd experiment produces a kernel-weighted target") {
    TempDir tmp("freedisc_test_sweepnd");
    Config cfg = Config::parse_string(
        "experiment=sweepnd\nfield=disk:1.0\ngrid_n=48\ngrid_span=1.4\nfamily=arctanMS\n"
        "kernel=indicator:1.0\nkernel_weight=1\nn=2\nxi_step=0.25\neps=0.3,0.2\n");
    cfg.set("out", tmp.path.string());
    run_experiment(cfg);
    std::string sum = read_file(tmp.path / "summary.txt");
    // mu * perimeter of the 64-gon jump curve, mu = (pi/2) c_{0,2} j_3
    auto pos = sum.find("target ");
    REQUIRE(pos != std::string::npos);
    double target = std::stod(sum.substr(pos + 7));
    double perim64 = 2.0 * 64.0 * std::sin(std::numbers::pi / 64.0);
    double mu = (std::numbers::pi / 2.0) * (2.0 * std::numbers::pi) / 3.0;
    CHECK(target == doctest::Approx(mu * perim64).epsilon(1e-9));
    auto rows = read_file(tmp.path / "results.csv");
    CHECK(rows.find("eps,value") == 0);
}

TEST_CASE("envelope, theta, compactness and denoise experiments run end to end") {
    SUBCASE("envelope") {
        TempDir tmp("freedisc_test_envelope");
        Config cfg = Config::parse_string(
            "experiment=envelope\nphi=power:2\npsi=power:0.5\nrmax=2\nsamples=32\ninner_grid=256\n");
        cfg.set("out", tmp.path.string());
        run_experiment(cfg);
        std::string sum = read_file(tmp.path / "summary.txt");
        CHECK(sum.find("rbar") != std::string::npos);
        CHECK(sum.find("convex_below 1") != std::string::npos);
    }
    SUBCASE("theta") {
        TempDir tmp("freedisc_test_theta");
        Config cfg = Config::parse_string(
            "experiment=theta\nfamily=arctanMS\nalpha=0.5,1\nbeta=1\neps_div=50\n");
        cfg.set("out", tmp.path.string());
        run_experiment(cfg);
        std::string csv = read_file(tmp.path / "results.csv");
        CHECK(csv.find("alpha,beta,eps,theta,lambda,margin") == 0);
    }
    SUBCASE("compactness") {
        TempDir tmp("freedisc_test_compactness");
        Config cfg = Config::parse_string(
            "experiment=compactness\nfamily=arctanMS\nkernel=indicator:1.0\nkernel_weight=1\n"
            "n=2\nfields=2\ngrid_n=24\ndelta=0.1\nxi_step=0.25\n");
        cfg.set("out", tmp.path.string());
        run_experiment(cfg);
        std::string csv = read_file(tmp.path / "results.csv");
        CHECK(csv.find(",1") != std::string::npos); // ok52 column
    }
    SUBCASE("denoise") {
        TempDir tmp("freedisc_test_denoise");
        Config cfg = Config::parse_string(
            "experiment=denoise\nsignal=heaviside:1.0\nfamily=arctanMS\neps=0.1\nkappa=10\n"
            "sample_n=41\nsample_span=1\nmax_iters=25\n");
        cfg.set("out", tmp.path.string());
        run_experiment(cfg);
        CHECK(fs::exists(tmp.path / "minimizer.csv"));
        std::string sum = read_file(tmp.path / "summary.txt");
        CHECK(sum.find("final_energy") != std::string::npos);
        Signal1D out = Signal1D::load_csv((tmp.path / "minimizer.csv").string());
        CHECK(out.size() == 41);
    }
    SUBCASE("non-decreasing eps lists are rejected") {
        Config cfg = Config::parse_string(
            "experiment=sweep1d\nsignal=heaviside:1.0\nfamily=arctanMS\neps=0.1,1\n"
            "out=/tmp/freedisc_badeps\n");
        CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    }
}

TEST_CASE("unknown experiment kinds and bad references fail loudly") {
    Config cfg = Config::parse_string("experiment=warp\nout=/tmp/freedisc_nowhere\n");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    Config cfg2 = Config::parse_string(
        "experiment=sweep1d\nsignal=unknown:1\nfamily=arctanMS\neps=1\nout=/tmp/freedisc_nowhere\n");
    CHECK_THROWS_AS(run_experiment(cfg2), ConfigError);
}

} // TEST_SUITE
