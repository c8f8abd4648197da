#include "freedisc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace freedisc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// splits "name:arg1:arg2" into pieces
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, const std::string& context) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "' for " + context);
    }
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has empty key");
        cfg.set(key, value);
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& key) const { return parse_number(get(key), key); }

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int Config::integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    double v = number(key);
    if (v != std::floor(v)) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::vector<double> Config::number_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& piece : split(get(key), ','))
        out.push_back(parse_number(trim(piece), key));
    if (out.empty()) throw ConfigError("key '" + key + "' is an empty list");
    return out;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
}

std::string Config::serialize() const {
    std::ostringstream os;
    for (const auto& key : order_) os << key << "=" << values_.at(key) << "\n";
    return os.str();
}

PhiSpec make_phi(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts[0] == "power" && parts.size() >= 2) {
        double p = parse_number(parts[1], "phi");
        double scale = parts.size() >= 3 ? parse_number(parts[2], "phi scale") : 1.0;
        return PhiSpec::power(p, scale);
    }
    throw ConfigError("unknown phi spec '" + spec + "' (expected power:P)");
}

PsiSpec make_psi(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() >= 2) {
        double a = parse_number(parts[1], "psi");
        if (parts[0] == "power") {
            double scale = parts.size() >= 3 ? parse_number(parts[2], "psi scale") : 1.0;
            return PsiSpec::power(a, scale);
        }
        if (parts[0] == "constant") return PsiSpec::constant(a);
        if (parts[0] == "linear") return PsiSpec::linear(a);
    }
    throw ConfigError("unknown psi spec '" + spec + "' (expected power:Q, constant:C or linear:S)");
}

PhiEpsFamily make_family(const Config& cfg) {
    std::string spec = cfg.get("family");
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "arctanMS") return PhiEpsFamily::arctan_ms();
    if (name == "linear") return PhiEpsFamily::linear();
    if (name == "rational32") return PhiEpsFamily::rational32();
    if (name == "power") {
        if (parts.size() < 2) throw ConfigError("family power needs an exponent: power:P");
        return PhiEpsFamily::power(parse_number(parts[1], "family power"));
    }
    if (name == "root") {
        if (parts.size() < 2) throw ConfigError("family root needs an exponent: root:P");
        return PhiEpsFamily::root(parse_number(parts[1], "family root"));
    }
    if (name == "constructed") {
        PhiSpec phi = make_phi(cfg.get("phi"));
        PsiSpec psi = make_psi(cfg.get("psi"));
        double omega = cfg.number_or("omega", 1.0);
        int innerGrid = cfg.integer_or("inner_grid", 4096);
        return PhiEpsFamily::constructed(std::move(phi), std::move(psi), omega, innerGrid);
    }
    throw ConfigError("unknown family '" + spec + "'");
}

Kernel make_kernel(const Config& cfg) {
    std::string spec = cfg.get_or("kernel", "indicator:1.0");
    int n = cfg.integer_or("n", 2);
    double w = cfg.number_or("kernel_weight", 0.0);
    double radius = cfg.number_or("radius", 0.0); // stencil truncation override
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "indicator") {
        double r0 = parts.size() >= 2 ? parse_number(parts[1], "kernel radius") : 1.0;
        return Kernel::indicator(radius > 0.0 ? radius : r0, n, w);
    }
    if (name == "exponential") return Kernel::exponential(n, w, radius);
    if (name == "gaussian") return Kernel::gaussian(n, w, radius);
    throw ConfigError("unknown kernel '" + spec + "'");
}

AnySignal1D make_signal(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "csv") {
        if (parts.size() < 2) throw ConfigError("signal csv needs a path: csv:PATH");
        return Signal1D::load_csv(spec.substr(4));
    }
    if (parts.size() < 2) throw ConfigError("signal '" + spec + "' needs a parameter");
    double a = parse_number(parts[1], "signal");
    if (name == "constant")
        return AnalyticSignal1D([a](double) { return a; }, 0.0, 0.0);
    if (name == "heaviside")
        return AnalyticSignal1D([a](double x) { return x < 0.0 ? 0.0 : a; }, 0.0, 0.0);
    if (name == "ramp")
        return AnalyticSignal1D(
            [a](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? a : a * x); }, 0.0, 1.0);
    throw ConfigError("unknown signal '" + spec + "'");
}

Sbv1D signal_descriptor(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (parts.size() < 2) throw ConfigError("signal '" + spec + "' needs a parameter");
    double a = parse_number(parts[1], "signal");
    if (name == "constant") return Sbv1D({0.0, 1.0}, {0.0}, {}, a);
    if (name == "heaviside") {
        if (a == 0.0) return Sbv1D({-1.0, 1.0}, {0.0}, {}, 0.0);
        return Sbv1D({-1.0, 1.0}, {0.0}, {{0.0, 0.0, a}}, 0.0);
    }
    if (name == "ramp") return Sbv1D({0.0, 1.0}, {a}, {}, 0.0);
    throw ConfigError("no limit descriptor for signal '" + spec + "'");
}

Field2D make_field(const std::string& spec, int gridN, double gridSpan) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "csv") return Field2D::load_csv(spec.substr(4));
    if (name == "pgm") return Field2D::load_pgm(spec.substr(4));
    if (parts.size() < 2) throw ConfigError("field '" + spec + "' needs a parameter");
    double a = parse_number(parts[1], "field");
    if (gridN < 2) throw ConfigError("field grid_n must be >= 2");
    double step = 2.0 * gridSpan / gridN;
    Field2D f(-gridSpan + step / 2.0, -gridSpan + step / 2.0, step, step, gridN, gridN);
    if (name == "constant") {
        std::fill(f.data().begin(), f.data().end(), a);
        return f;
    }
    if (name == "disk") {
        for (int j = 0; j < f.ny(); ++j)
            for (int i = 0; i < f.nx(); ++i)
                f.at(i, j) = (std::hypot(f.node_x(i), f.node_y(j)) <= a) ? 1.0 : 0.0;
        return f;
    }
    if (name == "affine") {
        for (int j = 0; j < f.ny(); ++j)
            for (int i = 0; i < f.nx(); ++i) {
                double x = f.node_x(i);
                f.at(i, j) = x <= 0.0 ? 0.0 : (x >= 1.0 ? a : a * x);
            }
        return f;
    }
    throw ConfigError("unknown field '" + spec + "'");
}

PiecewiseField2D field_descriptor(const std::string& spec, int circleSegments) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (parts.size() < 2) throw ConfigError("field '" + spec + "' needs a parameter");
    double a = parse_number(parts[1], "field");
    PiecewiseField2D d;
    if (name == "constant") {
        d.value = [a](double, double) { return a; };
        d.gradient = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
        d.xlo = d.ylo = -1.0;
        d.xhi = d.yhi = 1.0;
        return d;
    }
    if (name == "disk") {
        d.value = [a](double x, double y) { return std::hypot(x, y) <= a ? 1.0 : 0.0; };
        d.gradient = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
        d.polyline = circle_polyline(0.0, 0.0, a, circleSegments);
        d.amplitude = [](double, double) { return 1.0; };
        d.xlo = d.ylo = -(a + 0.5);
        d.xhi = d.yhi = a + 0.5;
        return d;
    }
    if (name == "affine") {
        d.value = [a](double x, double) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? a : a * x); };
        d.gradient = [a](double x, double) {
            return std::array<double, 2>{(x > 0.0 && x < 1.0) ? a : 0.0, 0.0};
        };
        d.xlo = -0.5;
        d.xhi = 1.5;
        d.ylo = 0.0;
        d.yhi = 1.0;
        return d;
    }
    throw ConfigError("no limit descriptor for field '" + spec + "'");
}

std::string registry_listing() {
    // alphabetical within each section; byte-identical across runs
    return
        "families:\n"
        "  arctanMS\n"
        "  constructed (phi=, psi=, omega=, inner_grid=)\n"
        "  linear\n"
        "  power:P\n"
        "  rational32\n"
        "  root:P\n"
        "fields:\n"
        "  affine:A\n"
        "  constant:C\n"
        "  csv:PATH\n"
        "  disk:R\n"
        "  pgm:PATH\n"
        "kernels:\n"
        "  exponential\n"
        "  gaussian\n"
        "  indicator:R\n"
        "signals:\n"
        "  constant:C\n"
        "  csv:PATH\n"
        "  heaviside:H\n"
        "  ramp:A\n";
}

} // namespace freedisc
