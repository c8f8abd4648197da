#include "freedisc/signal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freedisc {

Signal1D::Signal1D(double origin, double step, std::vector<double> samples, Interp1D interp)
    : origin_(origin), step_(step), samples_(std::move(samples)), interp_(interp) {
    if (!(step_ > 0.0)) throw std::invalid_argument("Signal1D: step must be > 0");
    if (samples_.size() < 2) throw std::invalid_argument("Signal1D: need at least 2 samples");
}

double Signal1D::operator()(double x) const {
    double t = (x - origin_) / step_;
    double last = static_cast<double>(samples_.size()) - 1.0;
    if (t <= 0.0) return samples_.front();
    if (t >= last) return samples_.back();
    if (interp_ == Interp1D::Nearest) {
        return samples_[static_cast<size_t>(std::llround(t))];
    }
    auto i = static_cast<size_t>(t);
    double frac = t - static_cast<double>(i);
    return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

Signal1D Signal1D::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Signal1D: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("Signal1D: empty file " + path);
    std::vector<double> xs, us;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x, u;
        if (!(row >> x >> u)) throw std::runtime_error("Signal1D: bad row in " + path);
        xs.push_back(x);
        us.push_back(u);
    }
    if (xs.size() < 2) throw std::runtime_error("Signal1D: need at least 2 rows in " + path);
    double step = xs[1] - xs[0];
    for (size_t i = 1; i < xs.size(); ++i) {
        double d = xs[i] - xs[i - 1];
        if (std::abs(d - step) > 1e-9 * (std::abs(step) + 1.0))
            throw std::runtime_error("Signal1D: non-uniform spacing in " + path);
    }
    return Signal1D(xs.front(), step, std::move(us));
}

void Signal1D::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Signal1D: cannot write " + path);
    out << "x,u\n";
    char buf[80];
    for (size_t i = 0; i < samples_.size(); ++i) {
        double x = origin_ + step_ * static_cast<double>(i);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, samples_[i]);
        out << buf;
    }
}

AnalyticSignal1D::AnalyticSignal1D(std::function<double(double)> map,
                                   double windowLo, double windowHi)
    : map_(std::move(map)), lo_(windowLo), hi_(windowHi) {
    if (!(hi_ >= lo_)) throw std::invalid_argument("AnalyticSignal1D: bad window");
    double span = std::max(hi_ - lo_, 1.0);
    double leftRef = map_(lo_ - span);
    double rightRef = map_(hi_ + span);
    for (int k = 1; k <= 8; ++k) {
        double l = map_(lo_ - span * k / 8.0);
        double r = map_(hi_ + span * k / 8.0);
        double tol = 1e-12 * (1.0 + std::abs(leftRef) + std::abs(rightRef));
        if (std::abs(l - leftRef) > tol || std::abs(r - rightRef) > tol)
            throw std::invalid_argument("AnalyticSignal1D: map is not constant outside the window");
    }
}

} // namespace freedisc
