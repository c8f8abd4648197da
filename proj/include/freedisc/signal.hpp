#ifndef FREEDISC_SIGNAL_HPP
#define FREEDISC_SIGNAL_HPP

#include <functional>
#include <string>
#include <vector>

namespace freedisc {

enum class Interp1D { Linear, Nearest };

// Uniformly sampled signal; evaluation outside the sampled window extends by
// the boundary sample, so finite differences vanish far away.
class Signal1D {
public:
    Signal1D(double origin, double step, std::vector<double> samples,
             Interp1D interp = Interp1D::Linear);

    double operator()(double x) const;

    double origin() const { return origin_; }
    double step() const { return step_; }
    size_t size() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }
    Interp1D interpolation() const { return interp_; }

    double window_lo() const { return origin_; }
    double window_hi() const { return origin_ + step_ * (static_cast<double>(samples_.size()) - 1.0); }

    // 2-column CSV (x,u) with a header row
    static Signal1D load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

private:
    double origin_;
    double step_;
    std::vector<double> samples_;
    Interp1D interp_;
};

// Closed-form signal, constant outside [a,b] on each side. Constancy is
// caller-asserted; the constructor spot-checks it at 16 probe points.
class AnalyticSignal1D {
public:
    AnalyticSignal1D(std::function<double(double)> map, double windowLo, double windowHi);

    double operator()(double x) const { return map_(x); }
    double window_lo() const { return lo_; }
    double window_hi() const { return hi_; }

private:
    std::function<double(double)> map_;
    double lo_;
    double hi_;
};

} // namespace freedisc

#endif
