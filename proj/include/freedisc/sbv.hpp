#ifndef FREEDISC_SBV_HPP
#define FREEDISC_SBV_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "freedisc/signal.hpp"

namespace freedisc {

// Explicit piecewise-affine-with-jumps representation on a window
// [t0, tK]: K affine pieces between sorted knots, plus a list of jumps with
// absolute one-sided values. Reconstruction from the anchor value must agree
// with each jump's left value (validated at construction).
class Sbv1D {
public:
    struct Jump {
        double location;
        double leftValue;
        double rightValue;
        double height() const;
    };

    Sbv1D(std::vector<double> knots, std::vector<double> slopes,
          std::vector<Jump> jumps, double anchorValue = 0.0);

    // value at t (right limit at jump points); constant extension outside
    double operator()(double t) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    double anchor() const { return anchor_; }
    double window_lo() const { return knots_.front(); }
    double window_hi() const { return knots_.back(); }

    AnalyticSignal1D to_signal() const;

    // text format: `anchor v`, `piece a b slope`, `jump t uminus uplus`
    static Sbv1D load_text(const std::string& path);
    void save_text(const std::string& path) const;

private:
    std::vector<double> knots_;
    std::vector<double> slopes_;
    std::vector<Jump> jumps_;
    double anchor_;
};

// Piecewise description of a 2-D field: a smooth part with an evaluable
// gradient on a rectangle, plus a jump curve given as a polyline with an
// evaluable amplitude |u+ - u-| along it.
struct PiecewiseField2D {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> gradient;
    std::vector<std::array<double, 2>> polyline; // empty = no jump set
    std::function<double(double, double)> amplitude;
    double xlo = 0.0, ylo = 0.0, xhi = 1.0, yhi = 1.0;

    void validate() const;
    double curve_length() const;
};

// regular polygon approximation of a circle, vertices listed
// counter-clockwise, closed (first vertex repeated at the end)
std::vector<std::array<double, 2>> circle_polyline(double cx, double cy,
                                                   double radius, int segments);

// two-column (x,y) CSV; a leading non-numeric header row is skipped
std::vector<std::array<double, 2>> load_polyline_csv(const std::string& path);
void save_polyline_csv(const std::vector<std::array<double, 2>>& pts,
                       const std::string& path);

} // namespace freedisc

#endif
