#ifndef FREEDISC_NUMERIC_HPP
#define FREEDISC_NUMERIC_HPP

#include <functional>
#include <limits>
#include <vector>

namespace freedisc {

// Energies take values in [0,+inf]; +inf is an explicit sentinel, never the
// result of overflow. Comparisons treat it as absorbing.
inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

inline bool is_infinite(double v) { return v == kInfiniteEnergy; }

// Compensated (Kahan) accumulator for fixed-order reductions.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct ScalarMin {
    double arg = 0.0;
    double value = 0.0;
};

// Minimizes f over [lo,hi]: dense grid of gridPoints+1 samples followed by
// golden-section refinement in the bracket around the best sample. The
// objective may be convex-plus-concave (not unimodal), which is why the grid
// comes first; refinement is local and never returns more than the best
// sample seen.
ScalarMin grid_refine_min(const std::function<double(double)>& f,
                          double lo, double hi, int gridPoints);

// Number of worker threads: FREEDISC_THREADS if set, hardware concurrency
// otherwise, at least 1.
int worker_threads();

// Evaluates rowValue(i) for i in [0,rows), possibly in parallel, then reduces
// the per-row results with a Kahan sum in fixed row order. Deterministic for
// any thread count.
double parallel_row_sum(int rows, const std::function<double(int)>& rowValue);

} // namespace freedisc

#endif
