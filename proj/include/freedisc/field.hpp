#ifndef FREEDISC_FIELD_HPP
#define FREEDISC_FIELD_HPP

#include <string>
#include <vector>

namespace freedisc {

// Uniformly sampled scalar field on an axis-aligned rectangle; bilinear
// interpolation inside, constant (clamp-to-edge) extension outside.
class Field2D {
public:
    Field2D(double originX, double originY, double stepX, double stepY,
            int nx, int ny, double fill = 0.0);

    double operator()(double x, double y) const;

    double& at(int ix, int iy) { return data_[index(ix, iy)]; }
    double at(int ix, int iy) const { return data_[index(ix, iy)]; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double origin_x() const { return ox_; }
    double origin_y() const { return oy_; }
    double step_x() const { return dx_; }
    double step_y() const { return dy_; }
    double node_x(int ix) const { return ox_ + dx_ * ix; }
    double node_y(int iy) const { return oy_ + dy_ * iy; }

    // sampled extent
    double window_x_lo() const { return ox_; }
    double window_x_hi() const { return ox_ + dx_ * (nx_ - 1); }
    double window_y_lo() const { return oy_; }
    double window_y_hi() const { return oy_ + dy_ * (ny_ - 1); }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    double max_abs() const;

    // ASCII PGM (P2) quantized to maxval, plus a sidecar <path>.meta text
    // header carrying origin, steps and the value range.
    void save_pgm(const std::string& path, int maxval = 255) const;
    static Field2D load_pgm(const std::string& path);

    // lossless CSV grid with the same sidecar header
    void save_csv(const std::string& path) const;
    static Field2D load_csv(const std::string& path);

private:
    size_t index(int ix, int iy) const {
        return static_cast<size_t>(iy) * static_cast<size_t>(nx_) + static_cast<size_t>(ix);
    }
    double ox_, oy_, dx_, dy_;
    int nx_, ny_;
    std::vector<double> data_;
};

} // namespace freedisc

#endif
