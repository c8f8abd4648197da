#include "freedisc/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freedisc {

namespace {

struct Meta {
    double ox, oy, dx, dy;
    double lo = 0.0, hi = 1.0;
};

Meta read_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("field meta: cannot open " + path);
    Meta m{0, 0, 1, 1, 0, 1};
    std::string key;
    while (in >> key) {
        if (key == "origin") in >> m.ox >> m.oy;
        else if (key == "step") in >> m.dx >> m.dy;
        else if (key == "range") in >> m.lo >> m.hi;
        else { std::string rest; std::getline(in, rest); }
    }
    return m;
}

void write_meta(const std::string& path, const Meta& m, bool withRange) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("field meta: cannot write " + path);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "origin %.17g %.17g\nstep %.17g %.17g\n",
                  m.ox, m.oy, m.dx, m.dy);
    out << buf;
    if (withRange) {
        std::snprintf(buf, sizeof(buf), "range %.17g %.17g\n", m.lo, m.hi);
        out << buf;
    }
}

} // namespace

Field2D::Field2D(double originX, double originY, double stepX, double stepY,
                 int nx, int ny, double fill)
    : ox_(originX), oy_(originY), dx_(stepX), dy_(stepY), nx_(nx), ny_(ny),
      data_(static_cast<size_t>(nx) * static_cast<size_t>(ny), fill) {
    if (nx_ < 1 || ny_ < 1) throw std::invalid_argument("Field2D: empty grid");
    if (!(dx_ > 0.0) || !(dy_ > 0.0)) throw std::invalid_argument("Field2D: steps must be > 0");
}

double Field2D::operator()(double x, double y) const {
    double s = std::clamp((x - ox_) / dx_, 0.0, static_cast<double>(nx_ - 1));
    double t = std::clamp((y - oy_) / dy_, 0.0, static_cast<double>(ny_ - 1));
    int i0 = std::min(static_cast<int>(s), nx_ - 2 >= 0 ? nx_ - 2 : 0);
    int j0 = std::min(static_cast<int>(t), ny_ - 2 >= 0 ? ny_ - 2 : 0);
    if (nx_ == 1) i0 = 0;
    if (ny_ == 1) j0 = 0;
    double fs = s - i0;
    double ft = t - j0;
    int i1 = std::min(i0 + 1, nx_ - 1);
    int j1 = std::min(j0 + 1, ny_ - 1);
    double v00 = at(i0, j0), v10 = at(i1, j0), v01 = at(i0, j1), v11 = at(i1, j1);
    return (1 - ft) * ((1 - fs) * v00 + fs * v10) + ft * ((1 - fs) * v01 + fs * v11);
}

double Field2D::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

void Field2D::save_pgm(const std::string& path, int maxval) const {
    if (maxval < 1 || maxval > 65535) throw std::invalid_argument("save_pgm: bad maxval");
    double lo = *std::min_element(data_.begin(), data_.end());
    double hi = *std::max_element(data_.begin(), data_.end());
    double span = hi > lo ? hi - lo : 1.0;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_pgm: cannot write " + path);
    out << "P2\n" << nx_ << " " << ny_ << "\n" << maxval << "\n";
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            auto g = static_cast<long>(std::lround((at(i, j) - lo) / span * maxval));
            out << std::clamp(g, 0L, static_cast<long>(maxval)) << (i + 1 == nx_ ? '\n' : ' ');
        }
    }
    write_meta(path + ".meta", {ox_, oy_, dx_, dy_, lo, hi}, true);
}

Field2D Field2D::load_pgm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_pgm: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P2") throw std::runtime_error("load_pgm: not an ASCII PGM: " + path);
    int nx, ny, maxval;
    if (!(in >> nx >> ny >> maxval) || nx < 1 || ny < 1 || maxval < 1)
        throw std::runtime_error("load_pgm: bad header in " + path);
    Meta m = read_meta(path + ".meta");
    Field2D f(m.ox, m.oy, m.dx, m.dy, nx, ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            long g;
            if (!(in >> g)) throw std::runtime_error("load_pgm: truncated data in " + path);
            f.at(i, j) = m.lo + (m.hi - m.lo) * static_cast<double>(g) / maxval;
        }
    }
    return f;
}

void Field2D::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot write " + path);
    char buf[48];
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", at(i, j));
            out << buf << (i + 1 == nx_ ? '\n' : ',');
        }
    }
    write_meta(path + ".meta", {ox_, oy_, dx_, dy_, 0, 0}, false);
}

Field2D Field2D::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::vector<double> vals;
        double v;
        while (row >> v) vals.push_back(v);
        if (!vals.empty()) rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::runtime_error("load_csv: no data in " + path);
    size_t nx = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != nx) throw std::runtime_error("load_csv: ragged rows in " + path);
    Meta m = read_meta(path + ".meta");
    Field2D f(m.ox, m.oy, m.dx, m.dy, static_cast<int>(nx), static_cast<int>(rows.size()));
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx(); ++i)
            f.at(i, j) = rows[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return f;
}

} // namespace freedisc
