#include "freedisc/sbv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace freedisc {

double Sbv1D::Jump::height() const { return std::abs(rightValue - leftValue); }

Sbv1D::Sbv1D(std::vector<double> knots, std::vector<double> slopes,
             std::vector<Jump> jumps, double anchorValue)
    : knots_(std::move(knots)), slopes_(std::move(slopes)), jumps_(std::move(jumps)),
      anchor_(anchorValue) {
    if (knots_.size() < 2) throw std::invalid_argument("Sbv1D: need at least one piece");
    if (slopes_.size() + 1 != knots_.size())
        throw std::invalid_argument("Sbv1D: slopes must match pieces");
    for (size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i] > knots_[i - 1]))
            throw std::invalid_argument("Sbv1D: knots must be strictly increasing");
    std::sort(jumps_.begin(), jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.location < b.location; });
    for (size_t i = 0; i < jumps_.size(); ++i) {
        if (!(jumps_[i].location > knots_.front() && jumps_[i].location < knots_.back()))
            throw std::invalid_argument("Sbv1D: jump outside the open window");
        if (i > 0 && !(jumps_[i].location > jumps_[i - 1].location))
            throw std::invalid_argument("Sbv1D: duplicate jump locations");
    }
    // reconstruction must be single-valued: the integrated left limit has to
    // match each jump's stated left value
    double v = anchor_;
    size_t piece = 0;
    double pos = knots_.front();
    for (const auto& j : jumps_) {
        while (piece < slopes_.size() && knots_[piece + 1] <= j.location) {
            v += slopes_[piece] * (knots_[piece + 1] - pos);
            pos = knots_[piece + 1];
            ++piece;
        }
        v += (piece < slopes_.size() ? slopes_[piece] : 0.0) * (j.location - pos);
        pos = j.location;
        if (std::abs(v - j.leftValue) > 1e-9 * (1.0 + std::abs(v)))
            throw std::invalid_argument("Sbv1D: jump left value inconsistent with reconstruction");
        v = j.rightValue;
    }
}

double Sbv1D::operator()(double t) const {
    if (t <= knots_.front()) t = knots_.front();
    double stop = std::min(t, knots_.back());
    double v = anchor_;
    double pos = knots_.front();
    size_t piece = 0;
    size_t jumpIdx = 0;
    while (pos < stop) {
        double pieceEnd = knots_[piece + 1];
        double next = std::min(stop, pieceEnd);
        if (jumpIdx < jumps_.size() && jumps_[jumpIdx].location <= next) {
            double jl = jumps_[jumpIdx].location;
            v += slopes_[piece] * (jl - pos);
            v += jumps_[jumpIdx].rightValue - jumps_[jumpIdx].leftValue;
            pos = jl;
            ++jumpIdx;
            continue;
        }
        v += slopes_[piece] * (next - pos);
        pos = next;
        if (pos >= pieceEnd && piece + 1 < slopes_.size()) ++piece;
    }
    return v;
}

AnalyticSignal1D Sbv1D::to_signal() const {
    Sbv1D copy = *this;
    return AnalyticSignal1D([copy](double t) { return copy(t); }, window_lo(), window_hi());
}

Sbv1D Sbv1D::load_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Sbv1D: cannot open " + path);
    std::vector<std::array<double, 3>> pieces;
    std::vector<Jump> jumps;
    double anchor = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string kind;
        row >> kind;
        if (kind == "piece") {
            double a, b, s;
            if (!(row >> a >> b >> s)) throw std::runtime_error("Sbv1D: bad piece line");
            pieces.push_back({a, b, s});
        } else if (kind == "jump") {
            Jump j{};
            if (!(row >> j.location >> j.leftValue >> j.rightValue))
                throw std::runtime_error("Sbv1D: bad jump line");
            jumps.push_back(j);
        } else if (kind == "anchor") {
            if (!(row >> anchor)) throw std::runtime_error("Sbv1D: bad anchor line");
        } else {
            throw std::runtime_error("Sbv1D: unknown line kind '" + kind + "'");
        }
    }
    if (pieces.empty()) throw std::runtime_error("Sbv1D: no pieces in " + path);
    std::sort(pieces.begin(), pieces.end());
    std::vector<double> knots{pieces.front()[0]};
    std::vector<double> slopes;
    for (const auto& p : pieces) {
        if (std::abs(p[0] - knots.back()) > 1e-9 * (1.0 + std::abs(p[0])))
            throw std::runtime_error("Sbv1D: pieces must tile the window contiguously");
        knots.push_back(p[1]);
        slopes.push_back(p[2]);
    }
    return Sbv1D(std::move(knots), std::move(slopes), std::move(jumps), anchor);
}

void Sbv1D::save_text(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Sbv1D: cannot write " + path);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "anchor %.17g\n", anchor_);
    out << buf;
    for (size_t i = 0; i < slopes_.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "piece %.17g %.17g %.17g\n",
                      knots_[i], knots_[i + 1], slopes_[i]);
        out << buf;
    }
    for (const auto& j : jumps_) {
        std::snprintf(buf, sizeof(buf), "jump %.17g %.17g %.17g\n",
                      j.location, j.leftValue, j.rightValue);
        out << buf;
    }
}

void PiecewiseField2D::validate() const {
    if (!value || !gradient)
        throw std::invalid_argument("PiecewiseField2D: smooth part must be evaluable");
    if (!(xhi > xlo) || !(yhi > ylo))
        throw std::invalid_argument("PiecewiseField2D: empty rectangle");
    if (!polyline.empty()) {
        if (polyline.size() < 2)
            throw std::invalid_argument("PiecewiseField2D: polyline needs >= 2 vertices");
        if (!amplitude)
            throw std::invalid_argument("PiecewiseField2D: jump curve needs an amplitude map");
        for (const auto& v : polyline) {
            if (v[0] < xlo || v[0] > xhi || v[1] < ylo || v[1] > yhi)
                throw std::invalid_argument("PiecewiseField2D: polyline leaves the rectangle");
        }
        for (size_t i = 1; i < polyline.size(); ++i) {
            double mx = 0.5 * (polyline[i - 1][0] + polyline[i][0]);
            double my = 0.5 * (polyline[i - 1][1] + polyline[i][1]);
            if (!(amplitude(mx, my) > 0.0))
                throw std::invalid_argument("PiecewiseField2D: amplitude must be > 0 on the curve");
        }
    }
}

double PiecewiseField2D::curve_length() const {
    double len = 0.0;
    for (size_t i = 1; i < polyline.size(); ++i)
        len += std::hypot(polyline[i][0] - polyline[i - 1][0],
                          polyline[i][1] - polyline[i - 1][1]);
    return len;
}

std::vector<std::array<double, 2>> circle_polyline(double cx, double cy,
                                                   double radius, int segments) {
    if (segments < 3) throw std::invalid_argument("circle_polyline: need >= 3 segments");
    std::vector<std::array<double, 2>> pts;
    pts.reserve(static_cast<size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
        double th = 2.0 * std::numbers::pi * i / segments;
        pts.push_back({cx + radius * std::cos(th), cy + radius * std::sin(th)});
    }
    pts.back() = pts.front(); // close exactly
    return pts;
}

std::vector<std::array<double, 2>> load_polyline_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("polyline: cannot open " + path);
    std::vector<std::array<double, 2>> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x, y;
        if (!(row >> x >> y)) {
            if (first) { first = false; continue; } // header row
            throw std::runtime_error("polyline: bad row in " + path);
        }
        first = false;
        pts.push_back({x, y});
    }
    if (pts.size() < 2) throw std::runtime_error("polyline: need >= 2 vertices in " + path);
    return pts;
}

void save_polyline_csv(const std::vector<std::array<double, 2>>& pts,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("polyline: cannot write " + path);
    out << "x,y\n";
    char buf[80];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p[0], p[1]);
        out << buf;
    }
}

} // namespace freedisc
