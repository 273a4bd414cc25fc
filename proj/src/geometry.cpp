#include "girglab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace girglab {

namespace {

void check_unit(double a, const char* what) {
    if (!(a >= 0.0 && a < 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1), got " + std::to_string(a));
}

void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

// (1-2r)^d by repeated multiplication; monotone in r, unlike a generic pow.
double ipow(double base, int d) {
    double acc = 1.0;
    for (int k = 0; k < d; ++k) acc *= base;
    return acc;
}

}  // namespace

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("torus point needs at least one coordinate");
    for (double& c : coords_) c = wrap_unit(c);
}

double wrap_unit(double x) {
    if (!std::isfinite(x)) throw std::domain_error("coordinate is not finite");
    double w = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.0
    return w >= 1.0 ? 0.0 : w;
}

double torus_abs(double a, double b) {
    check_unit(a, "a");
    check_unit(b, "b");
    const double diff = std::fabs(a - b);
    return std::min(diff, 1.0 - diff);
}

double mcd_distance(std::span<const double> x, std::span<const double> y) {
    check_same_dim(x.size(), y.size());
    if (x.empty()) throw std::invalid_argument("empty points");
    double best = torus_abs(x[0], y[0]);
    for (std::size_t i = 1; i < x.size(); ++i) best = std::min(best, torus_abs(x[i], y[i]));
    return best;
}

double mcd_distance(const TorusPoint& x, const TorusPoint& y) { return mcd_distance(x.coords(), y.coords()); }

double linf_distance(std::span<const double> x, std::span<const double> y) {
    check_same_dim(x.size(), y.size());
    if (x.empty()) throw std::invalid_argument("empty points");
    double best = torus_abs(x[0], y[0]);
    for (std::size_t i = 1; i < x.size(); ++i) best = std::max(best, torus_abs(x[i], y[i]));
    return best;
}

double linf_distance(const TorusPoint& x, const TorusPoint& y) { return linf_distance(x.coords(), y.coords()); }

double distance(Geometry g, std::span<const double> x, std::span<const double> y) {
    return g == Geometry::MCD ? mcd_distance(x, y) : linf_distance(x, y);
}

double volume_min(double r, int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (!(r >= 0.0)) throw std::domain_error("radius must be non-negative");
    if (r >= 0.5) return 1.0;
    return 1.0 - ipow(1.0 - 2.0 * r, d);
}

double volume_linf(double r, int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (!(r >= 0.0)) throw std::domain_error("radius must be non-negative");
    if (r >= 0.5) return 1.0;
    return std::min(1.0, ipow(2.0 * r, d));
}

double volume(Geometry g, double r, int d) { return g == Geometry::MCD ? volume_min(r, d) : volume_linf(r, d); }

const char* to_string(Geometry g) { return g == Geometry::MCD ? "mcd" : "linf"; }

Geometry geometry_from_string(const std::string& s) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "mcd" || lower == "min") return Geometry::MCD;
    if (lower == "linf" || lower == "l_inf" || lower == "max" || lower == "euclidean") return Geometry::LINF;
    throw std::invalid_argument("unknown geometry '" + s + "' (expected mcd or linf)");
}

}  // namespace girglab
