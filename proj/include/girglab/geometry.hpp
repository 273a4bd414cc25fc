#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace girglab {

enum class Geometry { MCD, LINF };

/// A point of the d-dimensional unit torus. Coordinates live in [0,1);
/// the constructor wraps 1.0 (and any other value) into that range.
class TorusPoint {
public:
    TorusPoint() = default;
    explicit TorusPoint(std::vector<double> coords);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const { return coords_; }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    std::vector<double> coords_;
};

/// Wraps any finite real into [0,1).
double wrap_unit(double x);

/// Circular distance on [0,1): min{|a-b|, 1-|a-b|}.
double torus_abs(double a, double b);

/// Minimum over coordinates of the circular distance.
double mcd_distance(std::span<const double> x, std::span<const double> y);
double mcd_distance(const TorusPoint& x, const TorusPoint& y);

/// Maximum over coordinates of the circular distance.
double linf_distance(std::span<const double> x, std::span<const double> y);
double linf_distance(const TorusPoint& x, const TorusPoint& y);

double distance(Geometry g, std::span<const double> x, std::span<const double> y);

/// Measure of the MCD ball of radius r: 1 - (1-2r)^d, saturating at 1.
double volume_min(double r, int d);

/// Measure of the L-infinity ball of radius r: min{1, (2r)^d}.
double volume_linf(double r, int d);

double volume(Geometry g, double r, int d);

const char* to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

}  // namespace girglab
