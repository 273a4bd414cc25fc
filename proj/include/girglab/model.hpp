#pragma once

#include <cstdint>

#include "girglab/geometry.hpp"

namespace girglab {

/// Parameters of one graph draw.
///
/// `kernel_c` is the explicit constant in front of the connection kernel;
/// the edge probability is min{1, kernel_c * min{w_u w_v / (n V(r)), 1}^alpha}.
struct ModelParams {
    std::int64_t n = 1000;
    int d = 2;
    double tau = 2.5;
    double alpha = 1.5;
    double kernel_c = 1.0;
    Geometry geometry = Geometry::MCD;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct VertexData {
    double weight = 1.0;
    TorusPoint position;
};

/// Inverse CDF of the Pareto law with density (tau-1) x^{-tau} on [1, inf).
double sample_weight(double u, double tau);

struct Connection {
    double probability = 0.0;
    bool strong_tie = false;
};

/// Edge probability for a pair with weights w_u, w_v at distance `dist`.
/// Coincident points (V(0) = 0) connect with probability min{1, kernel_c}.
Connection connect(double w_u, double w_v, double dist, const ModelParams& p);

inline double connection_probability(double w_u, double w_v, double dist, const ModelParams& p) {
    return connect(w_u, w_v, dist, p).probability;
}

}  // namespace girglab
