#include "girglab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace girglab {

void ModelParams::validate() const {
    if (n < 2) throw std::invalid_argument("model.n must be >= 2, got " + std::to_string(n));
    if (n > (std::int64_t{1} << 31) - 1) throw std::invalid_argument("model.n exceeds 32-bit vertex ids");
    if (d < 1) throw std::invalid_argument("model.d must be >= 1, got " + std::to_string(d));
    if (!(tau > 2.0)) throw std::invalid_argument("model.tau must be > 2, got " + std::to_string(tau));
    if (!(alpha > 1.0)) throw std::invalid_argument("model.alpha must be > 1, got " + std::to_string(alpha));
    if (!(kernel_c >= 0.0) || !std::isfinite(kernel_c))
        throw std::invalid_argument("model.kernel_c must be finite and >= 0, got " + std::to_string(kernel_c));
}

double sample_weight(double u, double tau) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("sample_weight: u must lie in (0,1)");
    if (!(tau > 2.0)) throw std::domain_error("sample_weight: tau must be > 2");
    return std::pow(u, -1.0 / (tau - 1.0));
}

Connection connect(double w_u, double w_v, double dist, const ModelParams& p) {
    const double vol = volume(p.geometry, dist, p.d);
    const double num = w_u * w_v;
    const double den = static_cast<double>(p.n) * vol;
    if (num >= den) return {std::min(1.0, p.kernel_c), true};
    const double inner = num / den;
    return {std::min(1.0, p.kernel_c * std::pow(inner, p.alpha)), false};
}

}  // namespace girglab
