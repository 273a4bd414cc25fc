#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "girglab/geometry.hpp"
#include "girglab/model.hpp"

using namespace girglab;

TEST_CASE("torus distance wraps") {
    CHECK(torus_abs(0.1, 0.9) == doctest::Approx(0.2));
    CHECK(torus_abs(0.3, 0.5) == doctest::Approx(0.2));
    CHECK(torus_abs(0.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("mcd takes the closest coordinate, linf the farthest") {
    const TorusPoint a({0.1, 0.1}), b({0.15, 0.6});
    CHECK(mcd_distance(a, b) == doctest::Approx(0.05));
    CHECK(linf_distance(a, b) == doctest::Approx(0.5));
    const TorusPoint c({0.0, 0.0}), e({0.95, 0.5});
    CHECK(mcd_distance(c, e) == doctest::Approx(0.05));
}

TEST_CASE("dimension mismatch throws") {
    const TorusPoint a({0.1, 0.1}), b({0.1});
    CHECK_THROWS_AS(mcd_distance(a, b), std::invalid_argument);
}

TEST_CASE("torus point wraps 1.0 to 0") {
    const TorusPoint a({1.0, -0.25});
    CHECK(a[0] == 0.0);
    CHECK(a[1] == doctest::Approx(0.75));
}

TEST_CASE("ball volumes") {
    CHECK(volume_min(0.1, 2) == doctest::Approx(1 - 0.64));
    CHECK(volume_min(0.5, 3) == 1.0);
    CHECK(volume_min(0.7, 3) == 1.0);
    CHECK(volume_min(0.0, 2) == 0.0);
    CHECK(volume_linf(0.1, 2) == doctest::Approx(0.04));
    CHECK(volume_linf(0.6, 1) == 1.0);
    CHECK_THROWS(volume_min(-0.1, 2));
}

TEST_CASE("volume agrees with a coarse grid count") {
    // midpoint grid in d=2 as an independent oracle
    const int g = 400;
    const double r = 0.1;
    int in_min = 0, in_linf = 0;
    const std::vector<double> o{0.0, 0.0};
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
            const std::vector<double> x{(a + 0.5) / g, (b + 0.5) / g};
            if (mcd_distance(x, o) <= r) ++in_min;
            if (linf_distance(x, o) <= r) ++in_linf;
        }
    CHECK(double(in_min) / (g * g) == doctest::Approx(volume_min(r, 2)).epsilon(1e-9));
    CHECK(double(in_linf) / (g * g) == doctest::Approx(volume_linf(r, 2)).epsilon(1e-9));
}

TEST_CASE("pareto inverse cdf") {
    CHECK_THROWS(sample_weight(1.0, 2.5));
    CHECK(sample_weight(0.5, 2.5) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
    CHECK(sample_weight(0.25, 3.0) == doctest::Approx(2.0));
    // P(W >= w) = w^{1-tau}
    CHECK(sample_weight(std::pow(4.0, -1.5), 2.5) == doctest::Approx(4.0));
}

TEST_CASE("connection probability") {
    ModelParams p;
    p.n = 1000;
    p.d = 2;
    p.tau = 2.5;
    p.alpha = 1.5;
    p.kernel_c = 1.0;
    // w=2,3 at distance 0.1: ratio 6/(1000*0.36) = 1/60, p = (1/60)^1.5
    const auto c = connect(2, 3, 0.1, p);
    CHECK(c.probability == doctest::Approx(std::pow(1.0 / 60.0, 1.5)));
    CHECK_FALSE(c.strong_tie);
    CHECK(connect(100, 100, 0.001, p).strong_tie);
    CHECK(connect(1, 1, 0.0, p).probability == 1.0);
    p.kernel_c = 0.3;
    CHECK(connect(1, 1, 0.0, p).probability == doctest::Approx(0.3));
}

TEST_CASE("params validation") {
    ModelParams p;
    p.tau = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.tau = 2.5;
    p.alpha = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha = 1.5;
    CHECK_NOTHROW(p.validate());
}
