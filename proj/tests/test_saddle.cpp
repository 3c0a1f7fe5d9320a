#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "charlier/curve.hpp"
#include "charlier/saddle.hpp"

using namespace charlier;

namespace {

Complex rect_point(std::mt19937_64& gen, double a, bool open_upper = false) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double ymax = 2.0 * std::sqrt(a);
    if (open_upper) {
        return {0.001 + 0.998 * u(gen), ymax * (0.001 + 0.998 * u(gen))};
    }
    return {u(gen), ymax * (2.0 * u(gen) - 1.0)};
}

}  // namespace

TEST_CASE("phase function at closed-form points") {
    CHECK(f_eval({1.0, 0.0}, {1.0, 0.0}, 1.0).real() == doctest::Approx(-1.0));
    CHECK(f_eval({1.0, 0.0}, {1.0, 0.0}, 1.0).imag() == 0.0);

    // f(1/a; a, a) = -log a - 1
    for (double a : {0.5, 2.0, 7.0}) {
        const Complex v = f_eval({1.0 / a, 0.0}, {a, 0.0}, a);
        CHECK(v.real() == doctest::Approx(-std::log(a) - 1.0).epsilon(1e-14));
        CHECK(v.imag() == 0.0);
    }

    // f(i; 0, 1) = log(1+i) + log(i) - i
    const Complex v = f_eval({0.0, 1.0}, {0.0, 0.0}, 1.0);
    CHECK(v.real() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.75 * M_PI - 1.0).epsilon(1e-14));
}

TEST_CASE("phase function branch-cut errors") {
    CHECK_THROWS_AS(f_eval({0.0, 0.0}, {0.5, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(f_eval({-1.0, 0.0}, {0.5, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(f_eval({-3.7, 0.0}, {0.5, 0.0}, 1.0), std::domain_error);
    // the open interval (-1,0) is fine and carries +i pi from log xi
    const Complex v = f_eval({-0.5, 0.0}, {0.5, 0.0}, 1.0);
    CHECK(std::isfinite(v.real()));
    CHECK(v.imag() > 0.0);
}

TEST_CASE("saddle points at closed-form locations") {
    const SaddlePair s1 = saddle_points({1.0, 0.0}, 1.0);
    CHECK(std::abs(s1.xi_plus - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(s1.xi_minus - Complex(-1.0, 0.0)) < 1e-15);

    for (double a : {0.3, 1.0, 4.0}) {
        const SaddlePair s = saddle_points({a, 0.0}, a);
        CHECK(std::abs(s.xi_plus - Complex(1.0 / a, 0.0)) < 1e-14 / a);
        CHECK(std::abs(s.xi_minus - Complex(-1.0, 0.0)) < 1e-14);
    }

    for (double a : {0.25, 1.0, 9.0}) {
        const SaddlePair s = saddle_points({1.0, 2.0 * std::sqrt(a)}, a);
        CHECK(std::abs(s.xi_plus - s.xi_minus) < 1e-12);
    }
}

TEST_CASE("saddle points satisfy the quadratic and Vieta") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> ua(0.05, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = ua(gen);
        const Complex z = rect_point(gen, a);
        const SaddlePair s = saddle_points(z, a);
        for (const Complex xi : {s.xi_plus, s.xi_minus}) {
            const Complex res = a * xi * xi + (z - 1.0) * xi - 1.0;
            CHECK(std::abs(res) <= 1e-12 * (1.0 + std::norm(z)));
        }
        CHECK(std::abs(s.xi_plus * s.xi_minus + 1.0 / a) <= 1e-12 * (1.0 + 1.0 / a));
        CHECK(std::abs(s.xi_plus + s.xi_minus - (1.0 - z) / a) <=
              1e-12 * (1.0 + std::abs(z) / a));
    }
}

TEST_CASE("f has a critical point with nonzero curvature at each saddle") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 40; ++trial) {
        const double a = 0.2 + 0.7 * (trial % 5);
        // stay away from the corners where the saddles collide
        const Complex z{0.1 + 0.8 * (trial % 7) / 7.0,
                        2.0 * std::sqrt(a) * (0.1 + 0.75 * (trial % 11) / 11.0)};
        const SaddlePair s = saddle_points(z, a);
        const double h = 1e-5;
        for (const Complex xi : {s.xi_plus, s.xi_minus}) {
            const Complex fp = (detail::f_principal(xi + h, z, a) -
                                detail::f_principal(xi - h, z, a)) /
                               (2.0 * h);
            CHECK(std::abs(fp) <= 1e-6);
            const Complex fpp = (detail::f_principal(xi + h, z, a) -
                                 2.0 * detail::f_principal(xi, z, a) +
                                 detail::f_principal(xi - h, z, a)) /
                                (h * h);
            CHECK(std::abs(fpp) > 1e-8);
        }
    }
}

TEST_CASE("g at closed-form points") {
    CHECK(g_value({1.0, 0.0}, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
    for (double a : {0.1, 0.27846, 2.0})
        CHECK(g_value({a, 0.0}, a) ==
              doctest::Approx(-std::log(a) - a - 1.0).epsilon(1e-14));

    for (double a : {0.25, 1.0, 5.0})
        CHECK(std::abs(g_value({1.0, 2.0 * std::sqrt(a)}, a)) < 1e-12);

    // g(1) = (a-1) log|(1+sqrt a)/(1-sqrt a)| - 2 sqrt a, a = 4
    CHECK(g_value({1.0, 0.0}, 4.0) ==
          doctest::Approx(3.0 * std::log(3.0) - 4.0).epsilon(1e-13));
    CHECK(g_value({1.0, 0.0}, 4.0) < 0.0);

    // g(0) = (2a+1) log((sqrt(1+4a)+1)/(sqrt(1+4a)-1)) - sqrt(1+4a) > 0
    for (double a : {0.2, 1.0, 6.0}) {
        const double s = std::sqrt(1.0 + 4.0 * a);
        const double want = (2.0 * a + 1.0) * std::log((s + 1.0) / (s - 1.0)) - s;
        CHECK(g_value({0.0, 0.0}, a) == doctest::Approx(want).epsilon(1e-13));
        CHECK(want > 0.0);
    }
}

TEST_CASE("g continuity across the kink at z = a") {
    for (double a : {0.3, 0.9}) {
        const double g_at = g_value({a, 0.0}, a);
        for (double eps : {1e-9, 1e-12, 1e-15}) {
            CHECK(g_value({a + eps, 0.0}, a) == doctest::Approx(g_at).epsilon(1e-6));
            CHECK(g_value({a - eps, 0.0}, a) == doctest::Approx(g_at).epsilon(1e-6));
        }
    }
}

TEST_CASE("classification of the three regions") {
    const double a = 1.0;
    CHECK(classify({1.0, std::sqrt(a)}, a) == Region::OmegaMinus);
    CHECK(classify({0.0, std::sqrt(a)}, a) == Region::OmegaPlus);
    CHECK(classify({1.0, 2.0 * std::sqrt(a)}, a) == Region::OmegaZero);
}

TEST_CASE("monotone decrease of g along horizontal lines") {
    for (double a : {0.25, 1.0}) {
        const double ymax = 2.0 * std::sqrt(a);
        for (double yfrac : {0.0, 0.3, 0.6, 0.9}) {
            const double y = yfrac * ymax;
            double prev = g_value({0.0, y}, a);
            int strict = 0;
            const int grid = 1000;
            for (int i = 1; i <= grid; ++i) {
                const double x = static_cast<double>(i) / grid;
                const double cur = g_value({x, y}, a);
                CHECK(cur < prev + 1e-13 * (1.0 + std::abs(prev)));
                if (cur < prev) ++strict;
                prev = cur;
            }
            CHECK(strict > grid - 2);
        }
    }
}

TEST_CASE("log-modulus of (1+xi+)/(1+xi-) only vanishes on the known circle") {
    std::mt19937_64 gen(9);
    for (double a : {0.4, 1.0, 3.0}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const Complex z = rect_point(gen, a, true);
            const SaddlePair s = saddle_points(z, a);
            const double logmod =
                std::log(std::abs((1.0 + s.xi_plus) / (1.0 + s.xi_minus)));
            if (std::abs(logmod) <= 1e-10) {
                CHECK(std::abs(std::abs(z - a) - (1.0 + a)) <= 1e-6);
                CHECK(z.real() >= 1.0 - 1e-6);
            }
        }
    }
}

TEST_CASE("limiting cauchy transform region pairing") {
    const double a = 1.0;
    const Complex zm(1.0, std::sqrt(a));  // Omega_minus
    const SaddlePair sm = saddle_points(zm, a);
    CHECK(std::abs(limiting_cauchy(zm, a) - std::log(1.0 + sm.xi_plus)) < 1e-14);

    // real z in (gamma1, 1]: real value, side limits agree
    const double g1 = gamma1(a);
    const double x = 0.5 * (g1 + 1.0);
    const Complex from_above = limiting_cauchy({x, 1e-9}, a);
    const Complex from_below = limiting_cauchy({x, -1e-9}, a);
    const SaddlePair sx = saddle_points({x, 0.0}, a);
    CHECK(1.0 + sx.xi_plus.real() > 0.0);
    const double want = std::log(1.0 + sx.xi_plus.real());
    CHECK(from_above.real() == doctest::Approx(want).epsilon(1e-6));
    CHECK(from_below.real() == doctest::Approx(want).epsilon(1e-6));
    CHECK(std::abs(from_above.imag()) < 1e-6);

    // conjugation symmetry
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex z = rect_point(gen, a, true);
        if (classify(z, a) == Region::OmegaZero) continue;
        CHECK(std::abs(limiting_cauchy(std::conj(z), a) -
                       std::conj(limiting_cauchy(z, a))) < 1e-14);
    }

    CHECK_THROWS_AS(limiting_cauchy({1.0, 2.0 * std::sqrt(a)}, a),
                    std::domain_error);
}

TEST_CASE("rho at the distinguished points") {
    for (double a : {0.25, 1.0, 4.0})
        CHECK(std::abs(rho({1.0, 2.0 * std::sqrt(a)}, a)) <= 1e-10);

    // a >= gamma1: rho(gamma(1)) = -1/2
    {
        const double a = 1.0;
        const double g1 = gamma1(a);
        const Complex r = rho({g1, 0.0}, a);
        CHECK(r.real() == doctest::Approx(-0.5).epsilon(1e-8));
    }
    // a < gamma1: rho(gamma(1)) = -(a - gamma1 + 1)/2
    {
        const double a = 1.0 / 12.0;
        const double g1 = gamma1(a);
        const Complex r = rho({g1, 0.0}, a);
        CHECK(r.real() ==
              doctest::Approx(-(a - g1 + 1.0) / 2.0).epsilon(1e-8));
    }
}

TEST_CASE("rho has a small imaginary part on the traced curve") {
    const double a = 0.7;
    const TracedCurve curve = trace_curve(a, 65);
    for (const CurveSample& s : curve.samples) {
        if (s.t == 0.0) continue;
        CHECK(std::abs(rho({s.x, s.y}, a).imag()) <= 1e-8);
    }
}
