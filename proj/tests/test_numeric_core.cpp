#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tamechroma/gamma.hpp"
#include "tamechroma/interval.hpp"
#include "tamechroma/logreal.hpp"
#include "tamechroma/roots.hpp"

using namespace tamechroma;

TEST_CASE("log_binomial small exact values") {
    CHECK(log_binomial(6, 3) == doctest::Approx(std::log(20.0)).epsilon(1e-12));
    CHECK(log_binomial(1000, 0) == doctest::Approx(0.0));
    // C(52,5) by repeated multiplication
    long long c = 1;
    for (int i = 1; i <= 5; ++i) c = c * (52 - 5 + i) / i;
    CHECK(c == 2598960);
    CHECK(log_binomial(52, 5) == doctest::Approx(std::log(static_cast<double>(c))).epsilon(1e-12));
    CHECK_THROWS_AS(log_binomial(5, 6), domain_error);
    CHECK_THROWS_AS(log_binomial(5, -1), domain_error);
}

TEST_CASE("log_binomial large-argument accuracy") {
    // n = 1e12, k = 5: ln C(n,k) = sum ln(n-i) - ln(5!)
    double n = 1e12;
    double direct = 0.0;
    for (int i = 0; i < 5; ++i) direct += std::log(n - i);
    direct -= std::log(120.0);
    CHECK(std::fabs(log_binomial(n, 5) - direct) < 1e-9 * std::fabs(direct));
}

TEST_CASE("LogReal basics") {
    LogReal a = LogReal::from_double(3.5);
    LogReal b = LogReal::from_double(-1.25);
    CHECK((a * b).to_double() == doctest::Approx(-4.375));
    CHECK((a / b).to_double() == doctest::Approx(-2.8));
    CHECK((a + b).to_double() == doctest::Approx(2.25));
    CHECK((a - b).to_double() == doctest::Approx(4.75));
    CHECK(LogReal::zero().is_zero());
    CHECK((a + LogReal::zero()).to_double() == doctest::Approx(3.5));
    CHECK((a.pow(3)).to_double() == doctest::Approx(42.875));
    CHECK(b < a);
    CHECK(LogReal::from_double(-2.0) < LogReal::from_double(-1.0));
}

TEST_CASE("LogReal addition matches double addition") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(1e-6, 1e6);
    for (int i = 0; i < 20000; ++i) {
        double x = dist(rng), y = dist(rng);
        LogReal s = LogReal::from_double(x) + LogReal::from_double(y);
        double got = std::exp(s.log_abs);
        CHECK(std::fabs(got - (x + y)) / (x + y) <= 1e-12);
    }
}

TEST_CASE("LogReal cancellation returns exact zero") {
    LogReal a = LogReal::from_double(1.0);
    LogReal b = LogReal::from_log(1e-15, -1);  // -(e^{1e-15}), magnitudes equal to 1e-15 rel
    CHECK((a + b).is_zero());
    // well-separated magnitudes still subtract
    LogReal c = LogReal::from_double(1.0) + LogReal::from_double(-0.25);
    CHECK(c.to_double() == doctest::Approx(0.75));
}

TEST_CASE("Interval outward containment on random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lo_d(-20.0, 20.0);
    std::uniform_real_distribution<double> w_d(0.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        double alo = lo_d(rng), wa = w_d(rng);
        double blo = lo_d(rng), wb = w_d(rng);
        Interval A(alo, alo + wa), B(blo, blo + wb);
        double am = A.mid(), bm = B.mid();
        CHECK((A + B).contains(am + bm));
        CHECK((A - B).contains(am - bm));
        CHECK((A * B).contains(am * bm));
        CHECK(iexp(Interval(am, am)).contains(std::exp(am)));
        if (am > 0.1) CHECK(ilog(Interval(am, am)).contains(std::log(am)));
    }
}

TEST_CASE("Interval exp/log enclose transcendental results") {
    Interval e1 = iexp(Interval(1.0));
    CHECK(e1.lo <= 2.718281828459045);
    CHECK(e1.hi >= 2.718281828459046);
    CHECK_THROWS_AS(ilog(Interval(-1.0, 1.0)), domain_error);
    CHECK_THROWS_AS(Interval(2.0, 1.0), domain_error);
}

TEST_CASE("bisect finds known roots") {
    auto r = bisect([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
    CHECK(r.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
    CHECK(r.hi - r.lo <= 1e-12);
    auto z = bisect([](double x) { return x; }, -1.0, 1.0, 1e-12);
    CHECK(std::fabs(z.root) <= 1e-12);
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-6), domain_error);
}

TEST_CASE("bisect bracket always straddles a sign change") {
    auto f = [](double x) { return std::cos(x) - x; };
    auto r = bisect(f, 0.0, 2.0, 1e-10);
    CHECK(f(r.lo) * f(r.hi) <= 0.0);
}

TEST_CASE("bisect locates the partial-colouring sign change near 0.029") {
    // plain double-precision evaluation of the depth-1 exponent as a
    // test-local oracle; the certified version lives in the limit module
    auto phi11 = [](double x) {
        const double c = 0.5 * std::log(2.0);
        double T = 1.0 + 2.0 / std::log(2.0) - x;
        double lo = 0.0, hi = 3.0;
        for (int it = 0; it < 100; ++it) {
            double mu = 0.5 * (lo + hi), s = 0.0;
            for (int i = 1; i <= 60; ++i) s += (i - T) * std::exp(mu * i - c * i * i);
            (s > 0 ? hi : lo) = mu;
        }
        double mu = 0.5 * (lo + hi), mass = 0.0;
        for (int i = 1; i <= 60; ++i) mass += std::exp(mu * i - c * i * i);
        double z1 = std::exp(mu - c) / mass;
        return -(1.0 - z1) * std::log(1.0 - z1) + z1 * (c * x - 1.0);
    };
    auto r = bisect(phi11, 0.01, 0.05, 1e-7);
    CHECK(r.root == doctest::Approx(0.02905).epsilon(2e-3));
}

TEST_CASE("newton2 linear systems") {
    auto F1 = [](Vec2 v) -> Vec2 { return {v[0] - 1.0, v[1] - 2.0}; };
    auto J1 = [](Vec2) -> Jac2 { return {1.0, 0.0, 0.0, 1.0}; };
    auto r1 = newton2(F1, J1, {0.0, 0.0}, 1e-14);
    CHECK(r1.x[0] == doctest::Approx(1.0));
    CHECK(r1.x[1] == doctest::Approx(2.0));

    auto F2 = [](Vec2 v) -> Vec2 { return {v[0] + v[1] - 3.0, v[0] - v[1] - 1.0}; };
    auto J2 = [](Vec2) -> Jac2 { return {1.0, 1.0, 1.0, -1.0}; };
    auto r2 = newton2(F2, J2, {0.0, 0.0}, 1e-14);
    CHECK(r2.x[0] == doctest::Approx(2.0));
    CHECK(r2.x[1] == doctest::Approx(1.0));
}

TEST_CASE("newton2 damping on a nonlinear system") {
    // roots of (e^x - 2, x + y) from a poor start; damping must rescue it
    auto F = [](Vec2 v) -> Vec2 { return {std::exp(v[0]) - 2.0, v[0] + v[1]}; };
    auto J = [](Vec2 v) -> Jac2 { return {std::exp(v[0]), 0.0, 1.0, 1.0}; };
    auto r = newton2(F, J, {30.0, -30.0}, 1e-12);
    CHECK(r.x[0] == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("newton2 reports non-convergence") {
    auto F = [](Vec2 v) -> Vec2 { return {v[0] * v[0] + 1.0, v[1]}; };  // no real root
    auto J = [](Vec2 v) -> Jac2 { return {2.0 * v[0], 0.0, 0.0, 1.0}; };
    CHECK_THROWS_AS(newton2(F, J, {1.0, 1.0}, 1e-12, 25), no_convergence);
}
