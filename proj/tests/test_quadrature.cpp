#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "dlpgal/quadrature.hpp"

using namespace dlpgal;

namespace {

double integrate(const ScaledRule& rule, const std::function<double(double)>& f) {
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

}  // namespace

TEST_CASE("one-point rule is the midpoint rule", "[quadrature]") {
    GaussRule rule = gauss_legendre(1);
    REQUIRE(rule.size() == 1);
    CHECK(rule.nodes[0] == 0.0);
    CHECK(rule.weights[0] == 2.0);
}

TEST_CASE("two-point rule has the classical nodes", "[quadrature]") {
    GaussRule rule = gauss_legendre(2);
    const double x = 1.0 / std::sqrt(3.0);
    CHECK_THAT(rule.nodes[0], Catch::Matchers::WithinAbs(-x, 1e-15));
    CHECK_THAT(rule.nodes[1], Catch::Matchers::WithinAbs(x, 1e-15));
    CHECK_THAT(rule.weights[0], Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(rule.weights[1], Catch::Matchers::WithinAbs(1.0, 1e-15));
    // cross-check via the moment equations: sum w = 2, sum w x^2 = 2/3
    CHECK_THAT(rule.weights[0] * rule.nodes[0] * rule.nodes[0] +
                   rule.weights[1] * rule.nodes[1] * rule.nodes[1],
               Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
}

TEST_CASE("rule structure: weight sum, ordering, symmetry", "[quadrature]") {
    for (int r : {3, 8, 24, 25}) {
        GaussRule rule = gauss_legendre(r);
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(2.0, 1e-14));
        for (int i = 1; i < r; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (int i = 0; i < r; ++i) {
            CHECK(rule.nodes[i] == -rule.nodes[r - 1 - i]);
            CHECK_THAT(rule.weights[i], Catch::Matchers::WithinAbs(rule.weights[r - 1 - i], 1e-15));
        }
    }
}

TEST_CASE("monomials up to degree 2r-1 are integrated exactly", "[quadrature]") {
    for (int r : {2, 6, 24}) {
        GaussRule rule = gauss_legendre(r);
        for (int k = 0; k <= 2 * r - 1; ++k) {
            double sum = 0.0;
            for (int i = 0; i < r; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;  // moments of [-1,1]
            CHECK_THAT(sum, Catch::Matchers::WithinAbs(exact, 1e-12));
        }
    }
}

TEST_CASE("24-point rule reproduces the degree-46 moment", "[quadrature]") {
    ScaledRule rule = scaled_rule(gauss_legendre(24), -1.0, 1.0);
    const double got = integrate(rule, [](double x) { return std::pow(x, 46); });
    CHECK_THAT(got, Catch::Matchers::WithinAbs(2.0 / 47.0, 1e-12));
}

TEST_CASE("invalid rule sizes are rejected", "[quadrature]") {
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(-3), std::invalid_argument);
}

TEST_CASE("scaled rule maps the interval affinely", "[quadrature]") {
    ScaledRule mid = scaled_rule(gauss_legendre(1), 0.0, 1.0);
    CHECK(mid.nodes[0] == 0.5);
    CHECK(mid.weights[0] == 1.0);

    // weight sum equals the interval length
    const int n = 8, d = 2, j = 3;
    ScaledRule sup = scaled_rule(gauss_legendre(24), double(j) / n, double(j + d + 1) / n);
    double sum = 0.0;
    for (double w : sup.weights) sum += w;
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(double(d + 1) / n, 1e-15));

    ScaledRule unit = scaled_rule(gauss_legendre(2), 0.0, 1.0);
    CHECK_THAT(integrate(unit, [](double s) { return s * s * s; }),
               Catch::Matchers::WithinAbs(0.25, 1e-15));

    CHECK_THROWS_AS(scaled_rule(gauss_legendre(2), 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(scaled_rule(gauss_legendre(2), 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("composite rule on [0,1]", "[quadrature]") {
    CompositeRule rule = composite_rule(40, 24);
    CHECK(rule.size() == 960);

    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-14));

    double s = 0.0;
    for (int i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::sin(2 * M_PI * rule.nodes[i]);
    CHECK_THAT(s, Catch::Matchers::WithinAbs(0.0, 1e-14));

    CHECK_THROWS_AS(composite_rule(0, 24), std::invalid_argument);
}

TEST_CASE("composite rule is exact for panel-wise polynomials", "[quadrature]") {
    const int m = 5, r = 24;
    CompositeRule rule = composite_rule(m, r);
    // local monomial u^k on every panel, u = m s - l; integral is 1/(k+1)
    for (int k : {0, 3, 17, 2 * r - 1}) {
        double sum = 0.0;
        for (int i = 0; i < rule.size(); ++i) {
            const double u = m * rule.nodes[i] - std::floor(m * rule.nodes[i]);
            sum += rule.weights[i] * std::pow(u, k);
        }
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0 / (k + 1), 1e-12));
    }
}

TEST_CASE("composite nodes stay strictly inside their panels", "[quadrature]") {
    for (int m : {4, 40}) {
        CompositeRule rule = composite_rule(m, 24);
        for (double s : rule.nodes) {
            const double u = m * s - std::floor(m * s);
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }
}
