#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qcal/core.hpp"

using namespace qcal;

namespace {

// Independent oracles: direct summation / explicit products, kept free of the
// library's closed forms.
double bracket_by_sum(int n, double q) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::pow(q, k);
    return s;
}

double plain_factorial_by_product(int n, double q) {
    double p = 1.0;
    for (int k = 1; k <= n; ++k) p *= bracket_by_sum(k, q);
    return p;
}

const double kQGrid[] = {0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 5.0};

}  // namespace

TEST_CASE("QParam validation and regime") {
    CHECK(QParam(0.5).regime() == QRegime::SubOne);
    CHECK(QParam(1.0).regime() == QRegime::One);
    CHECK(QParam(2.0).regime() == QRegime::SuperOne);
    CHECK(QParam(1.0).is_one());
    CHECK_THROWS_AS(QParam(0.0), std::domain_error);
    CHECK_THROWS_AS(QParam(-1.0), std::domain_error);
    CHECK_THROWS_AS(QParam(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("q_bracket") {
    CHECK(q_bracket(3, QParam(1.0)) == 3.0);
    CHECK(q_bracket(0, QParam(0.5)) == 0.0);
    CHECK(q_bracket(3, QParam(2.0)) == 7.0);
    CHECK(q_bracket(1, QParam(0.3)) == 1.0);
    CHECK_THROWS_AS(q_bracket(-1, QParam(0.5)), std::domain_error);

    // long-index closed form agrees with summation
    CHECK(q_bracket(80, QParam(0.5)) ==
          doctest::Approx(bracket_by_sum(80, 0.5)).epsilon(1e-14));
}

TEST_CASE("q_bracket_tilde") {
    CHECK(q_bracket_tilde(2, QParam(2.0)) == doctest::Approx(1.5));
    CHECK(q_bracket_tilde(2, QParam(1.0)) == 2.0);
    CHECK(q_bracket_tilde(3, QParam(0.5)) == doctest::Approx(7.0));

    // [n~]_q = [n]_{1/q} for all n <= 30
    for (double q : kQGrid)
        for (int n = 0; n <= 30; ++n) {
            const double lhs = q_bracket_tilde(n, QParam(q));
            const double rhs = q_bracket(n, QParam(1.0 / q));
            CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(rhs)));
        }
}

TEST_CASE("brace_bracket") {
    for (double q : kQGrid) CHECK(brace_bracket(1, QParam(q)) == 1.0);
    CHECK(brace_bracket(2, QParam(7.0)) == 2.0);
    CHECK(brace_bracket(3, QParam(2.0)) == doctest::Approx(2.8).epsilon(1e-15));
    CHECK(brace_bracket(5, QParam(1.0)) == 5.0);
    CHECK_THROWS_AS(brace_bracket(0, QParam(0.5)), std::domain_error);

    // {2}_q = 2 exactly for every q
    for (double q : kQGrid) CHECK(brace_bracket(2, QParam(q)) == 2.0);

    // {n} (1 + q^{n-1})/2 = [n]
    for (double q : kQGrid)
        for (int n = 1; n <= 30; ++n) {
            const double lhs =
                brace_bracket(n, QParam(q)) * 0.5 * (1.0 + std::pow(q, n - 1));
            const double rhs = q_bracket(n, QParam(q));
            CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(rhs)));
        }

    // {n}_q = {n}_{1/q}
    for (double q : kQGrid)
        for (int n = 1; n <= 30; ++n) {
            const double lhs = brace_bracket(n, QParam(q));
            const double rhs = brace_bracket(n, QParam(1.0 / q));
            CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
        }
}

TEST_CASE("q_factorial") {
    CHECK(q_factorial(0, QParam(0.5), BracketKind::Plain).value == 1.0);
    CHECK(q_factorial(3, QParam(2.0), BracketKind::Plain).value ==
          doctest::Approx(21.0));
    CHECK(q_factorial(3, QParam(2.0), BracketKind::Tilde).value ==
          doctest::Approx(2.625));

    // tilde relation: [n~]! = q^{(1-n)n/2} [n]!, oracle side built by hand
    for (double q : kQGrid)
        for (int n = 0; n <= 20; ++n) {
            const double lhs = q_factorial(n, QParam(q), BracketKind::Tilde).value;
            const double rhs =
                std::pow(q, 0.5 * (1.0 - n) * n) * plain_factorial_by_product(n, q);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }

    // q = 1 is exact: [n]! = n!
    CHECK(q_factorial(10, QParam(1.0), BracketKind::Plain).value == 3628800.0);

    SUBCASE("overflow is reported") {
        const FactorialValue f = q_factorial(200, QParam(5.0), BracketKind::Plain);
        CHECK(f.overflow);
        CHECK(std::isinf(f.value));
        CHECK_FALSE(q_factorial(20, QParam(5.0), BracketKind::Plain).overflow);
    }
}

TEST_CASE("gauss_binomial") {
    for (double q : kQGrid) CHECK(gauss_binomial(4, 0, QParam(q)) == 1.0);
    CHECK(gauss_binomial(2, 1, QParam(2.0)) == doctest::Approx(3.0));

    // n=4, j=2, q=0.5 against the direct bracket-product oracle
    const double expected = plain_factorial_by_product(4, 0.5) /
                            (plain_factorial_by_product(2, 0.5) *
                             plain_factorial_by_product(2, 0.5));
    CHECK(gauss_binomial(4, 2, QParam(0.5)) == doctest::Approx(expected));

    // symmetry j <-> n-j
    for (double q : kQGrid)
        for (int n = 0; n <= 12; ++n)
            for (int j = 0; j <= n; ++j)
                CHECK(gauss_binomial(n, j, QParam(q)) ==
                      doctest::Approx(gauss_binomial(n, n - j, QParam(q)))
                          .epsilon(1e-13));

    CHECK_THROWS_AS(gauss_binomial(3, 4, QParam(0.5)), std::domain_error);
    CHECK_THROWS_AS(gauss_binomial(3, -1, QParam(0.5)), std::domain_error);
}

TEST_CASE("gauss_binomial_sum") {
    CHECK(gauss_binomial_sum(0, QParam(0.5)) == 1.0);
    CHECK(gauss_binomial_sum(2, QParam(2.0)) == doctest::Approx(6.0));
    CHECK(gauss_binomial_sum(3, QParam(0.5)) == doctest::Approx(3.75));

    // equals prod_{k=0}^{n-1} (1 + q^k)
    for (double q : {0.3, 0.5, 2.0, 5.0})
        for (int n = 0; n <= 20; ++n) {
            double prod = 1.0;
            for (int k = 0; k < n; ++k) prod *= 1.0 + std::pow(q, k);
            const double sum = gauss_binomial_sum(n, QParam(q));
            CHECK(std::abs(sum - prod) <= 1e-12 * (1.0 + prod));
        }
}

TEST_CASE("jackson_derivative") {
    const QParam q2(2.0);
    GridFunction identity = [](const Complex& z) { return z; };
    GridFunction square = [](const Complex& z) { return z * z; };

    CHECK(jackson_derivative(identity, Complex(3.0, -1.0), q2) ==
          Complex(1.0, 0.0));
    CHECK(jackson_derivative(square, Complex(1.0, 0.0), q2) == Complex(3.0, 0.0));

    // D_q z^n = [n] z^{n-1} at random nonzero complex points
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double q : {0.5, 2.0})
        for (int i = 0; i < 10; ++i) {
            Complex z(u(rng), u(rng));
            if (std::abs(z) < 0.1) z += Complex(0.5, 0.5);
            for (int n = 1; n <= 6; ++n) {
                GridFunction mono = [n](const Complex& w) {
                    return std::pow(w, n);
                };
                const Complex lhs = jackson_derivative(mono, z, QParam(q));
                const Complex rhs =
                    q_bracket(n, QParam(q)) * std::pow(z, n - 1);
                CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
            }
        }

    CHECK_THROWS_AS(jackson_derivative(identity, Complex(1.0, 0.0), QParam(1.0)),
                    std::domain_error);
    CHECK_THROWS_AS(jackson_derivative(identity, Complex(0.0, 0.0), q2),
                    std::domain_error);
}

TEST_CASE("average_operator") {
    GridFunction constant = [](const Complex&) { return Complex(4.5, 0.0); };
    GridFunction identity = [](const Complex& z) { return z; };
    GridFunction square = [](const Complex& z) { return z * z; };

    CHECK(average_operator(constant, Complex(2.0, 1.0), QParam(0.7)) ==
          Complex(4.5, 0.0));
    CHECK(average_operator(identity, Complex(1.0, 0.0), QParam(3.0)) ==
          Complex(2.0, 0.0));
    CHECK(average_operator(square, Complex(1.0, 0.0), QParam(2.0)) ==
          Complex(2.5, 0.0));
}
