// Building blocks of the q-calculus layer: the deformation parameter,
// q-brackets and their factorials, Gauss binomial coefficients, the Jackson
// q-derivative and the two-point averaging operator.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace qcal {

using Complex = std::complex<double>;

enum class QRegime { SubOne, One, SuperOne };

/// Validated deformation parameter q > 0.
class QParam {
public:
    explicit QParam(double q) : q_(q) {
        if (!std::isfinite(q) || q <= 0.0)
            throw std::domain_error("QParam: q must be positive and finite");
    }

    double value() const noexcept { return q_; }

    QRegime regime() const noexcept {
        if (q_ < 1.0) return QRegime::SubOne;
        if (q_ > 1.0) return QRegime::SuperOne;
        return QRegime::One;
    }

    bool is_one() const noexcept { return q_ == 1.0; }

    QParam reciprocal() const { return QParam(1.0 / q_); }

private:
    double q_;
};

enum class BracketKind { Plain, Tilde, Brace };

// q = 1 is handled as an exact branch everywhere below: brackets equal n and
// factorials equal n!, never a numerical limit of (1-q^n)/(1-q).

/// q-bracket [n] = 1 + q + ... + q^{n-1}; [0] = 0.
inline double q_bracket(int n, const QParam& q) {
    if (n < 0) throw std::domain_error("q_bracket: n must be non-negative");
    if (q.is_one()) return static_cast<double>(n);
    const double qv = q.value();
    if (n <= 64) {
        double sum = 0.0, p = 1.0;
        for (int k = 0; k < n; ++k) {
            sum += p;
            p *= qv;
        }
        return sum;
    }
    return (1.0 - std::pow(qv, n)) / (1.0 - qv);
}

/// Tilde bracket: the q-bracket evaluated at 1/q.
inline double q_bracket_tilde(int n, const QParam& q) {
    return q_bracket(n, q.reciprocal());
}

/// Improved bracket {n} = [n] / (1/2 (1 + q^{n-1})), n >= 1.
/// {n}_q = {n}_{1/q}, and {2} = 2 for every q.
inline double brace_bracket(int n, const QParam& q) {
    if (n < 1) throw std::domain_error("brace_bracket: n must be positive");
    if (q.is_one()) return static_cast<double>(n);
    const double qv = q.value();
    // The [n]/(half-sum) form avoids the 0/0 of 2(1-q^n)/((1-q)(1+q^{n-1}))
    // near q = 1.
    return q_bracket(n, q) / (0.5 * (1.0 + std::pow(qv, n - 1)));
}

inline double bracket(int n, const QParam& q, BracketKind kind) {
    switch (kind) {
        case BracketKind::Plain: return q_bracket(n, q);
        case BracketKind::Tilde: return q_bracket_tilde(n, q);
        case BracketKind::Brace: return brace_bracket(n, q);
    }
    throw std::logic_error("bracket: bad kind");
}

/// q-factorial of the chosen bracket kind; value plus an overflow flag.
struct FactorialValue {
    double value = 1.0;
    bool overflow = false;
};

/// [n]! (or the tilde/brace analogue). Empty product for n = 0.
/// Overflow past the double range is reported, not silently saturated.
inline FactorialValue q_factorial(int n, const QParam& q, BracketKind kind) {
    if (n < 0) throw std::domain_error("q_factorial: n must be non-negative");
    FactorialValue r;
    for (int k = 1; k <= n; ++k) {
        r.value *= bracket(k, q, kind);
        if (std::isinf(r.value)) {
            r.overflow = true;
            break;
        }
    }
    return r;
}

/// Gauss binomial coefficient [n]! / ([j]! [n-j]!); symmetric in j <-> n-j.
inline double gauss_binomial(int n, int j, const QParam& q) {
    if (n < 0 || j < 0 || j > n)
        throw std::domain_error("gauss_binomial: need 0 <= j <= n");
    const double num = q_factorial(n, q, BracketKind::Plain).value;
    const double dj = q_factorial(j, q, BracketKind::Plain).value;
    const double dnj = q_factorial(n - j, q, BracketKind::Plain).value;
    return num / (dj * dnj);
}

/// Sum_{j=0}^{n} q^{j(j-1)/2} [n choose j]_q; equals (1+1)(1+q)...(1+q^{n-1}).
inline double gauss_binomial_sum(int n, const QParam& q) {
    if (n < 0) throw std::domain_error("gauss_binomial_sum: n must be non-negative");
    const double qv = q.value();
    double sum = 0.0;
    for (int j = 0; j <= n; ++j)
        sum += std::pow(qv, 0.5 * j * (j - 1)) * gauss_binomial(n, j, q);
    return sum;
}

/// A function sampled on the geometric grid {z, qz}.
using GridFunction = std::function<Complex(const Complex&)>;

/// Jackson q-derivative (f(qz) - f(z)) / (qz - z). Degenerates at q = 1 and
/// z = 0; those are domain errors for the caller to avoid.
inline Complex jackson_derivative(const GridFunction& f, const Complex& z,
                                  const QParam& q) {
    if (q.is_one())
        throw std::domain_error("jackson_derivative: q = 1 degenerates the quotient");
    if (z == Complex(0.0, 0.0))
        throw std::domain_error("jackson_derivative: z = 0 degenerates the quotient");
    const Complex qz = q.value() * z;
    return (f(qz) - f(z)) / (qz - z);
}

/// Averaging operator <f>(z) = (f(z) + f(qz)) / 2.
inline Complex average_operator(const GridFunction& f, const Complex& z,
                                const QParam& q) {
    return 0.5 * (f(z) + f(q.value() * z));
}

}  // namespace qcal
