// q-exponential evaluators: the two standard deformations (small e_q and big
// E_q), the improved Cayley-product exponential, and the step recurrence that
// advances it along the geometric grid z -> qz.
//
// Every evaluator returns an EvalResult with convergence diagnostics instead
// of a bare value. q > 1 is always reduced to 1/q through the dualities
// E_q = e_{1/q} and the improved exponential's q <-> 1/q symmetry, so all
// infinite products run with geometrically decaying factors.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qcal/core.hpp"

namespace qcal {

enum class Method { Auto, Series, Product };

enum class EvalStatus { Converged, CapReached, Pole, OutsideDomain };

struct EvalConfig {
    double rel_tol = 1e-14;  // relative truncation tolerance
    int max_terms = 512;     // series cap
    int max_factors = 2048;  // product cap
    Method method = Method::Auto;
};

struct EvalResult {
    Complex value{0.0, 0.0};
    int terms_used = 0;
    double err_estimate = 0.0;
    EvalStatus status = EvalStatus::Converged;

    bool converged() const noexcept { return status == EvalStatus::Converged; }
};

inline const char* to_string(EvalStatus s) {
    switch (s) {
        case EvalStatus::Converged: return "Converged";
        case EvalStatus::CapReached: return "CapReached";
        case EvalStatus::Pole: return "Pole";
        case EvalStatus::OutsideDomain: return "OutsideDomain";
    }
    return "?";
}

/// Analyticity disc of the improved exponential's power series.
struct ConvergenceDisc {
    double radius;  // +infinity at q = 1
    double q;
};

/// R_q = 2/(1-q) for q < 1, 2q/(q-1) for q > 1, infinite at q = 1.
/// Satisfies R_{1/q} = R_q.
inline ConvergenceDisc radius_of_convergence(const QParam& q) {
    const double qv = q.value();
    double r;
    switch (q.regime()) {
        case QRegime::SubOne: r = 2.0 / (1.0 - qv); break;
        case QRegime::SuperOne: r = 2.0 * qv / (qv - 1.0); break;
        default: r = std::numeric_limits<double>::infinity(); break;
    }
    return {r, qv};
}

namespace detail {

constexpr double kAbsFloor = 1e-300;

// The power series loses accuracy long before its disc boundary when R_q is
// large (q near 1): terms grow to ~e^|z| before cancelling, so the absolute
// rounding error is ~eps * e^|z|. Auto hands arguments beyond this cap to the
// product, whose factor-wise relative error is scale-independent.
constexpr double kSeriesConditioningCap = 4.0;

inline EvalResult classical_exp(const Complex& z) {
    return {std::exp(z), 0, 0.0, EvalStatus::Converged};
}

// Shared series kernel: sum of z^n / (b(1) b(2) ... b(n)) where b(n) is the
// bracket generating the factorial. Stops when the freshly added term is
// below rel_tol relative to the partial sum. Terms can grow to ~e^|z| before
// cancelling, so the recurrence and the sum run in extended precision to keep
// the absolute rounding error below the double-precision result.
template <typename BracketFn>
EvalResult bracket_series(const Complex& z, const EvalConfig& cfg, BracketFn b) {
    using LComplex = std::complex<long double>;
    const LComplex zl(z.real(), z.imag());
    LComplex sum{1.0L, 0.0L};
    LComplex term{1.0L, 0.0L};
    for (int n = 1; n <= cfg.max_terms; ++n) {
        term *= zl / static_cast<long double>(b(n));
        sum += term;
        const double mag = static_cast<double>(std::abs(term));
        if (mag <= cfg.rel_tol * static_cast<double>(std::abs(sum)) ||
            mag < kAbsFloor)
            return {Complex(double(sum.real()), double(sum.imag())), n, mag,
                    EvalStatus::Converged};
    }
    return {Complex(double(sum.real()), double(sum.imag())), cfg.max_terms,
            static_cast<double>(std::abs(term)), EvalStatus::CapReached};
}

}  // namespace detail

EvalResult exp_big_product(const Complex& z, const QParam& q, const EvalConfig& cfg);

/// Small q-exponential e_q by power series: sum z^n / [n]!.
/// Entire for q >= 1; for q < 1 the series converges only in |z| < 1/(1-q)
/// (the nearest pole of the product representation).
inline EvalResult exp_small_series(const Complex& z, const QParam& q,
                                   const EvalConfig& cfg = {}) {
    if (q.regime() == QRegime::SubOne &&
        std::abs(z) >= 1.0 / (1.0 - q.value()))
        return {Complex{}, 0, 0.0, EvalStatus::OutsideDomain};
    return detail::bracket_series(z, cfg, [&](int n) { return q_bracket(n, q); });
}

/// Small q-exponential by infinite product: prod (1 - (1-q) q^k z)^{-1}.
/// q > 1 routes through e_q = E_{1/q}; q = 1 falls back to exp.
inline EvalResult exp_small_product(const Complex& z, const QParam& q,
                                    const EvalConfig& cfg = {}) {
    if (q.is_one()) return detail::classical_exp(z);
    if (q.regime() == QRegime::SuperOne)
        return exp_big_product(z, q.reciprocal(), cfg);

    const double a = 1.0 - q.value();
    const double pole_tol = 1e-14 * (1.0 + std::abs(z));
    Complex prod{1.0, 0.0};
    double qk = 1.0;
    for (int k = 0; k < cfg.max_factors; ++k) {
        const Complex u = (a * qk) * z;
        const double umag = std::abs(u);
        if (umag < cfg.rel_tol)
            return {prod, k, umag * std::abs(prod), EvalStatus::Converged};
        const Complex denom = 1.0 - u;
        if (std::abs(denom) < pole_tol)
            return {prod, k, 0.0, EvalStatus::Pole};
        prod /= denom;
        qk *= q.value();
    }
    return {prod, cfg.max_factors, std::abs((a * qk) * z) * std::abs(prod),
            EvalStatus::CapReached};
}

/// Big q-exponential E_q by series, via E_q = e_{1/q}.
/// Entire for q <= 1; for q > 1 valid in |z| < q/(q-1).
inline EvalResult exp_big_series(const Complex& z, const QParam& q,
                                 const EvalConfig& cfg = {}) {
    if (q.is_one()) return exp_small_series(z, q, cfg);
    return exp_small_series(z, q.reciprocal(), cfg);
}

/// Big q-exponential by infinite product: prod (1 + (1-q) q^k z). No poles.
inline EvalResult exp_big_product(const Complex& z, const QParam& q,
                                  const EvalConfig& cfg) {
    if (q.is_one()) return detail::classical_exp(z);
    if (q.regime() == QRegime::SuperOne)
        return exp_small_product(z, q.reciprocal(), cfg);

    const double a = 1.0 - q.value();
    Complex prod{1.0, 0.0};
    double qk = 1.0;
    for (int k = 0; k < cfg.max_factors; ++k) {
        const Complex u = (a * qk) * z;
        const double umag = std::abs(u);
        if (umag < cfg.rel_tol)
            return {prod, k, umag * std::abs(prod), EvalStatus::Converged};
        prod *= 1.0 + u;
        qk *= q.value();
    }
    return {prod, cfg.max_factors, std::abs((a * qk) * z) * std::abs(prod),
            EvalStatus::CapReached};
}

inline EvalResult exp_big_product(const Complex& z, const QParam& q) {
    return exp_big_product(z, q, EvalConfig{});
}

/// Improved exponential by power series: sum z^n / {n}!.
/// Refuses |z| >= R_q for q != 1 (OutsideDomain).
inline EvalResult exp_improved_series(const Complex& z, const QParam& q,
                                      const EvalConfig& cfg = {}) {
    if (!q.is_one() && std::abs(z) >= radius_of_convergence(q).radius)
        return {Complex{}, 0, 0.0, EvalStatus::OutsideDomain};
    return detail::bracket_series(z, cfg,
                                  [&](int n) { return brace_bracket(n, q); });
}

/// Improved exponential by its Cayley-factor product:
/// prod (1 + q^k (1-q) z/2) / (1 - q^k (1-q) z/2).
/// Converges wherever the factors do (q < 1: all z off the real pole set,
/// in particular on the whole imaginary axis). q > 1 reduces to 1/q.
inline EvalResult exp_improved_product(const Complex& z, const QParam& q,
                                       const EvalConfig& cfg = {}) {
    if (q.is_one()) return detail::classical_exp(z);
    if (q.regime() == QRegime::SuperOne)
        return exp_improved_product(z, q.reciprocal(), cfg);

    const double a = 1.0 - q.value();
    const double pole_tol = 1e-14 * (1.0 + std::abs(z));
    Complex prod{1.0, 0.0};
    double qk = 1.0;
    for (int k = 0; k < cfg.max_factors; ++k) {
        const Complex h = (0.5 * a * qk) * z;
        const double hmag = std::abs(h);
        if (hmag < cfg.rel_tol)
            return {prod, k, 2.0 * hmag * std::abs(prod), EvalStatus::Converged};
        const Complex denom = 1.0 - h;
        if (std::abs(denom) < pole_tol)
            return {prod, k, 0.0, EvalStatus::Pole};
        prod *= (1.0 + h) / denom;
        qk *= q.value();
    }
    return {prod, cfg.max_factors,
            2.0 * std::abs((0.5 * a * qk) * z) * std::abs(prod),
            EvalStatus::CapReached};
}

/// Improved exponential dispatcher. Auto picks the exact classical branch at
/// q = 1, the series inside 0.75 R_q, and the product beyond (the product is
/// the defining extension outside the disc).
inline EvalResult exp_improved(const Complex& z, const QParam& q,
                               const EvalConfig& cfg = {}) {
    switch (cfg.method) {
        case Method::Series: return exp_improved_series(z, q, cfg);
        case Method::Product: return exp_improved_product(z, q, cfg);
        case Method::Auto: break;
    }
    if (q.is_one()) return detail::classical_exp(z);
    if (std::abs(z) < std::min(0.75 * radius_of_convergence(q).radius,
                               detail::kSeriesConditioningCap))
        return exp_improved_series(z, q, cfg);
    return exp_improved_product(z, q, cfg);
}

/// Small q-exponential dispatcher (same Auto policy against the e_q series
/// disc; for q >= 1 the series is entire and preferred).
inline EvalResult exp_small(const Complex& z, const QParam& q,
                            const EvalConfig& cfg = {}) {
    switch (cfg.method) {
        case Method::Series: return exp_small_series(z, q, cfg);
        case Method::Product: return exp_small_product(z, q, cfg);
        case Method::Auto: break;
    }
    if (q.is_one()) return detail::classical_exp(z);
    double series_limit = detail::kSeriesConditioningCap;
    if (q.regime() == QRegime::SubOne)
        series_limit = std::min(series_limit, 0.75 / (1.0 - q.value()));
    if (std::abs(z) < series_limit) return exp_small_series(z, q, cfg);
    return exp_small_product(z, q, cfg);
}

/// Big q-exponential dispatcher, E_q = e_{1/q}.
inline EvalResult exp_big(const Complex& z, const QParam& q,
                          const EvalConfig& cfg = {}) {
    switch (cfg.method) {
        case Method::Series: return exp_big_series(z, q, cfg);
        case Method::Product: return exp_big_product(z, q, cfg);
        case Method::Auto: break;
    }
    if (q.is_one()) return detail::classical_exp(z);
    return exp_small(z, q.reciprocal(), cfg);
}

/// Cayley transform cay(z, a) = (1 + a z) / (1 - a z).
inline Complex cayley(const Complex& z, double a) {
    const Complex denom = 1.0 - a * z;
    if (std::abs(denom) < 1e-14 * (1.0 + std::abs(a) * std::abs(z)))
        throw std::domain_error("cayley: pole at a z = 1");
    return (1.0 + a * z) / denom;
}

/// One step of the improved exponential's recurrence: given the value at z,
/// returns the value at qz via cay(-z/2, 1-q).
inline Complex cayley_step(const Complex& value_at_z, const Complex& z,
                           const QParam& q) {
    return cayley(-0.5 * z, 1.0 - q.value()) * value_at_z;
}

}  // namespace qcal
