// q-trigonometric functions. Two families:
//   standard: sin/cos from e_q and Sin/Cos from E_q, plus tan,
//   improved:  Sin/Cos built from the improved exponential, which are real
//              and bounded by 1 on the real axis and satisfy the Pythagorean
//              identity.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "qcal/exp.hpp"

namespace qcal {

struct TrigValue {
    Complex value{0.0, 0.0};
    EvalStatus status = EvalStatus::Converged;
    // Imaginary part observed before truncation when the argument is real.
    double imag_residue = 0.0;
    double err_estimate = 0.0;
    int terms_used = 0;
};

namespace detail {

inline EvalStatus worse(EvalStatus a, EvalStatus b) {
    auto rank = [](EvalStatus s) {
        switch (s) {
            case EvalStatus::Converged: return 0;
            case EvalStatus::CapReached: return 1;
            case EvalStatus::OutsideDomain: return 2;
            case EvalStatus::Pole: return 3;
        }
        return 3;
    };
    return rank(a) >= rank(b) ? a : b;
}

constexpr double kRealnessTol = 1e-12;

// Assembles (A - B)/2i or (A + B)/2 from the exponential values at +ix and
// -ix. For real x the imaginary residue is recorded and, when below
// 1e-12 (1+|value|), truncated; a larger residue is left visible rather than
// masked.
inline TrigValue combine(const EvalResult& plus, const EvalResult& minus,
                         bool sine, bool real_argument) {
    TrigValue out;
    out.status = worse(plus.status, minus.status);
    out.terms_used = plus.terms_used + minus.terms_used;
    out.err_estimate = 0.5 * (plus.err_estimate + minus.err_estimate);
    if (out.status == EvalStatus::Pole || out.status == EvalStatus::OutsideDomain)
        return out;
    out.value = sine ? (plus.value - minus.value) / Complex(0.0, 2.0)
                     : 0.5 * (plus.value + minus.value);
    if (real_argument) {
        out.imag_residue = std::abs(out.value.imag());
        if (out.imag_residue <= kRealnessTol * (1.0 + std::abs(out.value)))
            out.value = Complex(out.value.real(), 0.0);
    }
    return out;
}

// Domain guard for the standard family: the e_q side has poles at
// |argument| = 1/(1-q) for q < 1; the E_q side inherits the same bound at
// 1/q when q > 1. Beyond it we refuse instead of extrapolating.
inline bool standard_small_in_domain(const Complex& x, const QParam& q) {
    return q.regime() != QRegime::SubOne ||
           std::abs(x) < 1.0 / (1.0 - q.value());
}

inline bool standard_big_in_domain(const Complex& x, const QParam& q) {
    return q.regime() != QRegime::SuperOne ||
           std::abs(x) < q.value() / (q.value() - 1.0);
}

}  // namespace detail

/// sin_q from the small exponential: (e_q^{ix} - e_q^{-ix}) / 2i.
inline TrigValue sin_small(const Complex& x, const QParam& q,
                           const EvalConfig& cfg = {}) {
    if (!detail::standard_small_in_domain(x, q))
        return {Complex{}, EvalStatus::OutsideDomain, 0.0, 0};
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_small(ix, q, cfg), exp_small(-ix, q, cfg),
                           true, x.imag() == 0.0);
}

inline TrigValue cos_small(const Complex& x, const QParam& q,
                           const EvalConfig& cfg = {}) {
    if (!detail::standard_small_in_domain(x, q))
        return {Complex{}, EvalStatus::OutsideDomain, 0.0, 0};
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_small(ix, q, cfg), exp_small(-ix, q, cfg),
                           false, x.imag() == 0.0);
}

/// Sin_q from the big exponential: (E_q^{ix} - E_q^{-ix}) / 2i.
inline TrigValue sin_big(const Complex& x, const QParam& q,
                         const EvalConfig& cfg = {}) {
    if (!detail::standard_big_in_domain(x, q))
        return {Complex{}, EvalStatus::OutsideDomain, 0.0, 0};
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_big(ix, q, cfg), exp_big(-ix, q, cfg),
                           true, x.imag() == 0.0);
}

inline TrigValue cos_big(const Complex& x, const QParam& q,
                         const EvalConfig& cfg = {}) {
    if (!detail::standard_big_in_domain(x, q))
        return {Complex{}, EvalStatus::OutsideDomain, 0.0, 0};
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_big(ix, q, cfg), exp_big(-ix, q, cfg),
                           false, x.imag() == 0.0);
}

/// tan_q = sin_q / cos_q; coincides with Sin_q / Cos_q wherever both exist.
inline TrigValue tan_small(const Complex& x, const QParam& q,
                           const EvalConfig& cfg = {}) {
    const TrigValue s = sin_small(x, q, cfg);
    const TrigValue c = cos_small(x, q, cfg);
    TrigValue out;
    out.status = detail::worse(s.status, c.status);
    out.terms_used = s.terms_used + c.terms_used;
    if (out.status == EvalStatus::Pole || out.status == EvalStatus::OutsideDomain)
        return out;
    if (std::abs(c.value) < 1e-13) {
        out.status = EvalStatus::Pole;
        return out;
    }
    out.value = s.value / c.value;
    if (x.imag() == 0.0) {
        out.imag_residue = std::abs(out.value.imag());
        if (out.imag_residue <= detail::kRealnessTol * (1.0 + std::abs(out.value)))
            out.value = Complex(out.value.real(), 0.0);
    }
    return out;
}

/// Improved q-sine: (E^{ix} - E^{-ix}) / 2i with E the improved exponential.
/// Real and bounded by 1 for real x.
inline TrigValue sin_improved(const Complex& x, const QParam& q,
                              const EvalConfig& cfg = {}) {
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_improved(ix, q, cfg), exp_improved(-ix, q, cfg),
                           true, x.imag() == 0.0);
}

inline TrigValue cos_improved(const Complex& x, const QParam& q,
                              const EvalConfig& cfg = {}) {
    const Complex ix{-x.imag(), x.real()};
    return detail::combine(exp_improved(ix, q, cfg), exp_improved(-ix, q, cfg),
                           false, x.imag() == 0.0);
}

}  // namespace qcal
