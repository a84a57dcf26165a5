#include "qcal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "qcal/exp.hpp"
#include "qcal/trig.hpp"

namespace qcal::verify {
namespace {

const std::vector<double> kQAll = {0.3, 0.5, 0.9, 2.0, 5.0};
const std::vector<double> kQNoOne = kQAll;  // 1 is excluded from D_q grids anyway

constexpr int kPointsPerIdentity = 200;

// Linear tolerance slope for the classical-limit check on |z| <= 1. The
// measured deviation is quadratic, about 0.03 (q-1)^2, so 0.01 |q-1| bounds
// it comfortably on the whole admitted range |q-1| < 0.1.
constexpr double kClassicalLimitSlope = 0.01;

double rel_res(const Complex& lhs, const Complex& rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

// Convergence domain of the standard trig family on the real axis: limited
// by the e_q series for q < 1 and by the E_q (= e_{1/q}) series for q > 1.
double standard_domain(double q) {
    return q < 1.0 ? 1.0 / (1.0 - q) : q / (q - 1.0);
}

struct NotConverged {};

Complex need(const EvalResult& r) {
    if (!r.converged()) throw NotConverged{};
    return r.value;
}

Complex need(const TrigValue& r) {
    if (r.status != EvalStatus::Converged) throw NotConverged{};
    return r.value;
}

// ---- grid builders ------------------------------------------------------

std::uint64_t mix(std::uint64_t seed, const char* id) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (const char* p = id; *p; ++p) h = (h ^ std::uint64_t(*p)) * 1099511628211ull;
    return h;
}

using GridBuilder = std::function<std::vector<GridPoint>(std::uint64_t)>;

// Integer index points n = 1..nmax for each q.
GridBuilder integer_grid(int nmax, std::vector<double> qs) {
    return [=](std::uint64_t) {
        std::vector<GridPoint> g;
        for (double q : qs)
            for (int n = 1; n <= nmax; ++n)
                g.push_back({Complex(double(n), 0.0), q});
        return g;
    };
}

// Real x drawn uniformly from +-[lo(q), hi(q)].
GridBuilder real_grid(std::vector<double> qs,
                      std::function<double(double)> lo,
                      std::function<double(double)> hi) {
    return [=](std::uint64_t seed) {
        std::vector<GridPoint> g;
        const int per_q = kPointsPerIdentity / int(qs.size());
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double q : qs) {
            const double a = lo(q), b = hi(q);
            for (int i = 0; i < per_q; ++i) {
                const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
                g.push_back({Complex(sign * (a + (b - a) * u(rng)), 0.0), q});
            }
        }
        return g;
    };
}

// Random complex z with lo(q) <= |z| <= hi(q), off the real axis.
GridBuilder complex_grid(std::vector<double> qs,
                         std::function<double(double)> lo,
                         std::function<double(double)> hi) {
    return [=](std::uint64_t seed) {
        std::vector<GridPoint> g;
        const int per_q = kPointsPerIdentity / int(qs.size());
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (double q : qs) {
            const double b = hi(q);
            const double a = std::min(lo(q), 0.5 * b);
            int made = 0;
            while (made < per_q) {
                Complex z(b * u(rng), b * u(rng));
                const double m = std::abs(z);
                if (m < a || m > b || std::abs(z.imag()) < 1e-3 * b) continue;
                g.push_back({z, q});
                ++made;
            }
        }
        return g;
    };
}

// ---- residual functions -------------------------------------------------

using ResidualFn = std::function<std::optional<double>(const GridPoint&)>;

std::optional<double> factorial_tilde_res(const GridPoint& p) {
    const QParam q(p.q);
    const int n = int(p.arg.real());
    const double lhs = q_factorial(n, q, BracketKind::Tilde).value;
    const double rhs =
        std::pow(p.q, 0.5 * (1.0 - n) * n) * q_factorial(n, q, BracketKind::Plain).value;
    return rel_res(lhs, rhs);
}

std::optional<double> gauss_sum_res(const GridPoint& p) {
    const QParam q(p.q);
    const int n = int(p.arg.real());
    double prod = 1.0;
    for (int k = 0; k < n; ++k) prod *= 1.0 + std::pow(p.q, k);
    return rel_res(gauss_binomial_sum(n, q), prod);
}

std::optional<double> brace_duality_res(const GridPoint& p) {
    const QParam q(p.q);
    const int n = int(p.arg.real());
    return rel_res(brace_bracket(n, q), brace_bracket(n, q.reciprocal()));
}

std::optional<double> classical_inverse_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex lhs =
        need(exp_small(p.arg, q)) * need(exp_big(-p.arg, q));
    return std::abs(lhs - 1.0);
}

std::optional<double> exp_deriv_small_res(const GridPoint& p) {
    const QParam q(p.q);
    GridFunction f = [&](const Complex& z) { return need(exp_small(z, q)); };
    return rel_res(jackson_derivative(f, p.arg, q), need(exp_small(p.arg, q)));
}

std::optional<double> exp_deriv_big_res(const GridPoint& p) {
    const QParam q(p.q);
    GridFunction f = [&](const Complex& z) { return need(exp_big(z, q)); };
    return rel_res(jackson_derivative(f, p.arg, q),
                   need(exp_big(p.q * p.arg, q)));
}

std::optional<double> std_trig_product_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex lhs = need(cos_small(p.arg, q)) * need(cos_big(p.arg, q)) +
                        need(sin_small(p.arg, q)) * need(sin_big(p.arg, q));
    return std::abs(lhs - 1.0);
}

std::optional<double> std_trig_cross_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex lhs = need(sin_small(p.arg, q)) * need(cos_big(p.arg, q));
    const Complex rhs = need(cos_small(p.arg, q)) * need(sin_big(p.arg, q));
    return rel_res(lhs, rhs);
}

std::optional<double> std_trig_deriv_res(const GridPoint& p) {
    const QParam q(p.q);
    GridFunction s = [&](const Complex& z) { return need(sin_small(z, q)); };
    GridFunction c = [&](const Complex& z) { return need(cos_small(z, q)); };
    GridFunction S = [&](const Complex& z) { return need(sin_big(z, q)); };
    GridFunction C = [&](const Complex& z) { return need(cos_big(z, q)); };
    const Complex qx = p.q * p.arg;
    double r = rel_res(jackson_derivative(s, p.arg, q), c(p.arg));
    r = std::max(r, rel_res(jackson_derivative(c, p.arg, q), -s(p.arg)));
    r = std::max(r, rel_res(jackson_derivative(S, p.arg, q), C(qx)));
    r = std::max(r, rel_res(jackson_derivative(C, p.arg, q), -S(qx)));
    return r;
}

std::optional<double> unit_modulus_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex ix(0.0, p.arg.real());
    return std::abs(std::abs(need(exp_improved(ix, q))) - 1.0);
}

std::optional<double> inverse_identity_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex lhs = need(exp_improved(p.arg, q)) * need(exp_improved(-p.arg, q));
    return std::abs(lhs - 1.0);
}

std::optional<double> duality_res(const GridPoint& p) {
    const QParam q(p.q);
    return rel_res(need(exp_improved(p.arg, q)),
                   need(exp_improved(p.arg, q.reciprocal())));
}

std::optional<double> average_deriv_res(const GridPoint& p) {
    const QParam q(p.q);
    GridFunction f = [&](const Complex& z) { return need(exp_improved(z, q)); };
    return rel_res(jackson_derivative(f, p.arg, q),
                   average_operator(f, p.arg, q));
}

std::optional<double> factorization_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex half = 0.5 * p.arg;
    return rel_res(need(exp_improved(p.arg, q)),
                   need(exp_small(half, q)) * need(exp_big(half, q)));
}

std::optional<double> cayley_step_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex at_z = need(exp_improved(p.arg, q));
    return rel_res(need(exp_improved(p.q * p.arg, q)),
                   cayley_step(at_z, p.arg, q));
}

std::optional<double> series_product_res(const GridPoint& p) {
    const QParam q(p.q);
    return rel_res(need(exp_improved_series(p.arg, q)),
                   need(exp_improved_product(p.arg, q)));
}

std::optional<double> pythagorean_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex s = need(sin_improved(p.arg, q));
    const Complex c = need(cos_improved(p.arg, q));
    return std::abs(c * c + s * s - 1.0);
}

std::optional<double> boundedness_res(const GridPoint& p) {
    const QParam q(p.q);
    const double s = std::abs(need(sin_improved(p.arg, q)));
    const double c = std::abs(need(cos_improved(p.arg, q)));
    return std::max({0.0, s - 1.0, c - 1.0});
}

std::optional<double> realness_res(const GridPoint& p) {
    const QParam q(p.q);
    const TrigValue s = sin_improved(p.arg, q);
    const TrigValue c = cos_improved(p.arg, q);
    if (s.status != EvalStatus::Converged || c.status != EvalStatus::Converged)
        return std::nullopt;
    return std::max(s.imag_residue / (1.0 + std::abs(s.value)),
                    c.imag_residue / (1.0 + std::abs(c.value)));
}

std::optional<double> improved_trig_deriv_res(const GridPoint& p) {
    const QParam q(p.q);
    GridFunction s = [&](const Complex& z) { return need(sin_improved(z, q)); };
    GridFunction c = [&](const Complex& z) { return need(cos_improved(z, q)); };
    double r = rel_res(jackson_derivative(s, p.arg, q),
                       average_operator(c, p.arg, q));
    r = std::max(r, rel_res(jackson_derivative(c, p.arg, q),
                            -average_operator(s, p.arg, q)));
    return r;
}

std::optional<double> double_angle_standard_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex two_x = 2.0 * p.arg;
    const Complex s = need(sin_small(p.arg, q)), c = need(cos_small(p.arg, q));
    const Complex S = need(sin_big(p.arg, q)), C = need(cos_big(p.arg, q));
    double r = rel_res(need(cos_improved(two_x, q)), c * C - s * S);
    r = std::max(r, rel_res(need(sin_improved(two_x, q)), s * C + c * S));
    return r;
}

std::optional<double> double_angle_tangent_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex c = need(cos_small(p.arg, q));
    if (std::abs(c) < 1e-3) return std::nullopt;  // tangent amplification
    const Complex t = need(tan_small(p.arg, q));
    const Complex t2 = t * t;
    if (std::abs(1.0 + t2) < 1e-6) return std::nullopt;
    const Complex two_x = 2.0 * p.arg;
    double r = rel_res(need(cos_improved(two_x, q)), (1.0 - t2) / (1.0 + t2));
    r = std::max(r, rel_res(need(sin_improved(two_x, q)), 2.0 * t / (1.0 + t2)));
    return r;
}

std::optional<double> tangent_coincide_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex c = need(cos_big(p.arg, q));
    if (std::abs(c) < 1e-3) return std::nullopt;
    const Complex big_tan = need(sin_big(p.arg, q)) / c;
    return rel_res(need(tan_small(p.arg, q)), big_tan);
}

std::optional<double> negative_control_res(const GridPoint& p) {
    const QParam q(p.q);
    const Complex s = need(sin_small(p.arg, q));
    const Complex c = need(cos_small(p.arg, q));
    return std::abs(c * c + s * s - 1.0);
}

// ---- registry -----------------------------------------------------------

struct IdentityDef {
    const char* id;
    double tol;
    GridBuilder grid;
    ResidualFn residual;
    bool in_run_all;
};

std::function<double(double)> fixed(double v) {
    return [v](double) { return v; };
}

// Radius of the improved exponential's series disc.
double big_r(double q) { return radius_of_convergence(QParam(q)).radius; }

const std::vector<IdentityDef>& registry() {
    static const std::vector<IdentityDef> defs = [] {
        std::vector<IdentityDef> v;
        auto domain_frac = [](double f) {
            return [f](double q) { return f * standard_domain(q); };
        };
        auto r_frac = [](double f) {
            return [f](double q) { return f * big_r(q); };
        };
        // derivative grids keep qx inside the domain as well
        auto deriv_domain = [](double f) {
            return [f](double q) {
                return f * standard_domain(q) / std::max(1.0, q);
            };
        };

        v.push_back({"FactorialTilde", 1e-12,
                     integer_grid(20, {0.3, 0.5, 2.0, 5.0}), factorial_tilde_res, true});
        v.push_back({"GaussBinomialSum", 1e-12,
                     integer_grid(20, {0.3, 0.5, 2.0, 5.0}), gauss_sum_res, true});
        v.push_back({"BraceBracketDuality", 1e-13,
                     integer_grid(30, kQAll), brace_duality_res, true});
        v.push_back({"ClassicalInverse", 1e-11,
                     complex_grid(kQNoOne, fixed(0.0), domain_frac(0.6)),
                     classical_inverse_res, true});
        v.push_back({"ExpDerivativeSmall", 1e-9,
                     complex_grid(kQNoOne, domain_frac(0.1), deriv_domain(0.45)),
                     exp_deriv_small_res, true});
        v.push_back({"ExpDerivativeBig", 1e-9,
                     complex_grid(kQNoOne, domain_frac(0.1), deriv_domain(0.45)),
                     exp_deriv_big_res, true});
        v.push_back({"StandardTrigProduct", 1e-10,
                     real_grid(kQNoOne, fixed(0.0), domain_frac(0.9)),
                     std_trig_product_res, true});
        v.push_back({"StandardTrigCross", 1e-10,
                     real_grid(kQNoOne, fixed(0.0), domain_frac(0.9)),
                     std_trig_cross_res, true});
        v.push_back({"StandardTrigDerivatives", 1e-9,
                     real_grid(kQNoOne, deriv_domain(0.1), deriv_domain(0.45)),
                     std_trig_deriv_res, true});
        v.push_back({"UnitModulus", 1e-11,
                     real_grid(kQAll, fixed(0.0), fixed(20.0)), unit_modulus_res, true});
        v.push_back({"InverseIdentity", 1e-11,
                     complex_grid(kQAll, fixed(0.0), r_frac(0.6)),
                     inverse_identity_res, true});
        v.push_back({"Duality", 1e-11,
                     complex_grid(kQAll, fixed(0.0), r_frac(0.6)), duality_res, true});
        v.push_back({"AverageDerivative", 1e-9,
                     complex_grid(kQNoOne, r_frac(0.1),
                                  [](double q) { return 0.4 * big_r(q) / std::max(1.0, q); }),
                     average_deriv_res, true});
        v.push_back({"ExpFactorization", 1e-11,
                     complex_grid(kQAll, fixed(0.0), r_frac(0.55)),
                     factorization_res, true});
        v.push_back({"CayleyStepRecurrence", 1e-11,
                     complex_grid(kQNoOne, fixed(0.0),
                                  [](double q) { return 0.5 * big_r(q) / std::max(1.0, q); }),
                     cayley_step_res, true});
        v.push_back({"SeriesProductAgreement", 1e-11,
                     complex_grid(kQAll, fixed(0.0), r_frac(0.6)),
                     series_product_res, true});
        v.push_back({"Pythagorean", 1e-11,
                     real_grid(kQAll, fixed(0.0), fixed(20.0)), pythagorean_res, true});
        v.push_back({"Boundedness", 1e-11,
                     real_grid(kQAll, fixed(0.0), fixed(20.0)), boundedness_res, true});
        v.push_back({"Realness", 1e-12,
                     real_grid(kQAll, fixed(0.0), fixed(20.0)), realness_res, true});
        v.push_back({"ImprovedTrigDerivatives", 1e-9,
                     real_grid(kQNoOne, fixed(0.1), fixed(8.0)),
                     improved_trig_deriv_res, true});
        v.push_back({"DoubleAngleStandard", 1e-10,
                     real_grid(kQNoOne, fixed(0.0), domain_frac(0.45)),
                     double_angle_standard_res, true});
        v.push_back({"DoubleAngleTangent", 1e-10,
                     real_grid(kQNoOne, fixed(0.0), domain_frac(0.45)),
                     double_angle_tangent_res, true});
        v.push_back({"TangentCoincide", 1e-10,
                     real_grid(kQNoOne, fixed(0.0), domain_frac(0.9)),
                     tangent_coincide_res, true});
        v.push_back({kNegativeControlId, 1e-11,
                     real_grid({0.5}, fixed(0.0), fixed(1.0)),
                     negative_control_res, false});
        return v;
    }();
    return defs;
}

const IdentityDef& find_def(const std::string& id) {
    for (const auto& d : registry())
        if (id == d.id) return d;
    throw std::invalid_argument("unknown identity id: " + id);
}

}  // namespace

std::vector<std::string> registry_ids() {
    std::vector<std::string> ids;
    for (const auto& d : registry())
        if (d.in_run_all) ids.push_back(d.id);
    return ids;
}

bool is_registered(const std::string& id) {
    for (const auto& d : registry())
        if (id == d.id) return true;
    return false;
}

IdentitySpec default_spec(const std::string& id, std::uint64_t seed) {
    const IdentityDef& d = find_def(id);
    return {d.id, d.grid(mix(seed, d.id)), d.tol};
}

IdentityReport run_identity(const IdentitySpec& spec) {
    const IdentityDef& d = find_def(spec.id);
    IdentityReport rep;
    rep.id = spec.id;
    rep.tolerance = spec.tolerance;
    double sum = 0.0;
    for (const GridPoint& p : spec.grid) {
        std::optional<double> r;
        try {
            r = d.residual(p);
        } catch (const NotConverged&) {
            r = std::nullopt;
        }
        if (!r) {
            ++rep.skipped;
            continue;
        }
        ++rep.samples_evaluated;
        sum += *r;
        if (*r >= rep.max_residual) {
            rep.max_residual = *r;
            rep.worst_point = p;
        }
    }
    rep.mean_residual = rep.samples_evaluated ? sum / rep.samples_evaluated : 0.0;
    rep.passed = rep.max_residual <= rep.tolerance;
    return rep;
}

std::vector<IdentityReport> run_all(
    const std::map<std::string, double>& tolerance_overrides,
    std::uint64_t seed) {
    for (const auto& [id, tol] : tolerance_overrides) {
        (void)tol;
        find_def(id);  // throws on unknown override
    }
    std::vector<IdentityReport> reports;
    for (const auto& d : registry()) {
        if (!d.in_run_all) continue;
        IdentitySpec spec = default_spec(d.id, seed);
        if (auto it = tolerance_overrides.find(d.id); it != tolerance_overrides.end())
            spec.tolerance = it->second;
        reports.push_back(run_identity(spec));
    }
    return reports;
}

IdentityReport classical_limit_check(double q_near_one,
                                     const std::vector<Complex>& grid) {
    if (std::abs(q_near_one - 1.0) >= 0.1)
        throw std::domain_error("classical_limit_check: need |q - 1| < 0.1");
    std::vector<Complex> pts = grid;
    if (pts.empty())
        for (int i = 0; i <= 100; ++i)
            pts.push_back(Complex(-1.0 + 0.02 * i, 0.0));

    const QParam q(q_near_one);
    IdentityReport rep;
    rep.id = "ClassicalLimit";
    rep.tolerance = kClassicalLimitSlope * std::abs(q_near_one - 1.0);
    double sum = 0.0;
    for (const Complex& z : pts) {
        EvalResult r = exp_improved(z, q);
        if (!r.converged()) {
            ++rep.skipped;
            continue;
        }
        const double res = rel_res(r.value, std::exp(z));
        ++rep.samples_evaluated;
        sum += res;
        if (res >= rep.max_residual) {
            rep.max_residual = res;
            rep.worst_point = {z, q_near_one};
        }
    }
    rep.mean_residual = rep.samples_evaluated ? sum / rep.samples_evaluated : 0.0;
    rep.passed = rep.max_residual <= rep.tolerance;
    return rep;
}

}  // namespace qcal::verify
