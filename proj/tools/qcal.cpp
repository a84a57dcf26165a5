// qcal: command-line front end for the q-calculus library.
//
// Subcommands:
//   eval    point evaluation with convergence diagnostics
//   sweep   uniform grid evaluation to CSV
//   check   identity-verification report (text or JSON)
//   radius  convergence radius R_q of the improved exponential
//
// Exit codes: 0 success, 1 math-domain failure, 2 usage error,
//             3 partial sweep (some rows not converged), 4 I/O failure.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcal/exp.hpp"
#include "qcal/trig.hpp"
#include "qcal/verify.hpp"

namespace {

using qcal::Complex;
using qcal::EvalConfig;
using qcal::EvalResult;
using qcal::EvalStatus;
using qcal::Method;
using qcal::QParam;

constexpr int kExitMathDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartialSweep = 3;
constexpr int kExitIo = 4;

// Shortest decimal representation that round-trips to the same double.
std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

struct Evaluation {
    Complex value{0.0, 0.0};
    int terms = 0;
    double err_estimate = 0.0;
    EvalStatus status = EvalStatus::Converged;
};

// Single entry point over both families; names match the CLI vocabulary.
std::optional<Evaluation> evaluate(const std::string& fn, const Complex& z,
                                   const QParam& q, const EvalConfig& cfg) {
    auto from_exp = [](const EvalResult& r) {
        return Evaluation{r.value, r.terms_used, r.err_estimate, r.status};
    };
    auto from_trig = [](const qcal::TrigValue& t) {
        return Evaluation{t.value, t.terms_used, t.err_estimate, t.status};
    };
    if (fn == "eq") return from_exp(qcal::exp_small(z, q, cfg));
    if (fn == "Eq") return from_exp(qcal::exp_big(z, q, cfg));
    if (fn == "calE") return from_exp(qcal::exp_improved(z, q, cfg));
    if (fn == "sin_q") return from_trig(qcal::sin_small(z, q, cfg));
    if (fn == "cos_q") return from_trig(qcal::cos_small(z, q, cfg));
    if (fn == "Sin_q") return from_trig(qcal::sin_big(z, q, cfg));
    if (fn == "Cos_q") return from_trig(qcal::cos_big(z, q, cfg));
    if (fn == "tan_q") return from_trig(qcal::tan_small(z, q, cfg));
    if (fn == "calSin") return from_trig(qcal::sin_improved(z, q, cfg));
    if (fn == "calCos") return from_trig(qcal::cos_improved(z, q, cfg));
    return std::nullopt;
}

const std::vector<std::string> kFunctionNames = {
    "eq", "Eq", "calE", "sin_q", "cos_q", "Sin_q", "Cos_q",
    "tan_q", "calSin", "calCos"};

Method parse_method(const std::string& m) {
    if (m == "series") return Method::Series;
    if (m == "product") return Method::Product;
    return Method::Auto;
}

// --z accepts "re" or "re,im".
bool parse_complex(const std::string& s, Complex& out) {
    try {
        std::size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos == s.size()) {
            out = Complex(re, 0.0);
            return true;
        }
        if (s[pos] != ',') return false;
        std::size_t pos2 = 0;
        const double im = std::stod(s.substr(pos + 1), &pos2);
        if (pos + 1 + pos2 != s.size()) return false;
        out = Complex(re, im);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::uint64_t grid_seed() {
    if (const char* env = std::getenv("QCAL_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            // fall through to the default
        }
    }
    return qcal::verify::kDefaultSeed;
}

int cmd_eval(const std::string& fn, double qv, const std::string& zspec,
             const std::string& method, double rel_tol) {
    Complex z;
    if (!parse_complex(zspec, z)) {
        std::cerr << "error: cannot parse --z '" << zspec << "'\n";
        return kExitUsage;
    }
    EvalConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.method = parse_method(method);
    const auto ev = evaluate(fn, z, QParam(qv), cfg);
    if (!ev) {
        std::cerr << "error: unknown function '" << fn << "'\n";
        return kExitUsage;
    }
    if (ev->status == EvalStatus::Pole) {
        std::cerr << "error: pole at z = " << fmt_double(z.real());
        if (z.imag() != 0.0) std::cerr << "," << fmt_double(z.imag());
        std::cerr << " (q = " << fmt_double(qv) << ")\n";
        return kExitMathDomain;
    }
    if (ev->status == EvalStatus::OutsideDomain) {
        std::cerr << "error: z outside the convergence domain for q = "
                  << fmt_double(qv) << "\n";
        return kExitMathDomain;
    }
    std::printf("value_re     = %.17g\n", ev->value.real());
    std::printf("value_im     = %.17g\n", ev->value.imag());
    std::printf("terms_used   = %d\n", ev->terms);
    std::printf("err_estimate = %.17g\n", ev->err_estimate);
    std::printf("status       = %s\n", qcal::to_string(ev->status));
    return ev->status == EvalStatus::Converged ? 0 : kExitMathDomain;
}

int cmd_sweep(const std::string& fn, double qv, const std::string& var,
              double start, double stop, int steps, const std::string& method,
              double rel_tol, const std::string& out_path) {
    if (!(start < stop) || steps < 2) {
        std::cerr << "error: need start < stop and steps >= 2\n";
        return kExitUsage;
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);  // LF line endings everywhere
        if (!file) {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return kExitIo;
        }
        out = &file;
    }
    EvalConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.method = parse_method(method);
    const QParam q(qv);
    const bool imag_axis = (var == "x_imag_axis");

    *out << "x,value_re,value_im,terms,err_estimate,status\n";
    bool all_converged = true;
    for (int i = 0; i < steps; ++i) {
        const double x = start + (stop - start) * i / (steps - 1);
        const Complex arg = imag_axis ? Complex(0.0, x) : Complex(x, 0.0);
        const auto ev = evaluate(fn, arg, q, cfg);
        if (!ev) {
            std::cerr << "error: unknown function '" << fn << "'\n";
            return kExitUsage;
        }
        *out << fmt_double(x) << ",";
        if (ev->status == EvalStatus::Converged) {
            *out << fmt_double(ev->value.real()) << ","
                 << fmt_double(ev->value.imag()) << "," << ev->terms << ","
                 << fmt_double(ev->err_estimate) << ",Converged\n";
        } else {
            all_converged = false;
            *out << ",," << ev->terms << ",," << qcal::to_string(ev->status)
                 << "\n";
        }
        if (!*out) {
            std::cerr << "error: write failure\n";
            return kExitIo;
        }
    }
    out->flush();
    if (!*out) {
        std::cerr << "error: write failure\n";
        return kExitIo;
    }
    return all_converged ? 0 : kExitPartialSweep;
}

int cmd_check(const std::string& format,
              const std::vector<std::string>& tol_overrides) {
    std::map<std::string, double> overrides;
    for (const std::string& ov : tol_overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --tol expects NAME=VALUE, got '" << ov << "'\n";
            return kExitUsage;
        }
        const std::string name = ov.substr(0, eq);
        if (!qcal::verify::is_registered(name)) {
            std::cerr << "error: unknown identity '" << name << "'\n";
            return kExitUsage;
        }
        try {
            overrides[name] = std::stod(ov.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "error: bad tolerance in '" << ov << "'\n";
            return kExitUsage;
        }
    }

    const auto reports = qcal::verify::run_all(overrides, grid_seed());
    bool all_passed = true;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) {
            arr.push_back({{"id", r.id},
                           {"samples_evaluated", r.samples_evaluated},
                           {"skipped", r.skipped},
                           {"max_residual", r.max_residual},
                           {"mean_residual", r.mean_residual},
                           {"worst_point",
                            {{"arg_re", r.worst_point.arg.real()},
                             {"arg_im", r.worst_point.arg.imag()},
                             {"q", r.worst_point.q}}},
                           {"passed", r.passed}});
            all_passed = all_passed && r.passed;
        }
        nlohmann::json doc = {{"schema", 1}, {"reports", arr}};
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::printf("%-26s max_residual=%-12.3e %s\n", r.id.c_str(),
                        r.max_residual, r.passed ? "PASS" : "FAIL");
            all_passed = all_passed && r.passed;
        }
    }
    return all_passed ? 0 : kExitMathDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-calculus special functions: evaluation, sweeps, identity checks"};
    app.require_subcommand(1);

    std::string fn, zspec = "0", var = "x_real", method = "auto";
    std::string out_path, format = "text";
    double qv = 0.5, rel_tol = 1e-14, start = 0.0, stop = 1.0;
    int steps = 101;
    std::vector<std::string> tol_overrides;

    auto add_function_arg = [&](CLI::App* sub) {
        sub->add_option("function", fn, "one of: eq Eq calE sin_q cos_q Sin_q Cos_q tan_q calSin calCos")
            ->required()
            ->check(CLI::IsMember(kFunctionNames));
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate at a single point");
    add_function_arg(eval);
    eval->add_option("--q", qv, "deformation parameter q > 0")->required();
    eval->add_option("--z", zspec, "argument, re or re,im")->required();
    eval->add_option("--method", method)->check(CLI::IsMember({"auto", "series", "product"}));
    eval->add_option("--rel-tol", rel_tol);

    CLI::App* sweep = app.add_subcommand("sweep", "uniform grid to CSV");
    add_function_arg(sweep);
    sweep->add_option("--q", qv)->required();
    sweep->add_option("--var", var)->check(CLI::IsMember({"x_real", "x_imag_axis"}));
    sweep->add_option("--start", start)->required();
    sweep->add_option("--stop", stop)->required();
    sweep->add_option("--steps", steps)->required();
    sweep->add_option("--method", method)->check(CLI::IsMember({"auto", "series", "product"}));
    sweep->add_option("--rel-tol", rel_tol);
    sweep->add_option("--out,-o", out_path, "output file (default: stdout)");

    CLI::App* check = app.add_subcommand("check", "run the identity registry");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    check->add_option("--tol", tol_overrides, "tolerance override NAME=VALUE")
        ->take_all();

    CLI::App* radius = app.add_subcommand("radius", "convergence radius R_q");
    radius->add_option("--q", qv)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(fn, qv, zspec, method, rel_tol);
        if (sweep->parsed())
            return cmd_sweep(fn, qv, var, start, stop, steps, method, rel_tol,
                             out_path);
        if (check->parsed()) return cmd_check(format, tol_overrides);
        if (radius->parsed()) {
            const double r = qcal::radius_of_convergence(QParam(qv)).radius;
            if (std::isinf(r))
                std::printf("R_q = inf\n");
            else
                std::printf("R_q = %.17g\n", r);
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
