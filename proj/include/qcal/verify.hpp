// Identity-verification engine. Every identity of the q-calculus layer is
// registered with a default sample grid and tolerance; running one produces a
// residual report. Backs both the test suite and the CLI `check` command.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcal/core.hpp"

namespace qcal::verify {

struct GridPoint {
    Complex arg{0.0, 0.0};
    double q = 1.0;
};

struct IdentitySpec {
    std::string id;
    std::vector<GridPoint> grid;
    double tolerance = 0.0;
};

struct IdentityReport {
    std::string id;
    int samples_evaluated = 0;
    int skipped = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    GridPoint worst_point;
    double tolerance = 0.0;
    bool passed = false;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Negative control: the standard family put through the Pythagorean check.
/// Registered (runnable by name) but excluded from run_all -- it is expected
/// to FAIL, guarding the harness against vacuous passes.
inline constexpr const char* kNegativeControlId = "StandardPythagoreanControl";

/// Identity ids in registry order, as executed by run_all.
std::vector<std::string> registry_ids();

bool is_registered(const std::string& id);

/// Default grid + tolerance for an identity. Grids are deterministic for a
/// fixed seed; pole-adjacent points are excluded by the generators.
IdentitySpec default_spec(const std::string& id,
                          std::uint64_t seed = kDefaultSeed);

/// Evaluates the identity residual at every grid point. Points the residual
/// function cannot evaluate (non-converged, too close to a pole) are counted
/// as skipped. Throws std::invalid_argument for an unknown id.
IdentityReport run_identity(const IdentitySpec& spec);

/// Runs the full registry with default grids. Overrides replace the default
/// tolerance per identity id.
std::vector<IdentityReport> run_all(
    const std::map<std::string, double>& tolerance_overrides = {},
    std::uint64_t seed = kDefaultSeed);

/// Residual of the improved exponential against the classical exponential on
/// the grid (default: 101 points on [-1, 1]). The pass tolerance scales
/// linearly with |q - 1|.
IdentityReport classical_limit_check(double q_near_one,
                                     const std::vector<Complex>& grid = {});

}  // namespace qcal::verify
