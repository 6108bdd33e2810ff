#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ovlab/asymptotics.hpp"

namespace ovlab {

// One row of the verification table. `worst` is the largest deviation the
// check observed, measured however the check's name suggests (absolute or
// relative); it stays comparable to `tolerance`.
struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string note;
};

// Replaceable inner routines. Tests hand the suite a deliberately broken
// implementation and confirm that exactly the right check trips; the CLI
// always runs the defaults.
struct VerifyHooks {
    std::function<TQuadruple(double zeta, double b)> quadruple;
};

// The identity suite behind the `verify` subcommand: special-function
// identities, cross-oracle agreements, the overlap-marginal integration
// identity, and the bridge limits between asymptotic regimes. `quick` cuts
// every grid to its smallest meaningful probe.
std::vector<CheckResult> run_verification(bool quick, const VerifyHooks& hooks = {});

bool all_passed(const std::vector<CheckResult>& results);

// Fixed-width pass/fail table, one row per check.
void print_report(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace ovlab
