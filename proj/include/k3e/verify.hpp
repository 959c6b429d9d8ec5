#pragma once

// The identity suites: every cross-check the engine supports, each pinned
// to explicit truncations. The acceptance runner executes them at fixed
// reference truncations; the CLI verify subcommand at level-dependent ones.

#include <string>
#include <vector>

#include "k3e/fock.hpp"
#include "k3e/igusa.hpp"

namespace k3e {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyConfig {
    long Nq = 4, Nqt = 4;
    long win_lo = -8, win_hi = 8;
    long dmax = 2;
    bool solver_d3 = false;  // run the d=3 solver extension and residual check
};

// the twelve reference checks at their fixed truncations
std::vector<CheckResult> run_acceptance();

// level-dependent run (quick/full)
std::vector<CheckResult> run_verify(const VerifyConfig& cfg);

// helper shared with tests: expand num/(F^2 Delta)^pow against the
// windowed inverse, certified to t-exponent hi
WSeries expand_localized(const LocJ<Rat>& c, long Nq, long hi);

// the 20-2-2 product S (1/q) prod 1/((1+y^{-1}q^m)^2 (1-q^m)^20 (1+y q^m)^2)
// without the S prefactor and the 1/q shift: q-coefficients are exact
// t-Laurent rows
JSeries twenty_two_two_product(long Nq);

}  // namespace k3e
