#pragma once

// Order-by-order determination of unknown phi entries from the WDVV
// residuals: at each q-order the unknown coefficients enter the residuals
// linearly (lower orders are substituted first), so each order is an exact
// rational linear system. Inconsistency and rank defects are reported, not
// patched.

#include "k3e/fock.hpp"
#include "k3e/linrat.hpp"

namespace k3e {

struct PhiSolveReport {
    bool success = false;
    std::string message;
    PhiTable<Rat> table;  // base seeds plus solved canonical keys
    long orders_solved = 0;
};

// canonical representative of the symmetry orbit of (m, l):
// first index positive and >= |second|
std::pair<long, long> phi_canonical_key(long m, long l);

// Solve for the canonical keys in `targets` to q-orders < qOrder, running
// WDVV residuals on energy-`d` probe states built from the classes
// {unit, e1, f1, point}. The q^0 row is seeded from the expected leading
// behavior ((-y)^{-m/2} - (-y)^{m/2} for l = 0, vanishing otherwise).
PhiSolveReport phi_solve(const std::vector<std::pair<long, long>>& targets, long qOrder,
                         const PhiTable<Rat>& base, long d);

}  // namespace k3e
