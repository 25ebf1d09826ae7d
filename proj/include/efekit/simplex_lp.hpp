#pragma once

#include "efekit/linalg.hpp"

#include <vector>

namespace efekit {

/// Equality-form linear program: min c.z subject to e z = b, z >= 0,
/// with b >= 0. Desk-scale dense tableau solver.
struct LpProblem {
    Matrix e;
    std::vector<double> b;
    std::vector<double> c;
};

struct LpSolution {
    bool feasible = false;
    bool bounded = false;
    double objective = 0.0;
    std::vector<double> z;
};

/// Two-phase primal simplex with Bland's rule, so pivoting is
/// deterministic and cannot cycle.
LpSolution solve_lp(const LpProblem& p);

} // namespace efekit
