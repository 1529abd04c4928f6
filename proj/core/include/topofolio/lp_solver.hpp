#pragma once

#include <cstddef>
#include <vector>

namespace topofolio::opt {

enum class Relation { LessEq, Equal, GreaterEq };

/// Dense LP over x >= 0:  optimize c'x  subject to  A x (rel) b.
/// Free variables must be split by the caller.
struct LinearProgram {
    std::size_t num_vars = 0;
    bool maximize = false;
    std::vector<double> objective;         // c, size num_vars
    std::vector<std::vector<double>> rows; // A
    std::vector<Relation> relations;
    std::vector<double> rhs;               // b

    void add_constraint(std::vector<double> row, Relation rel, double b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

/// Two-phase dense simplex. Pivots by Dantzig's rule, switching to Bland's
/// rule for the rest of the solve after a run of degenerate pivots; an
/// iteration cap acts as the cycling guard and throws std::runtime_error.
LpSolution lp_solve(const LinearProgram& lp);

} // namespace topofolio::opt
