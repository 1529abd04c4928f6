#pragma once

#include <cstddef>
#include <vector>

namespace topofolio::opt {

struct QpResult {
    std::vector<double> w;
    double objective = 0.0;
    double kkt_residual = 0.0;
    std::size_t iterations = 0;
};

/// Minimize w'Qw + c'w over { w : sum w = 1, w >= 0 } for symmetric positive
/// definite Q (row-major n x n). Primal active-set iteration on the bound
/// constraints; the returned point satisfies stationarity, complementarity
/// and primal feasibility with residual <= 1e-8 or the call throws.
QpResult qp_solve(const std::vector<double>& Q, const std::vector<double>& c);

} // namespace topofolio::opt
