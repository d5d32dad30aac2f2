#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tfbs {

// Thomas algorithm for tridiagonal systems: forward elimination, then back
// substitution. Bands share one length n >= 2; lower[0] and upper[n-1] are
// ignored. Throws SolverFailure (with the row index) when a pivot falls
// below 1e-14 of the largest row magnitude.
std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs);

// Elimination factored once for solving many right-hand sides against the
// same matrix; the marching scheme reuses one factorization for every step.
class TridiagonalFactorization {
public:
    TridiagonalFactorization(std::span<const double> lower, std::span<const double> diag,
                             std::span<const double> upper);

    // Overwrites rhs with the solution.
    void solve(std::span<double> rhs) const;

    std::size_t size() const noexcept { return lower_.size(); }

private:
    std::vector<double> lower_;      // subdiagonal as given
    std::vector<double> upper_;      // eliminated superdiagonal c'_i
    std::vector<double> inv_pivot_;  // 1 / (diag_i - lower_i c'_{i-1})
};

}  // namespace tfbs
