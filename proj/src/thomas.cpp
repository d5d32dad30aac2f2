#include "tfbs/thomas.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tfbs/errors.hpp"

namespace tfbs {

TridiagonalFactorization::TridiagonalFactorization(std::span<const double> lower,
                                                   std::span<const double> diag,
                                                   std::span<const double> upper) {
    const std::size_t n = diag.size();
    if (n < 2)
        throw std::invalid_argument("tridiagonal system needs length >= 2");
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("tridiagonal bands must share one length");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(lower[i]);
        if (i + 1 < n) row += std::abs(upper[i]);
        scale = std::max(scale, row);
    }
    const double tol = 1e-14 * scale;

    lower_.assign(lower.begin(), lower.end());
    upper_.resize(n);
    inv_pivot_.resize(n);

    double cp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = diag[i] - (i > 0 ? lower[i] * cp : 0.0);
        if (!(std::abs(pivot) > tol))
            throw SolverFailure("tridiagonal pivot " + std::to_string(pivot) +
                                    " below threshold at row " + std::to_string(i),
                                i);
        inv_pivot_[i] = 1.0 / pivot;
        cp = (i + 1 < n) ? upper[i] * inv_pivot_[i] : 0.0;
        upper_[i] = cp;
    }
}

void TridiagonalFactorization::solve(std::span<double> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n)
        throw std::invalid_argument("right-hand side length mismatch");

    rhs[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i)
        rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] -= upper_[i] * rhs[i + 1];
}

std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs) {
    if (rhs.size() != diag.size())
        throw std::invalid_argument("right-hand side length mismatch");
    TridiagonalFactorization factorization(lower, diag, upper);
    std::vector<double> solution(rhs.begin(), rhs.end());
    factorization.solve(solution);
    return solution;
}

}  // namespace tfbs
