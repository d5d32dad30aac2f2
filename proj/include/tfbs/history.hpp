#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tfbs {

// Spline coefficient vectors R^0..R^n accumulated by the time march. The
// fractional memory term needs every past step, so nothing is discarded.
// Each step stores the N_x+1 interior unknowns plus the ghost pair
// (R_{-1}, R_{N_x+1}) recovered from the boundary closure.
class CoefficientHistory {
public:
    explicit CoefficientHistory(std::size_t node_count) : node_count_(node_count) {
        if (node_count == 0) throw std::invalid_argument("history node count must be positive");
    }

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t steps() const noexcept { return ghosts_.size(); }

    std::span<const double> step(std::size_t n) const {
        if (n >= steps()) throw std::invalid_argument("history step out of range");
        return {flat_.data() + n * node_count_, node_count_};
    }

    std::pair<double, double> ghosts(std::size_t n) const {
        if (n >= steps()) throw std::invalid_argument("history step out of range");
        return ghosts_[n];
    }

    void push(std::span<const double> coefficients, double left_ghost, double right_ghost) {
        if (coefficients.size() != node_count_)
            throw std::invalid_argument("history push size mismatch");
        flat_.insert(flat_.end(), coefficients.begin(), coefficients.end());
        ghosts_.emplace_back(left_ghost, right_ghost);
    }

    void reserve(std::size_t step_count) {
        flat_.reserve(step_count * node_count_);
        ghosts_.reserve(step_count);
    }

private:
    std::size_t node_count_;
    std::vector<double> flat_;
    std::vector<std::pair<double, double>> ghosts_;
};

}  // namespace tfbs
