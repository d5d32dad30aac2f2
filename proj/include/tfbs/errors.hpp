#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfbs {

// Linear algebra gave up: a vanishing pivot during elimination, or a time
// step that produced non-finite coefficients. `index` is the offending
// matrix row or time step.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace tfbs
