#pragma once

#include "hydroclose/bracket.hpp"

#include <cstddef>

namespace hydroclose {

// Runs f(0..count-1). Cells must write disjoint outputs and must not throw.
template <class F>
void for_cells(std::size_t count, Execution mode, F&& f) {
    if (mode == Execution::parallel) {
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) f(i);
    }
}

}  // namespace hydroclose
