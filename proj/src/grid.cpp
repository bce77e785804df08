#include "fns/grid.hpp"

#include <stdexcept>
#include <string>

namespace fns {

TorusGrid make_grid(int dim, int n) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("make_grid: dim must be 1, 2 or 3, got " +
                                    std::to_string(dim));
    if (n < 8 || n > 4096 || n % 2 != 0)
        throw std::invalid_argument(
            "make_grid: n must be even and in [8, 4096], got " + std::to_string(n));
    return TorusGrid{dim, n};
}

}  // namespace fns
