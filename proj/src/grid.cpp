#include "centerface/grid.hpp"

#include <cmath>

namespace centerface {

namespace {
bool finite_range(const std::vector<float>& v) {
    for (float f : v)
        if (!std::isfinite(f)) return false;
    return true;
}
}  // namespace

bool all_finite(const Grid2D& g) { return finite_range(g.data); }
bool all_finite(const Grid3D& g) { return finite_range(g.data); }

}  // namespace centerface
