#pragma once

// Catmull-Rom interpolation on uniform grids.

#include <complex>
#include <vector>

namespace lca {

template <class T>
struct UniformGridInterp {
    double x0 = 0, dx = 1;
    std::vector<T> y;

    // zero outside the grid
    T operator()(double x) const {
        double u = (x - x0) / dx;
        if (u < 0.0 || u > (double)(y.size() - 1)) return T{};
        std::ptrdiff_t i = (std::ptrdiff_t)u;
        if (i >= (std::ptrdiff_t)y.size() - 1) i = y.size() - 2;
        double t = u - i;
        const std::ptrdiff_t n = y.size();
        T p0 = y[i > 0 ? i - 1 : 0];
        T p1 = y[i];
        T p2 = y[i + 1];
        T p3 = y[i + 2 < n ? i + 2 : n - 1];
        T a = 2.0 * p1;
        T b = p2 - p0;
        T c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
        T d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
        return 0.5 * (a + b * t + c * t * t + d * t * t * t);
    }
};

}  // namespace lca
