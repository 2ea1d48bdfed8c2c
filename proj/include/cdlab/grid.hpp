#pragma once

#include <cmath>
#include <vector>

#include "cdlab/errors.hpp"

namespace cdlab {

/// Uniform 1-D grid. h is derived so x_max - x_min = (n-1) h holds exactly.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 3;

    Grid1D() = default;
    Grid1D(double xmin, double xmax, int npts) : x_min(xmin), x_max(xmax), n(npts) {
        if (n < 3 || !(x_max > x_min)) throw DomainError("Grid1D: need n >= 3 and x_max > x_min");
    }

    /// Grid from a target spacing; n is rounded so the endpoints are kept.
    static Grid1D with_spacing(double xmin, double xmax, double h_target) {
        if (!(h_target > 0.0)) throw DomainError("Grid1D: spacing must be positive");
        const int n = static_cast<int>(std::lround((xmax - xmin) / h_target)) + 1;
        return Grid1D(xmin, xmax, n);
    }

    double h() const { return (x_max - x_min) / double(n - 1); }
    double length() const { return x_max - x_min; }
    double x(int i) const { return x_min + i * h(); }

    std::vector<double> points() const {
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = x(i);
        return xs;
    }
};

} // namespace cdlab
