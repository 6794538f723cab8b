#pragma once

#include "liesphere/error.hpp"

#include <vector>

namespace liesphere {

/// Product of intervals sampled uniformly; sample index is row-major (last axis fastest).
struct ParamGrid {
    std::vector<int> dims;
    std::vector<double> lo, hi;
    std::vector<bool> periodic;
    /// Finite-difference order for Jacobians: 2 (default) or 4.
    int fd_order = 2;

    ParamGrid() = default;
    ParamGrid(std::vector<int> dims, std::vector<double> lo, std::vector<double> hi, std::vector<bool> periodic,
              int fd_order = 2);

    int axes() const { return static_cast<int>(dims.size()); }
    long size() const;
    double step(int axis) const;
    double coord(int axis, int i) const;
    std::vector<int> multi_index(long idx) const;
    long flat_index(const std::vector<int>& mi) const;
    /// Neighbor offset along one axis, wrapping periodic axes; -1 when outside the grid.
    long neighbor(long idx, int axis, int delta) const;
    std::vector<double> coords(long idx) const;
};

bool operator==(const ParamGrid& a, const ParamGrid& b);

/// Product grid: axes of a followed by axes of b.
ParamGrid product(const ParamGrid& a, const ParamGrid& b);

/// Derivative of a sampled field (rows = components, cols = samples) along one axis at one sample.
Vec fd_derivative(const Mat& field, const ParamGrid& grid, long idx, int axis);
/// rows x axes Jacobian at one sample.
Mat fd_jacobian(const Mat& field, const ParamGrid& grid, long idx);

enum class Ambient { Euclidean, Spherical };

/// Sampled hypersurface or submanifold with a unit normal field.
/// Euclidean: points in R^n. Spherical: points in S^n inside R^{n+1}.
struct HypersurfaceSample {
    ParamGrid grid;
    Ambient ambient = Ambient::Euclidean;
    int n = 0;
    Mat points;
    Mat normals;

    int ambient_dim() const { return ambient == Ambient::Euclidean ? n : n + 1; }
    long size() const { return grid.size(); }
};

/// Shape checks only (dimensions, finiteness, unit normals).
void check_sample(const HypersurfaceSample& s, double unit_tol = 1e-8);

}  // namespace liesphere
