#include "liesphere/grid.hpp"

#include <cmath>
#include <string>

namespace liesphere {

ParamGrid::ParamGrid(std::vector<int> d, std::vector<double> l, std::vector<double> h, std::vector<bool> p,
                     int order)
    : dims(std::move(d)), lo(std::move(l)), hi(std::move(h)), periodic(std::move(p)), fd_order(order) {
    require(lo.size() == dims.size() && hi.size() == dims.size() && periodic.size() == dims.size(),
            ErrorKind::Usage, "grid: dims, domain and periodic flags must have equal length");
    require(fd_order == 2 || fd_order == 4, ErrorKind::Usage, "grid: finite-difference order must be 2 or 4");
    for (size_t a = 0; a < dims.size(); ++a) {
        require(dims[a] >= 3, ErrorKind::Usage, "grid: every axis needs at least 3 samples");
        require(std::isfinite(lo[a]) && std::isfinite(hi[a]) && hi[a] > lo[a], ErrorKind::Usage,
                "grid: every interval must be finite with hi > lo");
    }
}

long ParamGrid::size() const {
    long s = 1;
    for (int d : dims) s *= d;
    return s;
}

double ParamGrid::step(int axis) const {
    const double len = hi[axis] - lo[axis];
    return periodic[axis] ? len / dims[axis] : len / (dims[axis] - 1);
}

double ParamGrid::coord(int axis, int i) const { return lo[axis] + i * step(axis); }

std::vector<int> ParamGrid::multi_index(long idx) const {
    std::vector<int> mi(dims.size());
    for (int a = axes() - 1; a >= 0; --a) {
        mi[a] = static_cast<int>(idx % dims[a]);
        idx /= dims[a];
    }
    return mi;
}

long ParamGrid::flat_index(const std::vector<int>& mi) const {
    long idx = 0;
    for (int a = 0; a < axes(); ++a) idx = idx * dims[a] + mi[a];
    return idx;
}

long ParamGrid::neighbor(long idx, int axis, int delta) const {
    long stride = 1;
    for (int a = axes() - 1; a > axis; --a) stride *= dims[a];
    const int i = static_cast<int>((idx / stride) % dims[axis]);
    int j = i + delta;
    if (periodic[axis]) {
        j %= dims[axis];
        if (j < 0) j += dims[axis];
    } else if (j < 0 || j >= dims[axis]) {
        return -1;
    }
    return idx + static_cast<long>(j - i) * stride;
}

std::vector<double> ParamGrid::coords(long idx) const {
    const auto mi = multi_index(idx);
    std::vector<double> c(mi.size());
    for (int a = 0; a < axes(); ++a) c[a] = coord(a, mi[a]);
    return c;
}

bool operator==(const ParamGrid& a, const ParamGrid& b) {
    return a.dims == b.dims && a.lo == b.lo && a.hi == b.hi && a.periodic == b.periodic && a.fd_order == b.fd_order;
}

ParamGrid product(const ParamGrid& a, const ParamGrid& b) {
    ParamGrid g = a;
    g.dims.insert(g.dims.end(), b.dims.begin(), b.dims.end());
    g.lo.insert(g.lo.end(), b.lo.begin(), b.lo.end());
    g.hi.insert(g.hi.end(), b.hi.begin(), b.hi.end());
    g.periodic.insert(g.periodic.end(), b.periodic.begin(), b.periodic.end());
    g.fd_order = std::max(a.fd_order, b.fd_order);
    return g;
}

namespace {

// Stencil weights (numerator over the given denominator times h) for offsets relative to the sample.
struct Stencil {
    int offsets[5];
    double weights[5];
    int count;
    double denom;
};

Stencil pick_stencil(int order, int i, int nd, bool periodic) {
    if (order == 4 && nd >= 5) {
        if (periodic || (i >= 2 && i <= nd - 3)) return {{-2, -1, 1, 2, 0}, {1, -8, 8, -1, 0}, 4, 12};
        if (i == 0) return {{0, 1, 2, 3, 4}, {-25, 48, -36, 16, -3}, 5, 12};
        if (i == 1) return {{-1, 0, 1, 2, 3}, {-3, -10, 18, -6, 1}, 5, 12};
        if (i == nd - 1) return {{0, -1, -2, -3, -4}, {25, -48, 36, -16, 3}, 5, 12};
        return {{1, 0, -1, -2, -3}, {3, 10, -18, 6, -1}, 5, 12};
    }
    if (periodic || (i >= 1 && i <= nd - 2)) return {{-1, 1, 0, 0, 0}, {-1, 1, 0, 0, 0}, 2, 2};
    if (i == 0) return {{0, 1, 2, 0, 0}, {-3, 4, -1, 0, 0}, 3, 2};
    return {{0, -1, -2, 0, 0}, {3, -4, 1, 0, 0}, 3, 2};
}

}  // namespace

Vec fd_derivative(const Mat& field, const ParamGrid& grid, long idx, int axis) {
    long stride = 1;
    for (int a = grid.axes() - 1; a > axis; --a) stride *= grid.dims[a];
    const int nd = grid.dims[axis];
    const int i = static_cast<int>((idx / stride) % nd);
    const Stencil st = pick_stencil(grid.fd_order, i, nd, grid.periodic[axis]);
    Vec d = Vec::Zero(field.rows());
    for (int k = 0; k < st.count; ++k) {
        int j = i + st.offsets[k];
        if (grid.periodic[axis]) j = ((j % nd) + nd) % nd;
        d += st.weights[k] * field.col(idx + static_cast<long>(j - i) * stride);
    }
    return d / (st.denom * grid.step(axis));
}

Mat fd_jacobian(const Mat& field, const ParamGrid& grid, long idx) {
    Mat j(field.rows(), grid.axes());
    for (int a = 0; a < grid.axes(); ++a) j.col(a) = fd_derivative(field, grid, idx, a);
    return j;
}

void check_sample(const HypersurfaceSample& s, double unit_tol) {
    require(s.n >= 2, ErrorKind::Usage, "sample: ambient dimension n must be >= 2");
    const int d = s.ambient_dim();
    require(s.points.rows() == d && s.normals.rows() == d, ErrorKind::Usage, "sample: point/normal dimension mismatch");
    require(s.points.cols() == s.grid.size() && s.normals.cols() == s.grid.size(), ErrorKind::Usage,
            "sample: sample count does not match the grid");
    require(s.points.allFinite() && s.normals.allFinite(), ErrorKind::Validation, "sample: non-finite values");
    for (long i = 0; i < s.size(); ++i) {
        if (std::abs(s.normals.col(i).norm() - 1) > unit_tol)
            fail(ErrorKind::Validation, "sample: normal at sample " + std::to_string(i) + " is not a unit vector");
    }
}

}  // namespace liesphere
