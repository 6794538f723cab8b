#include "liesphere/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace liesphere;

namespace {

Vec e(int dim, int i) {
    Vec v = Vec::Zero(dim);
    v[i] = 1;
    return v;
}

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<long>(xs.size()));
    long i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("metric sign patterns") {
    const auto lie = MetricSignature::lie(3);
    CHECK(lie.order == std::vector<int>{-1, 1, 1, 1, 1, -1});
    CHECK(lie.n_plus == 4);
    CHECK(lie.n_minus == 2);
    const auto lor = MetricSignature::lorentz(5);
    CHECK(lor.order == std::vector<int>{-1, 1, 1, 1, 1});
    CHECK(lor.gram().diagonal() == vec({-1, 1, 1, 1, 1}));
}

TEST_CASE("inner product values") {
    const auto lie = MetricSignature::lie(3);
    CHECK(inner(e(6, 0), e(6, 0), lie) == -1);
    CHECK(inner(vec({1, 1, 0, 0, 0, 0}), vec({1, -1, 0, 0, 0, 0}), lie) == -2);
    CHECK(inner(vec({1, 1, 0, 0, 0}), vec({1, 1, 0, 0, 0}), MetricSignature::lorentz(5)) == 0);
}

TEST_CASE("inner product rejects mismatched dimensions") {
    try {
        inner(Vec::Zero(5), Vec::Zero(6), MetricSignature::lie(3));
        FAIL("expected a usage error");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::Usage);
    }
}

TEST_CASE("inner product is symmetric and bilinear") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    const auto m = MetricSignature::lie(4);
    for (int trial = 0; trial < 50; ++trial) {
        Vec x(7), y(7), z(7);
        for (int i = 0; i < 7; ++i) {
            x[i] = nd(rng);
            y[i] = nd(rng);
            z[i] = nd(rng);
        }
        CHECK(inner(x, y, m) == doctest::Approx(inner(y, x, m)));
        CHECK(inner(2.5 * x + z, y, m) == doctest::Approx(2.5 * inner(x, y, m) + inner(z, y, m)));
    }
}

TEST_CASE("causal types") {
    const auto lie = MetricSignature::lie(3);
    CHECK(causal_type(e(6, 0), lie) == CausalType::Timelike);
    CHECK(causal_type(e(6, 1), lie) == CausalType::Spacelike);
    CHECK(causal_type(vec({1, 1, 0, 0, 0}), MetricSignature::lorentz(5)) == CausalType::Lightlike);
    CHECK_THROWS_AS(causal_type(Vec::Zero(6), lie), Error);
}

TEST_CASE("polar complements") {
    const int n = 4;
    const auto lor = MetricSignature::lorentz(n + 1);
    SUBCASE("timelike line has a positive definite complement") {
        const auto c = polar_complement(Mat(e(n + 1, 0)), lor);
        CHECK(c.dim == n);
        CHECK(c.signature == Signature{n, 0, 0});
    }
    SUBCASE("lightlike line lies in its own complement") {
        Vec l = e(n + 1, 0) + e(n + 1, 1);
        const auto c = polar_complement(Mat(l), lor);
        CHECK(c.dim == n);
        const Vec proj = c.basis * (c.basis.transpose() * l);
        CHECK((proj - l).norm() < 1e-12);
        CHECK(c.signature.zero == 1);
    }
    SUBCASE("spacelike line has a Lorentzian complement") {
        const auto c = polar_complement(Mat(e(n + 1, 1)), lor);
        CHECK(c.dim == n);
        CHECK(c.signature.minus == 1);
        CHECK(c.signature.plus == n - 1);
    }
}

TEST_CASE("subspace signatures") {
    const auto lie = MetricSignature::lie(3);
    Mat cols(6, 3);
    cols << e(6, 0), e(6, 1), e(6, 2);
    auto s = subspace_signature(cols, lie);
    CHECK(s.dim == 3);
    CHECK(s.signature == Signature{2, 1, 0});

    Mat null_pair(6, 2);
    null_pair << e(6, 0) + e(6, 1), e(6, 0) - e(6, 1);
    s = subspace_signature(null_pair, lie);
    CHECK(s.dim == 2);
    CHECK(s.signature == Signature{1, 1, 0});

    SUBCASE("points [e1 + v] for v on a sampled circle span a (2,1) space") {
        std::vector<Vec> pts;
        for (int k = 0; k < 40; ++k) {
            const double t = 0.157 * k;
            Vec v = Vec::Zero(6);
            v[0] = 1;
            v[3] = std::cos(t);
            v[4] = std::sin(t);
            pts.push_back(v);
        }
        const auto f = subspace_signature(pts, lie);
        CHECK(f.dim == 3);
        CHECK(f.signature == Signature{2, 1, 0});
        CHECK(f.residual < 1e-12);
    }
}

TEST_CASE("dimension of a span plus its polar complement is the ambient dimension") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    const auto lie = MetricSignature::lie(4);
    for (int k = 1; k <= 5; ++k) {
        Mat cols(7, k);
        for (long i = 0; i < cols.size(); ++i) cols.data()[i] = nd(rng);
        const auto s = subspace_signature(cols, lie);
        const auto c = polar_complement(cols, lie);
        CHECK(s.dim + c.dim == 7);
        // Every complement vector is polar to every span vector.
        const Mat cross = cols.transpose() * lie.gram() * c.basis;
        CHECK(cross.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("projective equality") {
    const auto m = MetricSignature::euclidean(3);
    CHECK(projective_equal({vec({1, 2, 0}), m}, {vec({-2, -4, 0}), m}));
    CHECK_FALSE(projective_equal({vec({1, 0, 0}), m}, {vec({0, 1, 0}), m}));
    CHECK(projective_equal({vec({1, 0, 0}), m}, {vec({1, 1e-14, 0}), m}, 1e-9));
    CHECK(projective_distance(vec({1, 0}), vec({1, 1})) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("subspace distance ignores the choice of basis") {
    Mat a(4, 2), b(4, 2);
    a << 1, 0, 0, 1, 0, 0, 0, 0;
    b << 1, 1, 1, -1, 0, 0, 0, 0;
    CHECK(subspace_distance(a, b) < 1e-12);
    b << 1, 0, 0, 0, 0, 1, 0, 0;
    CHECK(subspace_distance(a, b) == doctest::Approx(1.0));
}
