// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed here and must not be relaxed.
#include "liesphere/constructions.hpp"
#include "liesphere/curvature.hpp"
#include "liesphere/dupin.hpp"
#include "liesphere/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

using namespace liesphere;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = nd(rng);
    return v;
}

Vec unit(int n, std::mt19937_64& rng) { return gaussian(n, rng).normalized(); }

// Unit vector orthogonal to p.
Vec unit_orthogonal(const Vec& p, std::mt19937_64& rng) {
    Vec v = gaussian(static_cast<int>(p.size()), rng);
    v -= v.dot(p) * p;
    return v.normalized();
}

// Smallest projective distance from x to a record sphere; reports its multiplicity.
double nearest_sphere(const PointCurvatureReport& r, const Vec& x, int& mult) {
    double best = 1e9;
    for (const auto& rec : r.records) {
        const double d = projective_distance(rec.K, x);
        if (d < best) {
            best = d;
            mult = rec.multiplicity;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------------------------------------------

Outcome coordinate_round_trips() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uni(-1, 1);
    double worst_trip = 0, worst_quadric = 0;
    int kind_errors = 0;
    auto quadric = [&](const ProjectiveVector& x) {
        const double q = std::abs(inner(x.coords, x.coords, x.metric)) / x.coords.squaredNorm();
        worst_quadric = std::max(worst_quadric, q);
    };
    for (int i = 0; i < 10000; ++i) {
        const int n = 2 + i % 5;
        EuclideanObject obj;
        switch (i % 4) {
            case 0: obj = EuclideanObject::point(gaussian(n, rng)); break;
            case 1: obj = EuclideanObject::sphere(gaussian(n, rng), (uni(rng) < 0 ? -1 : 1) * (0.05 + 2 * std::abs(uni(rng)))); break;
            case 2: obj = EuclideanObject::plane(unit(n, rng), 2 * uni(rng)); break;
            default: obj = EuclideanObject::improper(n); break;
        }
        const auto x = euclidean_to_lie(obj);
        quadric(x);
        const auto back = lie_to_euclidean(x);
        if (back.kind != obj.kind || back.n != n) {
            ++kind_errors;
            continue;
        }
        if (obj.kind != EuclideanObject::Kind::ImproperPoint)
            worst_trip = std::max({worst_trip, (back.vec - obj.vec).cwiseAbs().maxCoeff(), std::abs(back.scalar - obj.scalar)});
    }
    for (int i = 0; i < 2000; ++i) {
        const int n = 2 + i % 5;
        const auto s = make_spherical_sphere(unit(n + 1, rng), 0.999 * (kPi / 2) * uni(rng));
        const auto x = spherical_to_lie(s);
        quadric(x);
        const auto back = lie_to_spherical(x);
        worst_trip = std::max({worst_trip, (back.center - s.center).cwiseAbs().maxCoeff(), std::abs(back.radius - s.radius)});
    }
    const double secs = seconds_since(t0);
    const bool pass = kind_errors == 0 && worst_trip <= 1e-10 && worst_quadric <= 1e-12 && secs < 5;
    return {pass, fmt("12000 objects, max round-trip error %.2e (<= 1e-10), max |<x,x>|/|x|^2 %.2e (<= 1e-12), "
                      "type errors %d, %.2f s (< 5 s)",
                      worst_trip, worst_quadric, kind_errors, secs)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome contact_equivalence() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> uni(-1, 1), away(0.01, 1.0);
    int disagreements = 0, construction_errors = 0;
    const double tol = 1e-9;
    for (int i = 0; i < 10000; ++i) {
        const int n = 2 + (i / 5) % 5;
        const bool tangent = (i / 25) % 2 == 0;
        const double bump = tangent ? 0.0 : (uni(rng) < 0 ? -1 : 1) * away(rng);
        EuclideanObject a, b;
        bool metric = false;
        switch (i % 5) {
            case 0: {  // sphere-sphere: |p1 - p2|^2 = (r1 - r2)^2
                const Vec p1 = gaussian(n, rng);
                const double r1 = 0.2 + std::abs(uni(rng)), r2 = (uni(rng) < 0 ? -1 : 1) * (0.2 + std::abs(uni(rng)));
                const Vec p2 = p1 + (std::abs(r1 - r2) + bump) * unit(n, rng);
                a = EuclideanObject::sphere(p1, r1);
                b = EuclideanObject::sphere(p2, r2);
                const double lhs = (p1 - p2).squaredNorm(), rhs = (r1 - r2) * (r1 - r2);
                metric = std::abs(lhs - rhs) <= tol * (1 + lhs + rhs);
                break;
            }
            case 1: {  // sphere-plane: p.N = h + r
                const Vec N = unit(n, rng), p = gaussian(n, rng);
                const double r = (uni(rng) < 0 ? -1 : 1) * (0.2 + std::abs(uni(rng)));
                const double h = p.dot(N) - r + bump;
                a = EuclideanObject::sphere(p, r);
                b = EuclideanObject::plane(N, h);
                metric = std::abs(p.dot(N) - h - r) <= tol * (1 + p.norm() + std::abs(h) + std::abs(r));
                break;
            }
            case 2: {  // point-sphere: |u - p| = |r|
                const Vec p = gaussian(n, rng);
                const double r = (uni(rng) < 0 ? -1 : 1) * (0.2 + std::abs(uni(rng)));
                const Vec u = p + (std::abs(r) + bump) * unit(n, rng);
                a = EuclideanObject::point(u);
                b = EuclideanObject::sphere(p, r);
                metric = std::abs((u - p).norm() - std::abs(r)) <= tol * (1 + u.norm() + p.norm() + std::abs(r));
                break;
            }
            case 3: {  // point-plane: u.N = h
                const Vec N = unit(n, rng), u = gaussian(n, rng);
                const double h = u.dot(N) + bump;
                a = EuclideanObject::point(u);
                b = EuclideanObject::plane(N, h);
                metric = std::abs(u.dot(N) - h) <= tol * (1 + u.norm() + std::abs(h));
                break;
            }
            default: {  // plane-plane: N1 = N2
                const Vec N1 = unit(n, rng);
                const Vec N2 = tangent ? N1 : Vec((N1 + std::abs(bump) * unit_orthogonal(N1, rng)).normalized());
                a = EuclideanObject::plane(N1, 2 * uni(rng));
                b = EuclideanObject::plane(N2, 2 * uni(rng));
                metric = (N1 - N2).norm() <= tol;
                break;
            }
        }
        const bool lie = oriented_contact(euclidean_to_lie(a), euclidean_to_lie(b), tol);
        if (lie != metric) ++disagreements;
        if (metric != tangent) ++construction_errors;
    }
    return {disagreements == 0 && construction_errors == 0,
            fmt("10000 pairs (half tangent), disagreements with the metric conditions: %d, construction errors: %d",
                disagreements, construction_errors)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome pencil_law() {
    std::mt19937_64 rng(303);
    double worst = 0;
    for (int e = 0; e < 1000; ++e) {
        const int n = 2 + e % 5;
        const Vec p = unit(n + 1, rng);
        const Vec xi = unit_orthogonal(p, rng);
        const auto line = pencil_from_contact_element(make_contact_element(p, xi));
        for (int k = 0; k < 32; ++k) {
            const double t = -kPi / 2 + (k + 1) * kPi / 32;
            const auto s = lie_to_spherical(pencil_point(line, t));
            const Vec c = std::cos(t) * p + std::sin(t) * xi;
            worst = std::max({worst, (s.center - c).cwiseAbs().maxCoeff(), std::abs(s.radius - t)});
        }
    }
    return {worst <= 1e-10, fmt("1000 contact elements x 32 radii, max decode error %.2e (<= 1e-10)", worst)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome torus_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto M = torus(2, 1, 128, 128);
    const auto g = lift(M);
    const auto field = curvature_field(g);
    double worst_shape = 0, worst_constant = 0;
    int degenerate = 0;
    for (long i = 0; i < g.size(); ++i) {
        if (field[i].degenerate) {
            ++degenerate;
            continue;
        }
        std::vector<double> mus;
        for (const auto& rec : field[i].records)
            for (int m = 0; m < rec.multiplicity; ++m) mus.push_back(rec.mu);
        const Vec k = principal_curvatures(M, i);
        if (mus.size() != 2) {
            ++degenerate;
            continue;
        }
        worst_shape = std::max({worst_shape, std::abs(mus[0] - k[0]), std::abs(mus[1] - k[1])});
        worst_constant = std::max(worst_constant, std::min(std::abs(mus[0] - 1), std::abs(mus[1] - 1)));
    }
    const double secs = seconds_since(t0);
    const bool pass = degenerate == 0 && worst_shape <= 1e-4 && worst_constant <= 1e-4 && secs < 30;
    return {pass, fmt("16384 samples, max |mu - shape eigenvalue| %.2e (<= 1e-4), max deviation of the mu = 1 family "
                      "%.2e (<= 1e-4), degenerate %d, %.2f s (< 30 s)",
                      worst_shape, worst_constant, degenerate, secs)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome lie_invariance() {
    const std::vector<std::pair<const char*, LegendreGrid>> cases = {
        {"torus", lift(torus(2, 1, 48, 48))},
        {"product", lift(product_spheres(1, 1, std::sqrt(0.5), std::sqrt(0.5), 24))}};
    double worst = 0;
    int mult_errors = 0, flag_errors = 0;
    for (const auto& [name, g] : cases) {
        const auto a0 = analyze_curvature(g);
        const auto d0 = dupin_report(a0);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto T = random_lie_transform(3, seed);
            const auto gt = apply(T, g);
            const auto a1 = analyze_curvature(gt);
            const auto d1 = dupin_report(a1);
            if (d1.is_dupin != d0.is_dupin || d1.is_proper != d0.is_proper) ++flag_errors;
            for (long i = 0; i < g.size(); ++i) {
                const auto& r0 = a0.reports[i];
                const auto& r1 = a1.reports[i];
                if (r0.degenerate || r1.degenerate || r0.g != r1.g) {
                    ++mult_errors;
                    continue;
                }
                for (const auto& rec : r0.records) {
                    int m = 0;
                    worst = std::max(worst, nearest_sphere(r1, T.matrix * rec.K, m));
                    if (m != rec.multiplicity) ++mult_errors;
                }
            }
        }
    }
    const bool pass = worst <= 1e-6 && mult_errors == 0 && flag_errors == 0;
    return {pass, fmt("20 transforms x {torus, product}, max projective distance to T[K] %.2e (<= 1e-6), multiplicity "
                      "mismatches %d, Dupin/proper flag changes %d",
                      worst, mult_errors, flag_errors)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome isoparametric_line() {
    const auto g = lift(product_spheres(1, 1, std::sqrt(0.5), std::sqrt(0.5), 32));
    Mat E = Mat::Zero(6, 2);
    E(0, 0) = 1;
    E(5, 1) = 1;
    const auto a = analyze_curvature(g);
    const auto fit = isoparametric_fit(a, track_families(a));
    const double d0 = fit.found ? subspace_distance(fit.line, E) : 1.0;

    const auto T = random_lie_transform(3, 5);
    const auto gT = apply(T, g);
    const auto at = analyze_curvature(gT);
    const auto fitT = isoparametric_fit(at, track_families(at));
    const double d1 = fitT.found ? subspace_distance(fitT.line, T.matrix * E) : 1.0;

    const bool pass = fit.found && d0 <= 1e-8 && fit.residual <= 1e-8 && fitT.found && d1 <= 1e-6;
    return {pass, fmt("found %d, distance to [e1,e6] %.2e (<= 1e-8), residual %.2e (<= 1e-8); after T: found %d, "
                      "distance to T[e1,e6] %.2e (<= 1e-6)",
                      fit.found, d0, fit.residual, fitT.found, d1)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome reducibility_classes() {
    int wrong = 0, runs = 0;
    std::string first_error;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0, 1);
        const double a = 2.2 + 0.8 * uni(rng), b = 0.6 + 0.4 * uni(rng);
        const double u0 = 2 * kPi * uni(rng), v0 = -1.0 + 1.3 * uni(rng);
        const auto M = torus_patch(a, b, u0, u0 + 0.6, v0, v0 + 0.5, 10, 10);

        auto check = [&](const char* label, PinkallKind kind, const PinkallOptions& o, Reduction want,
                         std::optional<Signature> sig) {
            ++runs;
            const auto g = lift(pinkall_construct(kind, M, o));
            const auto an = analyze_curvature(g);
            const auto d = dupin_report(an);
            const auto red = reducibility(an, track_families(an));
            const FamilyReducibility* best = nullptr;
            for (const auto& f : red.families)
                if (!best || f.axis_weight.back() > best->axis_weight.back()) best = &f;
            const bool ok = d.is_proper && best && best->classification == want &&
                            (!sig || best->complement_signature == *sig);
            if (!ok) {
                ++wrong;
                if (first_error.empty())
                    first_error = fmt(" first failure: seed %d %s -> %s", static_cast<int>(seed), label,
                                      best ? to_string(best->classification) : "no family");
            }
        };
        PinkallOptions o;
        check("cylinder", PinkallKind::Cylinder, o, Reduction::Cylinder, Signature{1, 0, 1});
        o.offset = 2;
        check("revolution", PinkallKind::Revolution, o, Reduction::Revolution, Signature{2, 0, 0});
        o = {};
        o.epsilon = 0.3;
        o.samples = 11;
        check("tube", PinkallKind::Tube, o, Reduction::Tube, Signature{1, 1, 0});
        check("cone", PinkallKind::Cone, PinkallOptions{}, Reduction::Tube, std::nullopt);
    }
    return {wrong == 0, fmt("%d constructions over 5 seeded torus patches, misclassified %d%s", runs, wrong,
                            first_error.c_str())};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome cyclide_characteristic() {
    std::string detail;
    bool pass = true;
    for (auto [p, q, res] : {std::tuple{1, 1, 12}, std::tuple{1, 2, 9}, std::tuple{2, 1, 9}}) {
        const auto g = cyclide_model(p, q, res);
        const auto a = analyze_curvature(g);
        const auto c = cyclide_fit(a, track_families(a));
        const bool ok = c.ok && c.p == p && c.q == q && c.E.dim == q + 2 && c.E.signature == Signature{q + 1, 1, 0} &&
                        c.residual <= 1e-8;
        pass = pass && ok;
        detail += fmt("(%d,%d): got (%d,%d) dim E %d sig (%d,%d) res %.1e; ", p, q, c.p, c.q, c.E.dim,
                      c.E.signature.plus, c.E.signature.minus, c.residual);
    }
    const auto gt = lift(torus(2, 1, 64, 64));
    const auto a = analyze_curvature(gt);
    const auto c = cyclide_fit(a, track_families(a));
    const bool ok = c.ok && c.p == 1 && c.q == 1 && c.residual <= 1e-8;
    pass = pass && ok;
    detail += fmt("torus(2,1): got (%d,%d) res %.1e (residuals <= 1e-8)", c.p, c.q, c.residual);
    return {pass, detail};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome focal_counts() {
    std::mt19937_64 rng(909);
    int too_many = 0, wrong_set = 0;
    const auto T = lift(torus(2, 1, 64, 64));
    const auto P = lift(product_spheres(1, 1, std::sqrt(0.5), std::sqrt(0.5), 32));
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const long it = std::uniform_int_distribution<long>(0, T.size() - 1)(rng);
        if (static_cast<int>(singular_radii(T, it).size()) > T.n - 1) ++too_many;
        const long ip = std::uniform_int_distribution<long>(0, P.size() - 1)(rng);
        const auto r = singular_radii(P, ip);
        if (static_cast<int>(r.size()) > P.n - 1) ++too_many;
        if (r.size() != 2) {
            ++wrong_set;
            continue;
        }
        worst = std::max({worst, std::abs(r[0] - kPi / 4), std::abs(r[1] - 3 * kPi / 4)});
    }
    const bool pass = too_many == 0 && wrong_set == 0 && worst <= 1e-3;
    return {pass, fmt("100 samples each, counts above n-1: %d; product torus set {pi/4, 3pi/4}: wrong size %d, "
                      "max error %.2e (<= 1e-3)",
                      too_many, wrong_set, worst)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome lie_curvature_hopf() {
    const auto t0 = std::chrono::steady_clock::now();
    const double psi_exact = lie_curvature({1, 2, 3, 4});

    io::Json spec = {{"kind", "hopf"}, {"resolution", 13}};
    const auto H = example_grid(spec);
    const auto a = analyze_curvature(H);
    const auto d = dupin_report(a);
    std::vector<char> flagged(H.size(), 0);
    for (long i : d.flagged_samples) flagged[i] = 1;
    long used = 0, bad_g = 0;
    double worst = 0;
    for (long i = 0; i < H.size(); ++i) {
        if (flagged[i] || a.reports[i].degenerate) continue;
        ++used;
        if (a.reports[i].g != 4) {
            ++bad_g;
            continue;
        }
        worst = std::max(worst, std::abs(lie_curvature(a.reports[i]) - 0.5));
    }

    io::Json spec2 = {{"kind", "hopf"}, {"resolution", 11}, {"spacing", 0.15}, {"boost", 0.8}};
    const auto H2 = example_grid(spec2);
    const auto field = curvature_field(H2);
    double s = 0, s2 = 0;
    long cnt = 0;
    for (const auto& r : field) {
        if (r.degenerate || r.g != 4) continue;
        const double psi = lie_curvature(r);
        s += psi;
        s2 += psi * psi;
        ++cnt;
    }
    const double mean = cnt ? s / cnt : 0;
    const double sd = cnt > 1 ? std::sqrt(std::max(0.0, s2 / cnt - mean * mean)) : 0;
    const double secs = seconds_since(t0);
    const bool pass = psi_exact == 0.25 && used > 0 && bad_g == 0 && worst <= 1e-3 && cnt > 0 && sd > 1e-2 && secs < 300;
    return {pass, fmt("psi(1,2,3,4) = %.17g; isoparametric Hopf: %ld samples, %ld unflagged, g != 4 at %ld, max |psi - "
                      "0.5| %.2e (<= 1e-3); boosted Hopf: std psi %.3e over %ld samples (> 1e-2); %.1f s (< 300 s)",
                      psi_exact, static_cast<long>(H.size()), used, bad_g, worst, sd, cnt, secs)};
}

// ---------------------------------------------------------------------------------------------------------------

Outcome tube_non_proper() {
    PinkallOptions o;
    o.epsilon = 0.5;
    o.samples = 16;
    const auto d = dupin_report(lift(pinkall_construct(PinkallKind::Tube, torus(2, 1, 24, 24), o)));
    bool g_ok = !d.g_values.empty();
    std::string gs;
    for (int g : d.g_values) {
        g_ok = g_ok && (g == 2 || g == 3);
        gs += " " + std::to_string(g);
    }
    return {d.is_dupin && !d.is_proper && g_ok,
            fmt("is_dupin %d (want 1), is_proper %d (want 0), g values:%s (want within {2,3})", d.is_dupin,
                d.is_proper, gs.c_str())};
}

}  // namespace

int main() {
    report(1, "coordinate round trips", coordinate_round_trips);
    report(2, "contact equivalence", contact_equivalence);
    report(3, "pencil law", pencil_law);
    report(4, "torus curvature oracle", torus_oracle);
    report(5, "Lie invariance", lie_invariance);
    report(6, "isoparametric line", isoparametric_line);
    report(7, "reducibility", reducibility_classes);
    report(8, "cyclide characteristic", cyclide_characteristic);
    report(9, "focal point counts", focal_counts);
    report(10, "Lie curvature", lie_curvature_hopf);
    report(11, "non-proper tube", tube_non_proper);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
