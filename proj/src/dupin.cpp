#include "liesphere/dupin.hpp"

#include "liesphere/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <random>

namespace liesphere {

long CurvatureAnalysis::analyzed() const {
    return std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.degenerate; });
}

double record_distance(const CurvatureSphereRecord& a, const CurvatureSphereRecord& b) {
    const Mat& small = a.multiplicity <= b.multiplicity ? a.principal_basis : b.principal_basis;
    const Mat& big = a.multiplicity <= b.multiplicity ? b.principal_basis : a.principal_basis;
    const Mat off = small - big * (big.transpose() * small);
    Eigen::JacobiSVD<Mat> svd(off);
    return projective_distance(a.K, b.K) + svd.singularValues()[0];
}

std::optional<int> CurvatureAnalysis::match(long t, const CurvatureSphereRecord& rec) const {
    if (t < 0 || reports[t].degenerate) return std::nullopt;
    int best = -1;
    double bd = kInfinity;
    const auto& recs = reports[t].records;
    for (int j = 0; j < static_cast<int>(recs.size()); ++j) {
        if (projective_distance(recs[j].K, rec.K) > match_tol) continue;
        const double d = record_distance(recs[j], rec);
        if (d < bd) {
            bd = d;
            best = j;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

std::optional<Vec> CurvatureAnalysis::sphere_derivative(long idx, int r, int axis) const {
    const ParamGrid& pg = grid->grid;
    const auto& rec = reports[idx].records[r];
    const Vec& k0 = rec.K;
    auto at = [&](int delta) -> std::optional<Vec> {
        const long t = pg.neighbor(idx, axis, delta);
        if (t < 0) return std::nullopt;
        const auto j = match(t, rec);
        if (!j) return std::nullopt;
        Vec k = reports[t].records[*j].K;
        if (k.dot(k0) < 0) k = -k;
        return k;
    };
    const double h = pg.step(axis);
    const auto p1 = at(1), m1 = at(-1);
    Vec d;
    if (p1 && m1) {
        d = (*p1 - *m1) / (2 * h);
    } else if (p1) {
        const auto p2 = at(2);
        d = p2 ? Vec((-3 * k0 + 4 * *p1 - *p2) / (2 * h)) : Vec((*p1 - k0) / h);
    } else if (m1) {
        const auto m2 = at(-2);
        d = m2 ? Vec((3 * k0 - 4 * *m1 + *m2) / (2 * h)) : Vec((k0 - *m1) / h);
    } else {
        return std::nullopt;
    }
    d -= d.dot(k0) * k0;
    return d;
}

CurvatureAnalysis analyze_curvature(const LegendreGrid& g, const CurvatureOptions& opt, double match_tol) {
    CurvatureAnalysis a;
    a.grid = &g;
    a.reports = curvature_field(g, opt);
    a.match_tol = match_tol;
    return a;
}

DupinReport dupin_report(const CurvatureAnalysis& a, const DupinOptions& opt) {
    const LegendreGrid& g = *a.grid;
    const long N = g.size();
    const long ok = a.analyzed();
    if (static_cast<double>(ok) < opt.min_analyzed * static_cast<double>(N))
        fail(ErrorKind::Analysis, "dupin: curvature analysis succeeded on only " + std::to_string(ok) + " of " +
                                      std::to_string(N) + " samples");
    DupinReport rep;
    double hmax = 0;
    for (int ax = 0; ax < g.grid.axes(); ++ax) hmax = std::max(hmax, g.grid.step(ax));
    rep.tolerance = opt.dupin_tol >= 0 ? opt.dupin_tol : 1e-6 + hmax * hmax;

    std::vector<double> worst(N, 0.0);
    std::vector<char> flagged(N, 0);
    parallel_for(N, [&](long i) {
        const auto& r = a.reports[i];
        if (r.degenerate) {
            flagged[i] = 1;
            return;
        }
        for (int j = 0; j < static_cast<int>(r.records.size()); ++j) {
            const Mat& basis = r.records[j].principal_basis;
            std::vector<std::optional<Vec>> dk(g.grid.axes());
            for (int c = 0; c < basis.cols(); ++c) {
                Vec d = Vec::Zero(g.n + 3);
                for (int ax = 0; ax < g.grid.axes(); ++ax) {
                    if (std::abs(basis(ax, c)) <= 1e-6) continue;
                    if (!dk[ax]) dk[ax] = a.sphere_derivative(i, j, ax);
                    if (!dk[ax]) {
                        flagged[i] = 1;
                        return;
                    }
                    d += basis(ax, c) * *dk[ax];
                }
                worst[i] = std::max(worst[i], d.norm());
            }
        }
    });
    rep.g_field.assign(N, 0);
    std::vector<int> gs;
    for (long i = 0; i < N; ++i) {
        if (!a.reports[i].degenerate) rep.g_field[i] = a.reports[i].g;
        if (flagged[i]) {
            rep.flagged_samples.push_back(i);
            continue;
        }
        gs.push_back(a.reports[i].g);
        if (rep.worst_sample < 0 || worst[i] > rep.worst_derivative) {
            rep.worst_derivative = worst[i];
            rep.worst_sample = i;
        }
    }
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    rep.g_values = gs;
    rep.flagged_fraction = static_cast<double>(rep.flagged_samples.size()) / static_cast<double>(N);
    rep.is_dupin = !gs.empty() && rep.worst_derivative <= rep.tolerance;
    rep.is_proper = rep.is_dupin && gs.size() == 1;
    return rep;
}

DupinReport dupin_report(const LegendreGrid& g, const DupinOptions& opt) {
    return dupin_report(analyze_curvature(g, opt.curvature, opt.match_tol), opt);
}

namespace {

// Greedy matching of records at t to records at s: smallest projective distance first, ties by mu order.
std::vector<int> greedy_match(const PointCurvatureReport& s, const PointCurvatureReport& t, double tol) {
    struct Cand {
        double d;
        int gap, i, j;
    };
    std::vector<Cand> c;
    for (int j = 0; j < static_cast<int>(t.records.size()); ++j)
        for (int i = 0; i < static_cast<int>(s.records.size()); ++i) {
            if (projective_distance(s.records[i].K, t.records[j].K) > tol) continue;
            c.push_back({record_distance(s.records[i], t.records[j]), std::abs(i - j), i, j});
        }
    std::sort(c.begin(), c.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        return a.gap < b.gap;
    });
    std::vector<int> to_s(t.records.size(), -1);
    std::vector<char> used(s.records.size(), 0);
    for (const auto& x : c)
        if (to_s[x.j] < 0 && !used[x.i]) {
            to_s[x.j] = x.i;
            used[x.i] = 1;
        }
    return to_s;
}

}  // namespace

FamilyTracking track_families(const CurvatureAnalysis& a) {
    const LegendreGrid& g = *a.grid;
    const long N = g.size();
    FamilyTracking ft;
    ft.label.resize(N);
    for (long i = 0; i < N; ++i) ft.label[i].assign(a.reports[i].records.size(), -1);

    // Seed at the first sample carrying the most frequent g.
    std::map<int, long> freq;
    for (const auto& r : a.reports)
        if (!r.degenerate) freq[r.g]++;
    if (freq.empty()) {
        ft.untracked_samples = N;
        return ft;
    }
    const int gmode = std::max_element(freq.begin(), freq.end(), [](auto& x, auto& y) { return x.second < y.second; })->first;
    std::vector<char> seen(N, 0);
    for (long seed = 0; seed < N; ++seed) {
        if (seen[seed] || a.reports[seed].degenerate || a.reports[seed].g != gmode) continue;
        if (ft.families > 0) break;  // one connected sweep; leftover components stay untracked
        for (int j = 0; j < gmode; ++j) ft.label[seed][j] = ft.families++;
        std::deque<long> queue{seed};
        seen[seed] = 1;
        while (!queue.empty()) {
            const long s = queue.front();
            queue.pop_front();
            for (int ax = 0; ax < g.grid.axes(); ++ax)
                for (int d : {-1, 1}) {
                    const long t = g.grid.neighbor(s, ax, d);
                    if (t < 0 || seen[t] || a.reports[t].degenerate) continue;
                    const auto to_s = greedy_match(a.reports[s], a.reports[t], a.match_tol);
                    for (size_t j = 0; j < to_s.size(); ++j)
                        ft.label[t][j] = to_s[j] >= 0 ? ft.label[s][to_s[j]] : ft.families++;
                    seen[t] = 1;
                    queue.push_back(t);
                }
        }
    }
    for (long i = 0; i < N; ++i)
        if (!seen[i]) ft.untracked_samples++;

    // Consistency over every neighbour pair.
    for (long s = 0; s < N; ++s) {
        if (!seen[s]) continue;
        for (int ax = 0; ax < g.grid.axes(); ++ax) {
            const long t = g.grid.neighbor(s, ax, 1);
            if (t < 0 || !seen[t]) continue;
            const auto to_s = greedy_match(a.reports[s], a.reports[t], a.match_tol);
            for (size_t j = 0; j < to_s.size(); ++j)
                if (to_s[j] < 0 || ft.label[t][j] != ft.label[s][to_s[j]]) {
                    ft.conflicts++;
                    break;
                }
        }
    }

    const int F = ft.families;
    std::vector<double> ss(F, 0), cc(F, 0);
    std::vector<std::map<int, long>> mult(F);
    std::vector<long> count(F, 0);
    ft.axis_weight.assign(F, std::vector<double>(g.grid.axes(), 0.0));
    for (long i = 0; i < N; ++i)
        for (size_t j = 0; j < ft.label[i].size(); ++j) {
            const int f = ft.label[i][j];
            if (f < 0) continue;
            const auto& rec = a.reports[i].records[j];
            ss[f] += std::sin(2 * rec.theta);
            cc[f] += std::cos(2 * rec.theta);
            mult[f][rec.multiplicity]++;
            count[f]++;
            for (int ax = 0; ax < g.grid.axes(); ++ax)
                ft.axis_weight[f][ax] += rec.principal_basis.row(ax).squaredNorm() / rec.multiplicity;
        }
    ft.mean_mu_angle.resize(F);
    ft.multiplicity.resize(F);
    for (int f = 0; f < F; ++f) {
        double t = 0.5 * std::atan2(ss[f], cc[f]);
        if (t < 0) t += std::numbers::pi;
        ft.mean_mu_angle[f] = t;
        ft.multiplicity[f] = mult[f].empty() ? 0
                                             : std::max_element(mult[f].begin(), mult[f].end(),
                                                                [](auto& x, auto& y) { return x.second < y.second; })
                                                   ->first;
        for (auto& w : ft.axis_weight[f]) w /= std::max<long>(count[f], 1);
    }
    return ft;
}

namespace {

// Stacked unit sphere vectors of one family.
Mat family_matrix(const CurvatureAnalysis& a, const FamilyTracking& ft, int f) {
    std::vector<const Vec*> cols;
    for (size_t i = 0; i < ft.label.size(); ++i)
        for (size_t j = 0; j < ft.label[i].size(); ++j)
            if (ft.label[i][j] == f) cols.push_back(&a.reports[i].records[j].K);
    Mat m(a.grid->n + 3, static_cast<long>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<long>(c)) = *cols[c];
    return m;
}

struct LineObjective {
    Mat G;
    std::vector<Mat> S;  // per family: sum (G k)(G k)^T over invariantly normalized spheres

    // Restricted Gram of a timelike plane is negative definite; returns +inf otherwise.
    double operator()(const Mat& B, std::vector<Eigen::Vector2d>* coef = nullptr) const {
        const Eigen::Matrix2d H = B.transpose() * G * B;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> hs(H);
        if (!(hs.eigenvalues()[1] < 0)) return kInfinity;
        double total = 0;
        if (coef) coef->clear();
        for (const Mat& s : S) {
            const Eigen::Matrix2d A = B.transpose() * s * B;
            Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> ge(A, -H);
            total += std::max(ge.eigenvalues()[0], 0.0);
            if (coef) coef->push_back(ge.eigenvectors().col(0));
        }
        return total;
    }
};

Mat orthonormal_columns(const Mat& b) {
    Eigen::HouseholderQR<Mat> qr(b);
    return qr.householderQ() * Mat::Identity(b.rows(), b.cols());
}

}  // namespace

IsoparametricFit isoparametric_fit(const CurvatureAnalysis& a, const FamilyTracking& ft,
                                   const IsoparametricOptions& opt) {
    const LegendreGrid& g = *a.grid;
    const int dim = g.n + 3;
    const MetricSignature metric = MetricSignature::lie(g.n);
    IsoparametricFit fit;
    const int F = ft.families;
    if (F < 2) {
        fit.message = "fewer than two curvature-sphere families";
        return fit;
    }

    // Spheres as sin(theta) Z1 + cos(theta) Zn3 without renormalization: this transforms exactly by T
    // under apply(T, grid), so the initial line below is equivariant.
    LineObjective obj;
    obj.G = metric.gram();
    obj.S.assign(F, Mat::Zero(dim, dim));
    Mat C = Mat::Zero(dim, dim);
    for (long i = 0; i < g.size(); ++i) {
        if (a.reports[i].degenerate) continue;
        for (size_t j = 0; j < ft.label[i].size(); ++j) {
            const int f = ft.label[i][j];
            if (f < 0) continue;
            const double th = a.reports[i].records[j].theta;
            const Vec k = std::sin(th) * g.Z1.col(i) + std::cos(th) * g.Zn3.col(i);
            const Vec gk = obj.G * k;
            obj.S[f] += gk * gk.transpose();
            C += k * k.transpose();
        }
    }

    // Initial line: negative eigenplane of C G, computed through C^{1/2} G C^{1/2}.
    Eigen::SelfAdjointEigenSolver<Mat> ce(C);
    const Mat root = ce.eigenvectors() * ce.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                     ce.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<Mat> me(root * obj.G * root);
    Mat B0(dim, 2);
    if (me.eigenvalues()[1] < 0) {
        B0 = root * me.eigenvectors().leftCols(2);
    } else {
        B0.setZero();
        B0(0, 0) = 1;
        B0(dim - 1, 1) = 1;
    }
    B0 = orthonormal_columns(B0);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    auto random_dir = [&]() {
        Mat e(dim, 2);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < 2; ++c) e(r, c) = gauss(rng);
        return Mat(e / e.norm());
    };
    Mat best = B0;
    double best_f = obj(B0);
    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
        Mat B = B0;
        if (restart > 0) {
            for (int tries = 0; tries < 50; ++tries) {
                const Mat cand = orthonormal_columns(B0 + 0.5 * random_dir());
                if (std::isfinite(obj(cand))) {
                    B = cand;
                    break;
                }
            }
        }
        double fb = obj(B);
        double step = 0.1;
        int misses = 0;
        for (int it = 0; it < opt.iterations && step > 1e-12 && fb > 0; ++it) {
            const Mat cand = orthonormal_columns(B + step * random_dir());
            const double fc = obj(cand);
            if (fc < fb) {
                B = cand;
                fb = fc;
                misses = 0;
            } else if (++misses >= 2 * dim) {
                step *= 0.5;
                misses = 0;
            }
        }
        if (fb < best_f) {
            best_f = fb;
            best = B;
        }
    }
    fit.objective = best_f;
    fit.timelike = std::isfinite(best_f);
    if (!fit.timelike) {
        fit.message = "no timelike line found";
        return fit;
    }

    // Report basis: a = projection of e1 onto the line, b its Lie-orthogonal partner, both with <x,x> = -1.
    const Mat Bq = orthonormal_columns(best);
    Vec a0 = Bq * (Bq.transpose() * Vec::Unit(dim, 0));
    if (a0.norm() < 1e-8) a0 = Bq.col(0);
    a0 /= std::sqrt(-inner_unchecked(a0, a0, metric));
    const Vec an = a0.normalized();
    Vec b0 = std::abs(Bq.col(0).dot(an)) < std::abs(Bq.col(1).dot(an)) ? Vec(Bq.col(0)) : Vec(Bq.col(1));
    b0 += inner_unchecked(b0, a0, metric) * a0;  // <a,a> = -1
    b0 /= std::sqrt(-inner_unchecked(b0, b0, metric));
    if (b0[dim - 1] < 0) b0 = -b0;
    fit.line.resize(dim, 2);
    fit.line << a0, b0;

    std::vector<Eigen::Vector2d> coef;
    obj(fit.line, &coef);
    for (int f = 0; f < F; ++f) {
        Vec P = fit.line * coef[f];
        P /= std::sqrt(-inner_unchecked(P, P, metric));
        const double alpha = -inner_unchecked(P, a0, metric), beta = -inner_unchecked(P, b0, metric);
        double rho = std::atan2(alpha, -beta);
        rho = std::fmod(rho + std::numbers::pi, std::numbers::pi);
        if (rho < 0) rho += std::numbers::pi;
        fit.points.push_back(P);
        fit.radii.push_back(rho);
    }
    double res = 0;
    for (long i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < ft.label[i].size(); ++j) {
            const int f = ft.label[i][j];
            if (f < 0) continue;
            res = std::max(res, std::abs(inner_unchecked(a.reports[i].records[j].K, fit.points[f], metric)) /
                                    fit.points[f].norm());
        }
    fit.residual = res;
    fit.found = res <= opt.tol;
    fit.message = fit.found ? "curvature spheres are polar to points of a timelike line"
                            : "no timelike line carries the polar points within tolerance";
    return fit;
}

const char* to_string(Reduction r) {
    switch (r) {
        case Reduction::None: return "none";
        case Reduction::Revolution: return "revolution";
        case Reduction::Cylinder: return "cylinder";
        case Reduction::Tube: return "tube";
    }
    return "none";
}

bool ReducibilityReport::reducible() const {
    return std::any_of(families.begin(), families.end(),
                       [](const auto& f) { return f.classification != Reduction::None; });
}

ReducibilityReport reducibility(const CurvatureAnalysis& a, const FamilyTracking& ft, double rank_tol) {
    const int n = a.grid->n;
    const MetricSignature metric = MetricSignature::lie(n);
    ReducibilityReport rep;
    for (int f = 0; f < ft.families; ++f) {
        const Mat m = family_matrix(a, ft, f);
        if (m.cols() == 0) continue;
        FamilyReducibility fr;
        fr.family = f;
        fr.axis_weight = ft.axis_weight[f];
        fr.multiplicity = ft.multiplicity[f];
        const SubspaceFit span = subspace_signature(m, metric, rank_tol);
        fr.span_dim = span.dim - 1;
        fr.residual = span.residual;
        if (span.dim <= n + 1) {
            const SubspaceFit comp = polar_complement(span.basis, metric, rank_tol);
            fr.complement_signature = comp.signature;
            fr.complement_dim = comp.dim;
            const Signature& s = comp.signature;
            // A (-,+) plane gives a tube, a (0,+) plane a cylinder, a (+,+) plane a revolution.
            if (s.minus >= 1 && s.plus >= 1)
                fr.classification = Reduction::Tube;
            else if (s.zero >= 1 && s.plus >= 1)
                fr.classification = Reduction::Cylinder;
            else if (s.plus >= 2)
                fr.classification = Reduction::Revolution;
        }
        rep.families.push_back(std::move(fr));
    }
    return rep;
}

CyclideFit cyclide_fit(const CurvatureAnalysis& a, const FamilyTracking& ft, double rank_tol, double fit_tol) {
    const int n = a.grid->n;
    const MetricSignature metric = MetricSignature::lie(n);
    CyclideFit fit;
    if (ft.families != 2) {
        fit.message = "cyclide fit needs exactly two curvature-sphere families (found " +
                      std::to_string(ft.families) + ")";
        return fit;
    }
    // K1: the family closest to mu = infinity on average.
    double far[2] = {0, 0};
    long cnt[2] = {0, 0};
    for (size_t i = 0; i < ft.label.size(); ++i)
        for (size_t j = 0; j < ft.label[i].size(); ++j) {
            const int f = ft.label[i][j];
            if (f < 0) continue;
            far[f] += std::abs(std::cos(a.reports[i].records[j].theta));
            cnt[f]++;
        }
    fit.k1_family = far[0] / std::max<long>(cnt[0], 1) <= far[1] / std::max<long>(cnt[1], 1) ? 0 : 1;
    fit.k2_family = 1 - fit.k1_family;
    fit.p = ft.multiplicity[fit.k1_family];
    fit.q = ft.multiplicity[fit.k2_family];

    const Mat k1 = family_matrix(a, ft, fit.k1_family);
    const Mat k2 = family_matrix(a, ft, fit.k2_family);
    fit.E = subspace_signature(k1, metric, rank_tol);
    fit.E_perp = polar_complement(fit.E.basis, metric, rank_tol);
    double dist = 0;
    const Mat& Q = fit.E_perp.basis;
    for (long c = 0; c < k2.cols(); ++c) dist = std::max(dist, (k2.col(c) - Q * (Q.transpose() * k2.col(c))).norm());
    fit.residual = std::max(fit.E.residual, dist);

    const Signature eSig{fit.q + 1, 1, 0}, pSig{fit.p + 1, 1, 0};
    std::string why;
    if (fit.p + fit.q != n - 1) why += " multiplicities do not sum to n-1;";
    if (fit.E.dim != fit.q + 2) why += " dim E = " + std::to_string(fit.E.dim) + ", expected q+2;";
    if (!(fit.E.signature == eSig)) why += " E signature is not (q+1,1);";
    if (!(fit.E_perp.signature == pSig)) why += " E_perp signature is not (p+1,1);";
    if (fit.residual > fit_tol) why += " second family leaves E_perp (residual " + std::to_string(fit.residual) + ");";
    fit.ok = why.empty();
    fit.message = fit.ok ? "cyclide of characteristic (" + std::to_string(fit.p) + "," + std::to_string(fit.q) + ")"
                         : "fit failure:" + why;
    return fit;
}

}  // namespace liesphere
