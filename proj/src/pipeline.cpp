#include "liesphere/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace liesphere {

using io::Json;

namespace {

double get(const Json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : io::number(*it, key);
}

int get_int(const Json& j, const char* key, int fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    require(it->is_number_integer(), ErrorKind::Usage, std::string("parameter \"") + key + "\" must be an integer");
    return it->get<int>();
}

std::string get_str(const Json& j, const char* key) {
    const auto it = j.find(key);
    require(it != j.end() && it->is_string(), ErrorKind::Usage, std::string("missing string parameter \"") + key + "\"");
    return it->get<std::string>();
}

Json signature_json(const Signature& s) { return Json::array({s.plus, s.minus, s.zero}); }

double angle_to_mu(double theta) {
    const double c = std::cos(theta);
    return std::abs(c) <= 1e-12 ? kInfinity : std::sin(theta) / c;
}

Json sample_json(const PointCurvatureReport& r) {
    Json j;
    j["g"] = r.g;
    if (r.degenerate) {
        j["degenerate"] = true;
        j["reason"] = r.reason;
        return j;
    }
    Json mus = Json::array(), mult = Json::array(), res = Json::array();
    for (const auto& rec : r.records) {
        mus.push_back(rec.mu);
        mult.push_back(rec.multiplicity);
        res.push_back(rec.residual);
    }
    j["mus"] = mus;
    j["multiplicities"] = mult;
    if (r.g == 4) {
        try {
            j["psi"] = lie_curvature(r);
        } catch (const Error&) {
            j["psi"] = nullptr;
        }
    }
    j["residuals"] = res;
    return j;
}

std::string summarize(const DupinReport& d, const IsoparametricFit* iso, const ReducibilityReport* red,
                      const CyclideFit* cyc) {
    if (!d.is_dupin) return "not Dupin";
    if (!d.is_proper) return "Dupin, not proper";
    if (iso && iso->found) return "Lie equivalent to an isoparametric hypersurface";
    if (cyc && cyc->ok) return "cyclide of characteristic (" + std::to_string(cyc->p) + "," + std::to_string(cyc->q) + ")";
    if (red && red->reducible()) {
        for (const auto& f : red->families)
            if (f.classification != Reduction::None)
                return std::string("reducible (") + to_string(f.classification) + ")";
    }
    return "proper Dupin";
}

}  // namespace

AnalyzeOptions analyze_options_from_json(const Json& j) {
    AnalyzeOptions o;
    if (j.is_null()) return o;
    require(j.is_object(), ErrorKind::Usage, "analysis options must be a JSON object");
    static const char* const known[] = {"contact_tol", "rank_tol", "cluster_tol", "dupin_tol",      "match_tol",
                                        "iso_tol",     "fit_tol",  "seed",        "include_samples"};
    for (const auto& item : j.items())
        require(std::find(std::begin(known), std::end(known), item.key()) != std::end(known), ErrorKind::Usage,
                "unknown analysis option \"" + item.key() + "\"");
    o.contact_tol = get(j, "contact_tol", o.contact_tol);
    o.rank_tol = get(j, "rank_tol", o.rank_tol);
    o.cluster_tol = get(j, "cluster_tol", o.cluster_tol);
    o.dupin_tol = get(j, "dupin_tol", o.dupin_tol);
    o.match_tol = get(j, "match_tol", o.match_tol);
    o.iso_tol = get(j, "iso_tol", o.iso_tol);
    o.fit_tol = get(j, "fit_tol", o.fit_tol);
    o.seed = static_cast<std::uint64_t>(get_int(j, "seed", static_cast<int>(o.seed)));
    if (j.contains("include_samples")) o.include_samples = j["include_samples"].get<bool>();
    for (double t : {o.rank_tol, o.cluster_tol, o.match_tol, o.iso_tol, o.fit_tol})
        require(t > 0, ErrorKind::Usage, "tolerances must be positive");
    return o;
}

AnalyzeResult analyze(const LegendreGrid& g, const AnalyzeOptions& opt) {
    AnalyzeResult out;
    Json& rep = out.report;
    rep = io::envelope("report");
    rep["n"] = g.n;
    rep["samples"] = g.size();
    rep["grid"] = io::to_json(g.grid);
    Json o;
    o["contact_tol"] = opt.contact_tol;
    o["rank_tol"] = opt.rank_tol;
    o["cluster_tol"] = opt.cluster_tol;
    o["dupin_tol"] = opt.dupin_tol;
    o["match_tol"] = opt.match_tol;
    o["iso_tol"] = opt.iso_tol;
    o["fit_tol"] = opt.fit_tol;
    o["seed"] = opt.seed;
    rep["options"] = o;

    ValidationOptions vo;
    vo.contact_tol = opt.contact_tol;
    vo.immersion_tol = opt.rank_tol;
    const LegendreValidation v = validate_legendre(g, vo);
    Json vj;
    vj["passed"] = v.passed();
    vj["isotropy"] = v.isotropy;
    vj["orthogonality"] = v.orthogonality;
    vj["independence"] = v.independence;
    vj["contact"] = v.contact;
    vj["immersion"] = v.immersion;
    vj["worst_scalar_sample"] = v.worst_scalar_sample;
    vj["worst_contact_sample"] = v.worst_contact_sample;
    vj["worst_immersion_sample"] = v.worst_immersion_sample;
    rep["validation"] = vj;
    Json summary;
    summary["classified"] = false;
    if (!v.scalar_ok || !v.contact_ok) {
        summary["classification"] = "invalid Legendre grid";
        rep["summary"] = summary;
        return out;
    }

    CurvatureOptions co{opt.cluster_tol, opt.rank_tol};
    const CurvatureAnalysis a = analyze_curvature(g, co, opt.match_tol);
    DupinOptions dopt;
    dopt.curvature = co;
    dopt.dupin_tol = opt.dupin_tol;
    dopt.match_tol = opt.match_tol;
    DupinReport d;
    try {
        d = dupin_report(a, dopt);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Analysis) throw;
        summary["classification"] = "analysis failed";
        summary["message"] = e.what();
        rep["summary"] = summary;
        return out;
    }
    Json dj;
    dj["is_dupin"] = d.is_dupin;
    dj["is_proper"] = d.is_proper;
    dj["g_values"] = d.g_values;
    dj["worst_derivative"] = d.worst_derivative;
    dj["worst_sample"] = d.worst_sample;
    dj["tolerance"] = d.tolerance;
    dj["flagged_fraction"] = d.flagged_fraction;
    dj["flagged_samples"] = d.flagged_samples;
    rep["dupin"] = dj;

    // Lie curvature statistics over samples with g = 4.
    std::vector<double> psi;
    for (const auto& r : a.reports) {
        if (r.degenerate || r.g != 4) continue;
        try {
            psi.push_back(lie_curvature(r));
        } catch (const Error&) {
        }
    }
    if (!psi.empty()) {
        double mean = 0, var = 0;
        for (double p : psi) mean += p;
        mean /= static_cast<double>(psi.size());
        for (double p : psi) var += (p - mean) * (p - mean);
        var = psi.size() > 1 ? var / static_cast<double>(psi.size() - 1) : 0;
        Json pj;
        pj["count"] = psi.size();
        pj["min"] = *std::min_element(psi.begin(), psi.end());
        pj["max"] = *std::max_element(psi.begin(), psi.end());
        pj["mean"] = mean;
        pj["std"] = std::sqrt(var);
        rep["lie_curvature"] = pj;
    }

    IsoparametricFit iso;
    ReducibilityReport red;
    CyclideFit cyc;
    const bool proper = d.is_proper;
    if (proper) {
        const FamilyTracking ft = track_families(a);
        Json fj;
        fj["count"] = ft.families;
        fj["conflicts"] = ft.conflicts;
        fj["untracked_samples"] = ft.untracked_samples;
        Json list = Json::array();
        for (int f = 0; f < ft.families; ++f) {
            Json e;
            e["family"] = f;
            e["multiplicity"] = ft.multiplicity[f];
            e["mean_mu"] = angle_to_mu(ft.mean_mu_angle[f]);
            e["axis_weight"] = ft.axis_weight[f];
            list.push_back(e);
        }
        fj["list"] = list;
        rep["families"] = fj;

        IsoparametricOptions io_opt;
        io_opt.tol = opt.iso_tol;
        io_opt.seed = opt.seed;
        iso = isoparametric_fit(a, ft, io_opt);
        Json ij;
        ij["found"] = iso.found;
        ij["timelike"] = iso.timelike;
        if (iso.line.size() > 0)
            ij["line"] = Json::array({io::vec_json(iso.line.col(0)), io::vec_json(iso.line.col(1))});
        ij["radii"] = iso.radii;
        ij["residual"] = iso.residual;
        ij["objective"] = iso.objective;
        ij["message"] = iso.message;
        rep["isoparametric"] = ij;

        red = reducibility(a, ft, opt.rank_tol);
        Json rj;
        rj["reducible"] = red.reducible();
        Json fams = Json::array();
        for (const auto& f : red.families) {
            Json e;
            e["family"] = f.family;
            e["multiplicity"] = f.multiplicity;
            e["span_dim"] = f.span_dim;
            e["complement_dim"] = f.complement_dim;
            e["complement_signature"] = signature_json(f.complement_signature);
            e["classification"] = to_string(f.classification);
            e["residual"] = f.residual;
            fams.push_back(e);
        }
        rj["families"] = fams;
        rep["reducibility"] = rj;

        if (d.g_values.size() == 1 && d.g_values[0] == 2) {
            cyc = cyclide_fit(a, ft, opt.rank_tol, opt.fit_tol);
            Json cj;
            cj["ok"] = cyc.ok;
            cj["characteristic"] = Json::array({cyc.p, cyc.q});
            cj["E_dim"] = cyc.E.dim;
            cj["E_signature"] = signature_json(cyc.E.signature);
            cj["E_perp_dim"] = cyc.E_perp.dim;
            cj["E_perp_signature"] = signature_json(cyc.E_perp.signature);
            cj["residual"] = cyc.residual;
            cj["message"] = cyc.message;
            rep["cyclide"] = cj;
        }
    }

    summary["classified"] = true;
    summary["is_dupin"] = d.is_dupin;
    summary["is_proper"] = d.is_proper;
    summary["g"] = d.g_values.size() == 1 ? Json(d.g_values[0]) : Json(d.g_values);
    if (proper && cyc.ok)
        summary["characteristic"] = Json::array({cyc.p, cyc.q});
    else
        summary["characteristic"] = nullptr;
    summary["isoparametric"] = proper && iso.found;
    summary["reducible"] = proper && red.reducible();
    summary["classification"] = summarize(d, proper ? &iso : nullptr, proper ? &red : nullptr,
                                          proper && rep.contains("cyclide") ? &cyc : nullptr);
    rep["summary"] = summary;

    if (opt.include_samples) {
        Json samples = Json::array();
        for (const auto& r : a.reports) samples.push_back(sample_json(r));
        rep["per_sample"] = samples;
    }
    out.classified = true;
    return out;
}

HypersurfaceSample example_surface(const Json& spec) {
    const std::string kind = get_str(spec, "kind");
    const int res = get_int(spec, "resolution", -1);
    if (kind == "torus") {
        const int r = res > 0 ? res : 64;
        return torus(get(spec, "a", 2), get(spec, "b", 1), get_int(spec, "nu", r), get_int(spec, "nv", r));
    }
    if (kind == "torus_patch") {
        const int r = res > 0 ? res : 16;
        return torus_patch(get(spec, "a", 2), get(spec, "b", 1), get(spec, "u0", 0), get(spec, "u1", 0.8),
                           get(spec, "v0", -0.6), get(spec, "v1", 0.6), get_int(spec, "nu", r), get_int(spec, "nv", r));
    }
    if (kind == "product_spheres") {
        const double r = get(spec, "r", std::sqrt(0.5));
        return product_spheres(get_int(spec, "p", 1), get_int(spec, "q", 1), r, get(spec, "s", std::sqrt(1 - r * r)),
                               res > 0 ? res : 32);
    }
    if (kind == "multiplicity") {
        const auto it = spec.find("m");
        require(it != spec.end() && it->is_array(), ErrorKind::Usage, "multiplicity example needs \"m\": [m1, m2, ...]");
        return multiplicity_example(it->get<std::vector<int>>(), res > 0 ? res : 9,
                                    static_cast<std::uint64_t>(get_int(spec, "seed", 1)));
    }
    if (kind == "hopf_base") {
        HypersurfaceSample W = hopf_base_patch(get(spec, "r", 0.6), res > 0 ? res : 6, get(spec, "spacing", 0.05));
        const double boost = get(spec, "boost", 0);
        if (boost != 0) W = transform_sample(W, moebius_boost(4, boost));
        return W;
    }
    fail(ErrorKind::Usage, "unknown example surface \"" + kind + "\"");
}

LegendreGrid example_grid(const Json& spec) {
    const std::string kind = get_str(spec, "kind");
    const int res = get_int(spec, "resolution", -1);
    if (kind == "cyclide") return cyclide_model(get_int(spec, "p", 1), get_int(spec, "q", 1), res > 0 ? res : 16);
    if (kind == "focal") return focal_lift(get_int(spec, "p", 1), get_int(spec, "q", 1), res > 0 ? res : 16);
    if (kind == "hopf") {
        Json base = spec;
        base["kind"] = "hopf_base";
        return hopf_preimage(example_surface(base), get_int(spec, "fiber_samples", 3));
    }
    return lift(example_surface(spec));
}

HypersurfaceSample construct(const std::string& kind, const HypersurfaceSample& M, const Json& params) {
    if (kind == "invert") {
        const auto it = params.find("center");
        require(it != params.end(), ErrorKind::Usage, "invert needs \"center\"");
        return invert(M, io::vec_from_json(*it, "center"), get(params, "radius", 1.0));
    }
    if (kind == "hopf_preimage") return hopf_preimage_sample(M, get_int(params, "fiber_samples", 3));
    PinkallOptions o;
    o.samples = get_int(params, "samples", o.samples);
    o.multiplicity = get_int(params, "multiplicity", o.multiplicity);
    o.extent = get(params, "extent", o.extent);
    o.offset = get(params, "offset", o.offset);
    o.epsilon = get(params, "epsilon", o.epsilon);
    o.theta0 = get(params, "theta0", o.theta0);
    o.theta1 = get(params, "theta1", o.theta1);
    o.t0 = get(params, "t0", o.t0);
    o.t1 = get(params, "t1", o.t1);
    if (kind == "cylinder") return pinkall_construct(PinkallKind::Cylinder, M, o);
    if (kind == "revolution") return pinkall_construct(PinkallKind::Revolution, M, o);
    if (kind == "tube") return pinkall_construct(PinkallKind::Tube, M, o);
    if (kind == "cone") return pinkall_construct(PinkallKind::Cone, M, o);
    fail(ErrorKind::Usage, "unknown construction \"" + kind + "\"");
}

LieTransform transform_from_spec(int n, const Json& spec) {
    const std::string kind = get_str(spec, "kind");
    if (kind == "identity") return identity_transform(n);
    if (kind == "parallel") return parallel_transform(n, get(spec, "t", 0));
    if (kind == "orientation") return orientation_change(n);
    if (kind == "boost") return moebius_boost(n, get(spec, "t", 0));
    if (kind == "random")
        return random_lie_transform(n, static_cast<std::uint64_t>(get_int(spec, "seed", 1)), get_int(spec, "reflections", 0));
    if (kind == "matrix") {
        const LieTransform t = io::transform_from_json(spec.at("transform"), "transform");
        require(t.n == n, ErrorKind::Usage, "transform dimension does not match the grid");
        return t;
    }
    fail(ErrorKind::Usage, "unknown transform kind \"" + kind + "\"");
}

std::string export_obj(const LegendreGrid& g, const std::string& projection, const CurvatureOptions& opt) {
    require(projection == "euclidean" || projection == "spherical", ErrorKind::Usage,
            "projection must be \"euclidean\" or \"spherical\"");
    const bool euclid = projection == "euclidean";
    const ProjectionPair p = projections(g);
    const auto reports = curvature_field(g, opt);
    const long N = g.size();
    std::ostringstream os;
    os.precision(17);
    os << "# liesphere mesh: " << N << " vertices, " << projection << " projection\n";
    os << "# vt u = smallest finite principal curvature, v = largest (0 when none)\n";
    std::vector<char> valid(static_cast<size_t>(N));
    for (long i = 0; i < N; ++i) {
        valid[i] = euclid ? p.euclidean_valid[i] : p.spherical_valid[i];
        double xyz[3] = {0, 0, 0};
        if (valid[i]) {
            const Vec x = euclid ? Vec(p.F.col(i)) : Vec(p.f.col(i));
            for (int c = 0; c < 3 && c < x.size(); ++c) xyz[c] = x[c];
        }
        os << "v " << xyz[0] << ' ' << xyz[1] << ' ' << xyz[2] << '\n';
    }
    for (long i = 0; i < N; ++i) {
        double lo = kInfinity, hi = -kInfinity;
        if (!reports[i].degenerate) {
            for (const auto& rec : reports[i].records) {
                double kappa;
                try {
                    if (euclid) {
                        const EuclideanObject o = lie_to_euclidean({rec.K, MetricSignature::lie(g.n)}, 1e-6);
                        if (o.kind == EuclideanObject::Kind::Sphere)
                            kappa = 1.0 / o.scalar;
                        else if (o.kind == EuclideanObject::Kind::Plane)
                            kappa = 0;
                        else
                            continue;
                    } else {
                        const SphericalSphere s = lie_to_spherical({rec.K, MetricSignature::lie(g.n)}, 1e-6);
                        const double t = std::tan(s.radius);
                        if (t == 0) continue;
                        kappa = 1.0 / t;
                    }
                } catch (const Error&) {
                    continue;
                }
                lo = std::min(lo, kappa);
                hi = std::max(hi, kappa);
            }
        }
        if (lo > hi) lo = hi = 0;
        os << "vt " << lo << ' ' << hi << '\n';
    }
    // Quads over the first two axes for every index of the remaining axes; lines for one-axis grids.
    const ParamGrid& pg = g.grid;
    for (long i = 0; i < N; ++i) {
        if (pg.axes() == 1) {
            const long j = pg.neighbor(i, 0, 1);
            if (j >= 0 && valid[i] && valid[j]) os << "l " << i + 1 << ' ' << j + 1 << '\n';
            continue;
        }
        const long b = pg.neighbor(i, 0, 1);
        const long c = b >= 0 ? pg.neighbor(b, 1, 1) : -1;
        const long d = pg.neighbor(i, 1, 1);
        if (b < 0 || c < 0 || d < 0 || !valid[i] || !valid[b] || !valid[c] || !valid[d]) continue;
        os << "f";
        for (long k : {i, b, c, d}) os << ' ' << k + 1 << '/' << k + 1;
        os << '\n';
    }
    return os.str();
}

}  // namespace liesphere
