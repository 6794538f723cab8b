#pragma once

#include "liesphere/constructions.hpp"
#include "liesphere/dupin.hpp"
#include "liesphere/io.hpp"

#include <string>

namespace liesphere {

struct AnalyzeOptions {
    double contact_tol = -1;  // negative: per-axis default
    double rank_tol = 1e-8;
    double cluster_tol = 1e-4;
    double dupin_tol = -1;    // negative: 1e-6 + h^2
    double match_tol = 1.0;
    double iso_tol = 1e-6;
    double fit_tol = 1e-6;
    std::uint64_t seed = 7;
    bool include_samples = true;
};

AnalyzeOptions analyze_options_from_json(const io::Json& j);

struct AnalyzeResult {
    io::Json report;
    /// False when validation fails or too few samples are analyzable.
    bool classified = false;
};

/// validate -> curvature -> Dupin -> isoparametric / reducibility / cyclide, as one report.
AnalyzeResult analyze(const LegendreGrid& g, const AnalyzeOptions& opt = {});

/// Built-in sample families, e.g. {"kind": "torus", "a": 2, "b": 1, "resolution": 64}.
/// Kinds: torus, torus_patch, product_spheres, multiplicity, hopf_base.
HypersurfaceSample example_surface(const io::Json& spec);
/// Grid families: every surface kind (lifted), plus cyclide, focal, hopf.
LegendreGrid example_grid(const io::Json& spec);
/// Pinkall constructions, inversion and the Hopf preimage applied to an input sample.
/// Kinds: cylinder, revolution, tube, cone, invert, hopf_preimage.
HypersurfaceSample construct(const std::string& kind, const HypersurfaceSample& M, const io::Json& params);
/// {"kind": "identity" | "parallel" (t) | "orientation" | "random" (seed, reflections) | "boost" (t) | "matrix"}.
LieTransform transform_from_spec(int n, const io::Json& spec);

/// OBJ text of a projection ("euclidean" or "spherical"); one vertex per sample, vt = (kappa_min, kappa_max).
std::string export_obj(const LegendreGrid& g, const std::string& projection, const CurvatureOptions& opt = {});

}  // namespace liesphere
