// Command-line front end over the liesphere C library.
#include "liesphere/liesphere_c.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAnalysis = 2;
constexpr int kExitIO = 3;

struct Failure {
    int code;
    std::string message;
};

int exit_code(int status) {
    switch (status) {
        case LS_OK: return kExitOk;
        case LS_ERR_USAGE: return kExitUsage;
        case LS_ERR_IO: return kExitIO;
        default: return kExitAnalysis;
    }
}

void check(int status) {
    if (status != LS_OK) throw Failure{exit_code(status), std::string(ls_status_name(status)) + ": " + ls_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
};
using Grid = Handle<ls_grid, ls_grid_free>;
using Surface = Handle<ls_surface, ls_surface_free>;
using Transform = Handle<ls_transform, ls_transform_free>;

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { ls_free_string(p); }
};

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage("cannot parse \"" + s + "\" as " + what);
        }
    }
    if (out.empty()) usage("empty " + what);
    return out;
}

std::pair<std::vector<double>, double> parse_vec_scalar(const std::string& s, const std::string& what) {
    const auto colon = s.rfind(':');
    if (colon == std::string::npos) usage(what + " must be given as x1,...,xn:value");
    const auto v = parse_list(s.substr(0, colon), what);
    const auto scalar = parse_list(s.substr(colon + 1), what);
    if (scalar.size() != 1) usage(what + " must end with a single value");
    return {v, scalar[0]};
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f || !(f << text)) throw Failure{kExitIO, output + ": cannot write"};
}

/// Object flags shared by convert and contact.
struct ObjectFlags {
    std::vector<std::string> points, spheres, planes, spherical, lie;
    std::vector<int> improper;

    void add(CLI::App* app) {
        app->add_option("--point", points, "Point of R^n: x1,...,xn");
        app->add_option("--sphere", spheres, "Oriented sphere of R^n: center:signed_radius");
        app->add_option("--plane", planes, "Oriented plane of R^n: unit_normal:offset");
        app->add_option("--improper", improper, "Improper point of R^n ∪ {∞}, given n");
        app->add_option("--spherical", spherical, "Oriented sphere of S^n: unit_center:signed_radius");
        app->add_option("--lie", lie, "Lie coordinates x1,...,x_{n+3}");
    }

    std::vector<Json> objects() const {
        std::vector<Json> out;
        for (const auto& s : points) out.push_back({{"type", "point"}, {"point", parse_list(s, "point")}});
        for (const auto& s : spheres) {
            const auto [c, r] = parse_vec_scalar(s, "sphere");
            out.push_back({{"type", "sphere"}, {"center", c}, {"radius", r}});
        }
        for (const auto& s : planes) {
            const auto [nrm, h] = parse_vec_scalar(s, "plane");
            out.push_back({{"type", "plane"}, {"normal", nrm}, {"offset", h}});
        }
        for (int n : improper) out.push_back({{"type", "improper"}, {"n", n}});
        for (const auto& s : spherical) {
            const auto [c, r] = parse_vec_scalar(s, "spherical sphere");
            out.push_back({{"type", "spherical_sphere"}, {"center", c}, {"radius", r}});
        }
        for (const auto& s : lie) out.push_back({{"type", "lie"}, {"coords", parse_list(s, "Lie coordinates")}});
        return out;
    }
};

/// Example and construction parameters; only flags given on the command line enter the JSON spec.
struct ParamFlags {
    std::map<std::string, double> reals;
    std::map<std::string, int> ints;
    std::string m, center;
    std::vector<std::string> extra;
    CLI::App* app = nullptr;

    void add(CLI::App* a) {
        app = a;
        for (const char* k : {"a", "b", "r", "s", "u0", "u1", "v0", "v1", "epsilon", "offset", "extent", "theta0",
                              "theta1", "t0", "t1", "radius", "spacing", "boost"})
            a->add_option(std::string("--") + k, reals[k], std::string("Parameter ") + k);
        for (const char* k : {"resolution", "nu", "nv", "p", "q", "seed", "samples", "multiplicity"})
            a->add_option(std::string("--") + k, ints[k], std::string("Parameter ") + k);
        a->add_option("--fiber-samples", ints["fiber_samples"], "Hopf fiber samples per axis");
        a->add_option("--m", m, "Multiplicities m1,m2,...");
        a->add_option("--center", center, "Inversion center x1,...,xn");
        a->add_option("--param", extra, "Extra parameter key=value (number)");
    }

    Json spec(const std::string& kind) const {
        Json j = Json::object();
        if (!kind.empty()) j["kind"] = kind;
        for (const auto& [k, v] : reals)
            if (app->count("--" + k)) j[k] = v;
        for (const auto& [k, v] : ints) {
            const std::string flag = k == "fiber_samples" ? "--fiber-samples" : "--" + k;
            if (app->count(flag)) j[k] = v;
        }
        if (!m.empty()) {
            std::vector<int> mi;
            for (double x : parse_list(m, "multiplicities")) mi.push_back(static_cast<int>(x));
            j["m"] = mi;
        }
        if (!center.empty()) j["center"] = parse_list(center, "center");
        for (const auto& e : extra) {
            const auto eq = e.find('=');
            if (eq == std::string::npos) usage("--param expects key=value");
            j[e.substr(0, eq)] = parse_list(e.substr(eq + 1), "parameter value")[0];
        }
        return j;
    }
};

const std::vector<std::string> kSurfaceKinds = {"torus", "torus_patch", "product_spheres", "multiplicity", "hopf_base"};
const std::vector<std::string> kGridOnlyKinds = {"cyclide", "focal", "hopf"};
const std::vector<std::string> kConstructions = {"cylinder", "revolution", "tube", "cone", "invert", "hopf_preimage"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v)
        if (x == s) return true;
    return false;
}

/// Grid from --input (grid JSON), --surface (hypersurface JSON, lifted) or --example.
void load_grid(Grid& g, const std::string& input, const std::string& surface, const std::string& example,
               const ParamFlags& params) {
    const int given = !input.empty() + !surface.empty() + !example.empty();
    if (given != 1) usage("give exactly one of --input, --surface, --example");
    if (!input.empty()) {
        check(ls_grid_load(input.c_str(), &g.p));
    } else if (!surface.empty()) {
        Surface s;
        check(ls_surface_load(surface.c_str(), &s.p));
        check(ls_lift(s.p, &g.p));
    } else {
        check(ls_grid_example(params.spec(example).dump().c_str(), &g.p));
    }
}

std::string grid_json(const ls_grid* g) {
    OwnedString s;
    check(ls_grid_to_json(g, &s.p));
    return s.p;
}

std::string surface_json(const ls_surface* sf) {
    OwnedString s;
    check(ls_surface_to_json(sf, &s.p));
    return s.p;
}

int run(int argc, char** argv) {
    CLI::App app{"Lie sphere geometry: coordinates, Legendre lifts and Dupin analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ls_version()));

    // convert
    auto* convert = app.add_subcommand("convert", "Encode an object in Lie coordinates, or decode --lie");
    ObjectFlags conv_obj;
    conv_obj.add(convert);
    std::string conv_out;
    convert->add_option("-o,--output", conv_out, "Output path (default stdout)");

    // contact
    auto* contact = app.add_subcommand("contact", "Oriented-contact predicate on two objects");
    ObjectFlags cont_obj;
    cont_obj.add(contact);
    double contact_tol = 1e-9;
    contact->add_option("--tol", contact_tol, "Relative tolerance on |<k1,k2>|")->check(CLI::PositiveNumber);

    // lift
    auto* lift = app.add_subcommand("lift", "Legendre lift of a hypersurface sample or built-in family");
    std::string lift_in, lift_example, lift_out;
    ParamFlags lift_params;
    lift->add_option("-i,--input", lift_in, "Hypersurface JSON");
    lift->add_option("--example", lift_example, "Built-in family");
    lift->add_option("-o,--output", lift_out, "Grid JSON output (default stdout)");
    lift_params.add(lift);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Validate, compute curvature spheres and classify");
    std::string an_in, an_surface, an_example, an_out;
    ParamFlags an_params;
    Json an_opts = Json::object();
    std::map<std::string, double> an_tols;
    analyze->add_option("-i,--input", an_in, "Grid JSON");
    analyze->add_option("--surface", an_surface, "Hypersurface JSON (lifted first)");
    analyze->add_option("--example", an_example, "Built-in family");
    analyze->add_option("-o,--output", an_out, "Report output (default stdout)");
    for (const char* k : {"contact_tol", "rank_tol", "cluster_tol", "dupin_tol", "match_tol", "iso_tol", "fit_tol"}) {
        std::string flag = std::string("--") + k;
        for (auto& ch : flag)
            if (ch == '_') ch = '-';
        analyze->add_option(flag, an_tols[k], std::string("Tolerance ") + k)->check(CLI::PositiveNumber);
    }
    int an_fit_seed = 7;
    bool an_no_samples = false;
    analyze->add_option("--fit-seed", an_fit_seed, "Seed of the isoparametric line search");
    analyze->add_flag("--no-samples", an_no_samples, "Omit per-sample records");
    an_params.add(analyze);

    // transform
    auto* transform = app.add_subcommand("transform", "Apply a Lie sphere transformation to a grid");
    std::string tr_in, tr_kind = "random", tr_matrix, tr_out, tr_save;
    double tr_t = 0;
    int tr_seed = 1, tr_reflections = 0;
    transform->add_option("-i,--input", tr_in, "Grid JSON")->required();
    transform->add_option("--kind", tr_kind, "identity | parallel | orientation | boost | random | matrix")
        ->check(CLI::IsMember({"identity", "parallel", "orientation", "boost", "random", "matrix"}));
    transform->add_option("--t", tr_t, "Parameter of parallel and boost");
    transform->add_option("--seed", tr_seed, "Seed of a random transform");
    transform->add_option("--reflections", tr_reflections, "Reflection count of a random transform (0: n+3)");
    transform->add_option("--matrix", tr_matrix, "Transform JSON (kind matrix)");
    transform->add_option("-o,--output", tr_out, "Grid JSON output (default stdout)");
    transform->add_option("--save-transform", tr_save, "Also write the transform JSON here");

    // construct
    auto* construct = app.add_subcommand("construct", "Run a generator or construction");
    std::string co_kind, co_in, co_out;
    bool co_lift = false;
    ParamFlags co_params;
    construct->add_option("--kind", co_kind, "Generator or construction")->required();
    construct->add_option("-i,--input", co_in, "Input hypersurface JSON (constructions)");
    construct->add_option("-o,--output", co_out, "Output JSON (default stdout)");
    construct->add_flag("--lift", co_lift, "Write the Legendre lift instead of the hypersurface");
    co_params.add(construct);

    // export-mesh
    auto* mesh = app.add_subcommand("export-mesh", "Write an OBJ mesh of a projection");
    std::string me_in, me_surface, me_example, me_out, me_proj = "euclidean";
    ParamFlags me_params;
    mesh->add_option("-i,--input", me_in, "Grid JSON");
    mesh->add_option("--surface", me_surface, "Hypersurface JSON (lifted first)");
    mesh->add_option("--example", me_example, "Built-in family");
    mesh->add_option("-o,--output", me_out, "OBJ output path")->required();
    mesh->add_option("--projection", me_proj, "euclidean | spherical")
        ->check(CLI::IsMember({"euclidean", "spherical"}));
    me_params.add(mesh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (convert->parsed()) {
        const auto objs = conv_obj.objects();
        if (objs.size() != 1) usage("convert takes exactly one object");
        OwnedString s;
        check(ls_convert(objs[0].dump().c_str(), &s.p));
        emit(s.p, conv_out);
        return kExitOk;
    }
    if (contact->parsed()) {
        const auto objs = cont_obj.objects();
        if (objs.size() != 2) usage("contact takes exactly two objects");
        int in_contact = 0;
        check(ls_contact(objs[0].dump().c_str(), objs[1].dump().c_str(), contact_tol, &in_contact));
        std::cout << (in_contact ? "true" : "false") << '\n';
        return kExitOk;
    }
    if (lift->parsed()) {
        Grid g;
        load_grid(g, "", lift_in, lift_example, lift_params);
        emit(grid_json(g.p), lift_out);
        return kExitOk;
    }
    if (analyze->parsed()) {
        Grid g;
        load_grid(g, an_in, an_surface, an_example, an_params);
        for (const auto& [k, v] : an_tols) {
            std::string flag = "--" + k;
            for (auto& ch : flag)
                if (ch == '_') ch = '-';
            if (analyze->count(flag)) an_opts[k] = v;
        }
        an_opts["seed"] = an_fit_seed;
        an_opts["include_samples"] = !an_no_samples;
        OwnedString report;
        int classified = 0;
        check(ls_analyze(g.p, an_opts.dump().c_str(), &report.p, &classified));
        emit(report.p, an_out);
        return classified ? kExitOk : kExitAnalysis;
    }
    if (transform->parsed()) {
        Grid g, out;
        check(ls_grid_load(tr_in.c_str(), &g.p));
        Json spec = {{"kind", tr_kind}, {"t", tr_t}, {"seed", tr_seed}, {"reflections", tr_reflections}};
        Transform t;
        if (tr_kind == "matrix") {
            if (tr_matrix.empty()) usage("--kind matrix needs --matrix");
            check(ls_transform_load(tr_matrix.c_str(), &t.p));
        } else {
            check(ls_transform_make(ls_grid_n(g.p), spec.dump().c_str(), &t.p));
        }
        check(ls_transform_apply(t.p, g.p, &out.p));
        if (!tr_save.empty()) check(ls_transform_save(t.p, tr_save.c_str()));
        emit(grid_json(out.p), tr_out);
        return kExitOk;
    }
    if (construct->parsed()) {
        if (contains(kGridOnlyKinds, co_kind)) {
            Grid g;
            check(ls_grid_example(co_params.spec(co_kind).dump().c_str(), &g.p));
            emit(grid_json(g.p), co_out);
            return kExitOk;
        }
        Surface s;
        if (contains(kSurfaceKinds, co_kind)) {
            check(ls_surface_example(co_params.spec(co_kind).dump().c_str(), &s.p));
        } else if (contains(kConstructions, co_kind)) {
            if (co_in.empty()) usage("construction \"" + co_kind + "\" needs --input");
            Surface in;
            check(ls_surface_load(co_in.c_str(), &in.p));
            check(ls_surface_construct(co_kind.c_str(), in.p, co_params.spec("").dump().c_str(), &s.p));
        } else {
            usage("unknown --kind \"" + co_kind + "\"");
        }
        if (co_lift) {
            Grid g;
            check(ls_lift(s.p, &g.p));
            emit(grid_json(g.p), co_out);
        } else {
            emit(surface_json(s.p), co_out);
        }
        return kExitOk;
    }
    if (mesh->parsed()) {
        Grid g;
        load_grid(g, me_in, me_surface, me_example, me_params);
        check(ls_export_obj(g.p, me_proj.c_str(), me_out.c_str()));
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Failure& f) {
        std::cerr << "liesphere: " << f.message << '\n';
        return f.code;
    }
}
