#include "liesphere/liesphere_c.h"

#include "liesphere/pipeline.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace liesphere;

struct ls_grid {
    LegendreGrid g;
};
struct ls_surface {
    HypersurfaceSample s;
};
struct ls_transform {
    LieTransform t;
};

namespace {

thread_local std::string g_last_error;

ls_status code_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Usage: return LS_ERR_USAGE;
        case ErrorKind::Analysis: return LS_ERR_ANALYSIS;
        case ErrorKind::IO: return LS_ERR_IO;
        case ErrorKind::Domain: return LS_ERR_DOMAIN;
        case ErrorKind::Validation: return LS_ERR_VALIDATION;
        case ErrorKind::Degenerate: return LS_ERR_DEGENERATE;
    }
    return LS_ERR_INTERNAL;
}

template <class F>
ls_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return LS_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = std::string("JSON: ") + e.what();
        return LS_ERR_USAGE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LS_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::Usage, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

io::Json parse_arg(const char* json, const char* what) {
    need(json, what);
    return io::parse(json, what);
}

// Object arguments are call parameters rather than files, so malformed ones are usage errors.
ProjectiveVector object_arg(const char* json, const char* what) {
    try {
        return io::lie_from_object_json(parse_arg(json, what), what);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::IO) fail(ErrorKind::Usage, e.what());
        throw;
    }
}

io::Json parse_optional(const char* json, const char* what) {
    return json ? io::parse(json, what) : io::Json::object();
}

}  // namespace

extern "C" {

const char* ls_version(void) { return "1.0.0"; }

const char* ls_last_error(void) { return g_last_error.c_str(); }

const char* ls_status_name(int status) {
    switch (status) {
        case LS_OK: return "ok";
        case LS_ERR_USAGE: return "usage error";
        case LS_ERR_ANALYSIS: return "analysis failure";
        case LS_ERR_IO: return "I/O error";
        case LS_ERR_DOMAIN: return "domain error";
        case LS_ERR_VALIDATION: return "validation error";
        case LS_ERR_DEGENERATE: return "degenerate configuration";
        case LS_ERR_INTERNAL: return "internal error";
        default: return "unknown status";
    }
}

void ls_free_string(char* s) { std::free(s); }

ls_status ls_convert(const char* object_json, char** out_json) {
    return guarded([&] {
        need(out_json, "out_json");
        const ProjectiveVector x = object_arg(object_json, "object");
        // Coordinates scaled so the largest magnitude is 1 and the first nonzero entry is positive.
        Vec c = x.coords / x.coords.cwiseAbs().maxCoeff();
        for (long i = 0; i < c.size(); ++i)
            if (c[i] != 0) {
                if (c[i] < 0) c = -c;
                break;
            }
        io::Json j = io::to_json(ProjectiveVector{c, x.metric});
        const int n = static_cast<int>(x.coords.size()) - 3;
        // Decoded forms where they exist.
        try {
            j["euclidean"] = io::to_json(lie_to_euclidean(x));
        } catch (const Error&) {
        }
        if (n >= 1) {
            try {
                j["spherical"] = io::to_json(lie_to_spherical(x));
            } catch (const Error&) {
            }
        }
        *out_json = dup_string(io::dump(j));
    });
}

ls_status ls_contact(const char* a_json, const char* b_json, double tol, int* out) {
    return guarded([&] {
        need(out, "out");
        const ProjectiveVector a = object_arg(a_json, "first object");
        const ProjectiveVector b = object_arg(b_json, "second object");
        require(a.coords.size() == b.coords.size(), ErrorKind::Usage, "objects live in different dimensions");
        require(tol > 0, ErrorKind::Usage, "contact tolerance must be positive");
        *out = oriented_contact(a, b, tol) ? 1 : 0;
    });
}

ls_status ls_surface_load(const char* path, ls_surface** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ls_surface{io::load_hypersurface(path)};
    });
}

ls_status ls_surface_save(const ls_surface* s, const char* path) {
    return guarded([&] {
        need(s, "surface");
        need(path, "path");
        io::save_hypersurface(path, s->s);
    });
}

ls_status ls_surface_from_json(const char* json, ls_surface** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ls_surface{io::hypersurface_from_json(parse_arg(json, "surface"), "surface")};
    });
}

ls_status ls_surface_to_json(const ls_surface* s, char** out_json) {
    return guarded([&] {
        need(s, "surface");
        need(out_json, "out_json");
        *out_json = dup_string(io::dump(io::to_json(s->s)));
    });
}

ls_status ls_surface_example(const char* spec_json, ls_surface** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ls_surface{example_surface(parse_arg(spec_json, "example"))};
    });
}

ls_status ls_surface_construct(const char* kind, const ls_surface* in, const char* params_json, ls_surface** out) {
    return guarded([&] {
        need(kind, "kind");
        need(in, "surface");
        need(out, "out");
        *out = new ls_surface{construct(kind, in->s, parse_optional(params_json, "parameters"))};
    });
}

long ls_surface_samples(const ls_surface* s) { return s ? s->s.size() : 0; }

void ls_surface_free(ls_surface* s) { delete s; }

ls_status ls_grid_load(const char* path, ls_grid** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ls_grid{io::load_grid(path)};
    });
}

ls_status ls_grid_save(const ls_grid* g, const char* path) {
    return guarded([&] {
        need(g, "grid");
        need(path, "path");
        io::save_grid(path, g->g);
    });
}

ls_status ls_grid_from_json(const char* json, ls_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ls_grid{io::legendre_from_json(parse_arg(json, "grid"), "grid")};
    });
}

ls_status ls_grid_to_json(const ls_grid* g, char** out_json) {
    return guarded([&] {
        need(g, "grid");
        need(out_json, "out_json");
        *out_json = dup_string(io::dump(io::to_json(g->g)));
    });
}

ls_status ls_grid_example(const char* spec_json, ls_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ls_grid{example_grid(parse_arg(spec_json, "example"))};
    });
}

ls_status ls_lift(const ls_surface* s, ls_grid** out) {
    return guarded([&] {
        need(s, "surface");
        need(out, "out");
        *out = new ls_grid{lift(s->s)};
    });
}

int ls_grid_n(const ls_grid* g) { return g ? g->g.n : 0; }

long ls_grid_samples(const ls_grid* g) { return g ? g->g.size() : 0; }

ls_status ls_grid_sample(const ls_grid* g, long index, double* z1, double* zn3) {
    return guarded([&] {
        need(g, "grid");
        require(index >= 0 && index < g->g.size(), ErrorKind::Usage, "sample index out of range");
        const long rows = g->g.n + 3;
        for (long r = 0; r < rows; ++r) {
            if (z1) z1[r] = g->g.Z1(r, index);
            if (zn3) zn3[r] = g->g.Zn3(r, index);
        }
    });
}

void ls_grid_free(ls_grid* g) { delete g; }

ls_status ls_transform_make(int n, const char* spec_json, ls_transform** out) {
    return guarded([&] {
        need(out, "out");
        require(n >= 1, ErrorKind::Usage, "n must be positive");
        *out = new ls_transform{transform_from_spec(n, parse_arg(spec_json, "transform"))};
    });
}

ls_status ls_transform_load(const char* path, ls_transform** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ls_transform{io::load_transform(path)};
    });
}

ls_status ls_transform_save(const ls_transform* t, const char* path) {
    return guarded([&] {
        need(t, "transform");
        need(path, "path");
        io::save_transform(path, t->t);
    });
}

ls_status ls_transform_apply(const ls_transform* t, const ls_grid* g, ls_grid** out) {
    return guarded([&] {
        need(t, "transform");
        need(g, "grid");
        need(out, "out");
        require(t->t.n == g->g.n, ErrorKind::Usage, "transform and grid dimensions differ");
        *out = new ls_grid{apply(t->t, g->g)};
    });
}

void ls_transform_free(ls_transform* t) { delete t; }

ls_status ls_analyze(const ls_grid* g, const char* options_json, char** report_json, int* classified) {
    return guarded([&] {
        need(g, "grid");
        need(report_json, "report_json");
        const AnalyzeOptions opt =
            analyze_options_from_json(options_json ? io::parse(options_json, "options") : io::Json());
        const AnalyzeResult r = analyze(g->g, opt);
        if (classified) *classified = r.classified ? 1 : 0;
        *report_json = dup_string(io::dump(r.report, true));
    });
}

ls_status ls_export_obj(const ls_grid* g, const char* projection, const char* path) {
    return guarded([&] {
        need(g, "grid");
        need(projection, "projection");
        need(path, "path");
        io::write_file(path, export_obj(g->g, projection));
    });
}

}  // extern "C"
