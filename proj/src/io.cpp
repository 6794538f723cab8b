#include "liesphere/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace liesphere::io {

namespace {

[[noreturn]] void io_fail(const std::string& where, const std::string& what) {
    fail(ErrorKind::IO, where + ": " + what);
}

void dump_number(std::string& out, double x) {
    if (std::isnan(x)) {
        out += "\"nan\"";
    } else if (std::isinf(x)) {
        out += x > 0 ? "\"inf\"" : "\"-inf\"";
    } else if (x == 0 && std::signbit(x)) {
        out += "-0.0";  // "-0" would parse back as the integer 0
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
    }
}

void dump_rec(std::string& out, const Json& j, bool pretty, int depth) {
    const auto newline = [&](int d) {
        if (!pretty) return;
        out += '\n';
        out.append(static_cast<size_t>(2 * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(k).dump();
                out += pretty ? ": " : ":";
                dump_rec(out, v, pretty, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Numeric arrays stay on one line even in pretty mode.
            bool flat = true;
            for (const auto& v : j)
                if (v.is_structured()) flat = false;
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += pretty && flat ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_rec(out, v, pretty, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            dump_number(out, j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) io_fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) io_fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) io_fail(where + "/" + key, "expected an integer");
    return v.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& where, long expected = -1) {
    if (!j.is_array()) io_fail(where, "expected an array of numbers");
    if (expected >= 0 && static_cast<long>(j.size()) != expected)
        io_fail(where, "expected " + std::to_string(expected) + " numbers, found " + std::to_string(j.size()));
    std::vector<double> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "/" + std::to_string(i)));
    return out;
}

Json flat_samples(const Mat& m) {
    Json a = Json::array();
    for (long c = 0; c < m.cols(); ++c)
        for (long r = 0; r < m.rows(); ++r) a.push_back(m(r, c));
    return a;
}

Mat samples_from(const Json& j, long rows, long cols, const std::string& where) {
    const auto v = numbers(j, where, rows * cols);
    Mat m(rows, cols);
    for (long c = 0; c < cols; ++c)
        for (long r = 0; r < rows; ++r) m(r, c) = v[static_cast<size_t>(c * rows + r)];
    return m;
}

}  // namespace

std::string dump(const Json& j, bool pretty) {
    std::string out;
    dump_rec(out, j, pretty, 0);
    if (pretty) out += '\n';
    return out;
}

Json parse(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        io_fail(source, "malformed JSON at byte " + std::to_string(e.byte) + " (" + e.what() + ")");
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot open for writing");
    out << text;
    if (!out) io_fail(path, "write failed");
}

double number(const Json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    io_fail(where, "expected a number");
}

Json envelope(const std::string& schema) {
    Json j;
    j["schema"] = schema;
    j["schema_version"] = kSchemaVersion;
    return j;
}

void check_envelope(const Json& j, const std::string& schema, const std::string& source) {
    const Json& s = field(j, "schema", source);
    if (!s.is_string() || s.get<std::string>() != schema)
        io_fail(source, "schema mismatch: expected \"" + schema + "\", found " + s.dump());
    const Json& v = field(j, "schema_version", source);
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
        io_fail(source, "schema_version mismatch: expected " + std::to_string(kSchemaVersion) + ", found " + v.dump());
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (long i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const Json& j, const std::string& where) {
    const auto v = numbers(j, where);
    return Eigen::Map<const Vec>(v.data(), static_cast<long>(v.size()));
}

Json mat_json(const Mat& m) {
    Json a = Json::array();
    for (long r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
    return a;
}

Mat mat_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) io_fail(where, "expected a non-empty array of rows");
    const long rows = static_cast<long>(j.size());
    Mat m;
    for (long r = 0; r < rows; ++r) {
        const auto row = numbers(j[r], where + "/" + std::to_string(r), r == 0 ? -1 : m.cols());
        if (r == 0) m.resize(rows, static_cast<long>(row.size()));
        for (long c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<size_t>(c)];
    }
    return m;
}

Json to_json(const ParamGrid& g) {
    Json j;
    j["dims"] = g.dims;
    Json dom = Json::array();
    for (int a = 0; a < g.axes(); ++a) dom.push_back(Json::array({g.lo[a], g.hi[a]}));
    j["domain"] = dom;
    Json per = Json::array();
    for (bool p : g.periodic) per.push_back(p);
    j["periodic"] = per;
    j["fd_order"] = g.fd_order;
    return j;
}

ParamGrid grid_from_json(const Json& j, const std::string& source) {
    const Json& dims = field(j, "dims", source);
    const Json& dom = field(j, "domain", source);
    const Json& per = field(j, "periodic", source);
    if (!dims.is_array() || !dom.is_array() || !per.is_array() || dims.size() != dom.size() ||
        dims.size() != per.size())
        io_fail(source, "dims, domain and periodic must be arrays of equal length");
    std::vector<int> d;
    std::vector<double> lo, hi;
    std::vector<bool> p;
    for (size_t a = 0; a < dims.size(); ++a) {
        const std::string w = source + "/domain/" + std::to_string(a);
        if (!dims[a].is_number_integer()) io_fail(source + "/dims/" + std::to_string(a), "expected an integer");
        if (!per[a].is_boolean()) io_fail(source + "/periodic/" + std::to_string(a), "expected a boolean");
        const auto iv = numbers(dom[a], w, 2);
        d.push_back(dims[a].get<int>());
        lo.push_back(iv[0]);
        hi.push_back(iv[1]);
        p.push_back(per[a].get<bool>());
    }
    const int order = j.contains("fd_order") ? int_field(j, "fd_order", source) : 2;
    try {
        return ParamGrid(d, lo, hi, p, order);
    } catch (const Error& e) {
        io_fail(source, e.what());
    }
}

Json to_json(const LegendreGrid& g) {
    Json j = envelope("grid");
    j["n"] = g.n;
    const Json grid = to_json(g.grid);
    for (const auto& [k, v] : grid.items()) j[k] = v;
    j["Z1"] = flat_samples(g.Z1);
    j["Zn3"] = flat_samples(g.Zn3);
    return j;
}

LegendreGrid legendre_from_json(const Json& j, const std::string& source) {
    check_envelope(j, "grid", source);
    const int n = int_field(j, "n", source);
    if (n < 2) io_fail(source + "/n", "expected n >= 2");
    ParamGrid grid = grid_from_json(j, source);
    Mat z1 = samples_from(field(j, "Z1", source), n + 3, grid.size(), source + "/Z1");
    Mat zn3 = samples_from(field(j, "Zn3", source), n + 3, grid.size(), source + "/Zn3");
    try {
        return make_legendre_grid(n, std::move(grid), std::move(z1), std::move(zn3));
    } catch (const Error& e) {
        io_fail(source, e.what());
    }
}

Json to_json(const HypersurfaceSample& s) {
    Json j = envelope("hypersurface");
    j["ambient"] = s.ambient == Ambient::Euclidean ? "euclidean" : "spherical";
    j["n"] = s.n;
    const Json grid = to_json(s.grid);
    for (const auto& [k, v] : grid.items()) j[k] = v;
    j["points"] = flat_samples(s.points);
    j["normals"] = flat_samples(s.normals);
    return j;
}

HypersurfaceSample hypersurface_from_json(const Json& j, const std::string& source) {
    check_envelope(j, "hypersurface", source);
    HypersurfaceSample s;
    const Json& amb = field(j, "ambient", source);
    if (amb == "euclidean")
        s.ambient = Ambient::Euclidean;
    else if (amb == "spherical")
        s.ambient = Ambient::Spherical;
    else
        io_fail(source + "/ambient", "expected \"euclidean\" or \"spherical\"");
    s.n = int_field(j, "n", source);
    if (s.n < 2) io_fail(source + "/n", "expected n >= 2");
    s.grid = grid_from_json(j, source);
    const long rows = s.ambient_dim();
    s.points = samples_from(field(j, "points", source), rows, s.grid.size(), source + "/points");
    s.normals = samples_from(field(j, "normals", source), rows, s.grid.size(), source + "/normals");
    return s;
}

Json to_json(const LieTransform& t) {
    Json j = envelope("transform");
    j["n"] = t.n;
    j["matrix"] = mat_json(t.matrix);
    return j;
}

LieTransform transform_from_json(const Json& j, const std::string& source) {
    check_envelope(j, "transform", source);
    const int n = int_field(j, "n", source);
    const Mat m = mat_from_json(field(j, "matrix", source), source + "/matrix");
    if (m.rows() != n + 3 || m.cols() != n + 3) io_fail(source + "/matrix", "expected an (n+3)x(n+3) matrix");
    return validate(m);
}

Json to_json(const EuclideanObject& o) {
    Json j;
    j["type"] = to_string(o.kind);
    switch (o.kind) {
        case EuclideanObject::Kind::Point:
            j["point"] = vec_json(o.vec);
            break;
        case EuclideanObject::Kind::ImproperPoint:
            j["n"] = o.n;
            break;
        case EuclideanObject::Kind::Sphere:
            j["center"] = vec_json(o.vec);
            j["radius"] = o.scalar;
            break;
        case EuclideanObject::Kind::Plane:
            j["normal"] = vec_json(o.vec);
            j["offset"] = o.scalar;
            break;
    }
    return j;
}

Json to_json(const SphericalSphere& s) {
    Json j;
    j["type"] = "spherical_sphere";
    j["center"] = vec_json(s.center);
    j["radius"] = s.radius;
    return j;
}

Json to_json(const ProjectiveVector& x) {
    Json j;
    j["type"] = "lie";
    j["coords"] = vec_json(x.coords);
    j["metric"] = x.metric.order;
    return j;
}

ProjectiveVector lie_from_object_json(const Json& j, const std::string& source) {
    const Json& t = field(j, "type", source);
    if (!t.is_string()) io_fail(source + "/type", "expected a string");
    const std::string type = t.get<std::string>();
    try {
        if (type == "point") return euclidean_to_lie(EuclideanObject::point(vec_from_json(field(j, "point", source), source + "/point")));
        if (type == "improper") return euclidean_to_lie(EuclideanObject::improper(int_field(j, "n", source)));
        if (type == "sphere")
            return euclidean_to_lie(EuclideanObject::sphere(vec_from_json(field(j, "center", source), source + "/center"),
                                                            number(field(j, "radius", source), source + "/radius")));
        if (type == "plane")
            return euclidean_to_lie(EuclideanObject::plane(vec_from_json(field(j, "normal", source), source + "/normal"),
                                                           number(field(j, "offset", source), source + "/offset")));
        if (type == "spherical_sphere")
            return spherical_to_lie(make_spherical_sphere(vec_from_json(field(j, "center", source), source + "/center"),
                                                          number(field(j, "radius", source), source + "/radius")));
        if (type == "lie") {
            const Vec c = vec_from_json(field(j, "coords", source), source + "/coords");
            if (c.size() < 5) io_fail(source + "/coords", "expected at least 5 coordinates");
            return {c, MetricSignature::lie(static_cast<int>(c.size()) - 3)};
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::IO) throw;
        fail(e.kind(), source + ": " + e.what());
    }
    io_fail(source + "/type", "unknown object type \"" + type + "\"");
}

void save_grid(const std::string& path, const LegendreGrid& g) { write_file(path, dump(to_json(g))); }
LegendreGrid load_grid(const std::string& path) { return legendre_from_json(read_file(path), path); }
void save_hypersurface(const std::string& path, const HypersurfaceSample& s) { write_file(path, dump(to_json(s))); }
HypersurfaceSample load_hypersurface(const std::string& path) { return hypersurface_from_json(read_file(path), path); }
void save_transform(const std::string& path, const LieTransform& t) { write_file(path, dump(to_json(t), true)); }
LieTransform load_transform(const std::string& path) { return transform_from_json(read_file(path), path); }

Json load_report(const std::string& path) {
    Json j = read_file(path);
    check_envelope(j, "report", path);
    return j;
}

}  // namespace liesphere::io
