#pragma once

#include "liesphere/grid.hpp"
#include "liesphere/legendre.hpp"
#include "liesphere/lie_coords.hpp"
#include "liesphere/transforms.hpp"

#include <json.hpp>

#include <string>

namespace liesphere::io {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Serialization with every finite double printed as %.17g; non-finite values become the strings
/// "inf", "-inf" and "nan". Keys keep insertion order, so equal inputs give byte-identical output.
std::string dump(const Json& j, bool pretty = false);

/// Parses text; errors are IO errors naming the source and byte offset.
Json parse(const std::string& text, const std::string& source = "<input>");
Json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Inverse of the non-finite encoding used by dump.
double number(const Json& j, const std::string& where);

/// {"schema": name, "schema_version": 1}; load-side check names the expected version on mismatch.
Json envelope(const std::string& schema);
void check_envelope(const Json& j, const std::string& schema, const std::string& source);

Json to_json(const ParamGrid& g);
ParamGrid grid_from_json(const Json& j, const std::string& source);

/// Samples are stored sample-major: entry idx * rows + component.
Json to_json(const LegendreGrid& g);
LegendreGrid legendre_from_json(const Json& j, const std::string& source = "<input>");

Json to_json(const HypersurfaceSample& s);
HypersurfaceSample hypersurface_from_json(const Json& j, const std::string& source = "<input>");

Json to_json(const LieTransform& t);
LieTransform transform_from_json(const Json& j, const std::string& source = "<input>");

/// Tagged objects: {"type": "point"|"improper"|"sphere"|"plane"|"spherical_sphere"|"lie", ...}.
Json to_json(const EuclideanObject& o);
Json to_json(const SphericalSphere& s);
Json to_json(const ProjectiveVector& x);
ProjectiveVector lie_from_object_json(const Json& j, const std::string& source = "<input>");

Json vec_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& where);
/// Row-major array of arrays.
Json mat_json(const Mat& m);
Mat mat_from_json(const Json& j, const std::string& where);

void save_grid(const std::string& path, const LegendreGrid& g);
LegendreGrid load_grid(const std::string& path);
void save_hypersurface(const std::string& path, const HypersurfaceSample& s);
HypersurfaceSample load_hypersurface(const std::string& path);
void save_transform(const std::string& path, const LieTransform& t);
LieTransform load_transform(const std::string& path);
/// Reports are produced by the analysis pipeline; loading checks only the envelope.
Json load_report(const std::string& path);

}  // namespace liesphere::io
