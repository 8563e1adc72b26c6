#pragma once

#include <string>

#include "obl/discrete.hpp"
#include "obl/geom.hpp"
#include "obl/horizontal.hpp"
#include "obl/periodicity.hpp"
#include "obl/table.hpp"
#include "obl/triangle3.hpp"

#include "json.hpp"

namespace obl {

using json = nlohmann::json;

json to_json(Vec2 v);
Vec2 vec2_from_json(const json& j);

json to_json(const Polygon& Z);
Polygon polygon_from_json(const json& j);

/// {"kind":"support_fourier","h0":...,"coeffs":[[a1,b1],...]} or
/// {"kind":"piecewise","pieces":[...]}.
json to_json(const ConvexTable& table);
ConvexTable table_from_json(const json& j);

json to_json(const EquivariantCurve& curve);
EquivariantCurve curve_from_json(const json& j);

json to_json(const OrbitReport& rep);
json to_json(const IdentityExample& ex);
json to_json(const ObstructionReport& rep);
json to_json(const RoundedSquareReport& rep);
json to_json(const ShootReport& rep);
json to_json(const Solve3Report& rep);
json to_json(const FamilyReport& rep);
json to_json(const RotationSequence& seq);
json to_json(const DeformationSpace& space);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace obl
