#include "obl/json_io.hpp"

#include <fstream>

namespace obl {

json to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("expected a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Polygon& Z) {
  json out = json::array();
  for (const Vec2& v : Z.vertices()) out.push_back(to_json(v));
  return out;
}

Polygon polygon_from_json(const json& j) {
  if (!j.is_array()) throw Error("expected an array of [x, y] pairs");
  std::vector<Vec2> verts;
  for (const auto& e : j) verts.push_back(vec2_from_json(e));
  return Polygon(std::move(verts));
}

json to_json(const ConvexTable& table) {
  if (table.is_support_fourier()) {
    const auto& f = table.fourier();
    json coeffs = json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(json::array({c[0], c[1]}));
    return {{"kind", "support_fourier"}, {"h0", f.h0}, {"coeffs", coeffs}};
  }
  json pieces = json::array();
  for (const auto& p : table.pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p))
      pieces.push_back({{"kind", "arc"},
                        {"center", to_json(arc->center)},
                        {"radius", arc->radius},
                        {"th0", arc->th0},
                        {"th1", arc->th1}});
    else if (const auto* c = std::get_if<CornerPiece>(&p))
      pieces.push_back({{"kind", "corner"},
                        {"point", to_json(c->point)},
                        {"th0", c->th0},
                        {"th1", c->th1}});
    else {
      const auto& seg = std::get<SegmentPiece>(p);
      pieces.push_back({{"kind", "segment"},
                        {"p0", to_json(seg.p0)},
                        {"p1", to_json(seg.p1)},
                        {"th", seg.th}});
    }
  }
  return {{"kind", "piecewise"}, {"pieces", pieces}};
}

ConvexTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error("table JSON needs a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "support_fourier") {
    std::vector<std::array<double, 2>> coeffs;
    if (j.contains("coeffs"))
      for (const auto& c : j.at("coeffs")) {
        if (!c.is_array() || c.size() != 2) throw Error("coeffs must be [a, b] pairs");
        coeffs.push_back({c[0].get<double>(), c[1].get<double>()});
      }
    return ConvexTable::support_fourier(j.at("h0").get<double>(), std::move(coeffs));
  }
  if (kind == "piecewise") {
    std::vector<Piece> pieces;
    for (const auto& p : j.at("pieces")) {
      std::string pk = p.at("kind").get<std::string>();
      if (pk == "arc")
        pieces.push_back(ArcPiece{vec2_from_json(p.at("center")),
                                  p.at("radius").get<double>(),
                                  p.at("th0").get<double>(),
                                  p.at("th1").get<double>()});
      else if (pk == "corner")
        pieces.push_back(CornerPiece{vec2_from_json(p.at("point")),
                                     p.at("th0").get<double>(),
                                     p.at("th1").get<double>()});
      else if (pk == "segment")
        pieces.push_back(SegmentPiece{vec2_from_json(p.at("p0")),
                                      vec2_from_json(p.at("p1")),
                                      p.at("th").get<double>()});
      else
        throw Error("unknown piece kind: " + pk);
    }
    return ConvexTable::piecewise(std::move(pieces));
  }
  throw Error("unknown table kind: " + kind);
}

json to_json(const EquivariantCurve& curve) {
  json coeffs = json::array();
  for (const auto& [m, c] : curve.coeffs())
    coeffs.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return {{"kind", "equivariant_curve"}, {"coeffs", coeffs}};
}

EquivariantCurve curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs"))
    throw Error("curve JSON needs a \"coeffs\" array");
  EquivariantCurve::Coeffs coeffs;
  for (const auto& c : j.at("coeffs"))
    coeffs[c.at("m").get<int>()] = {c.at("re").get<double>(),
                                    c.at("im").get<double>()};
  return EquivariantCurve(std::move(coeffs));
}

json to_json(const OrbitReport& rep) {
  json pts = json::array();
  for (const Vec2& p : rep.points) pts.push_back(to_json(p));
  return {{"points", pts},
          {"n", rep.n},
          {"k", rep.k},
          {"closure_error", rep.closure_error},
          {"circumscribed_area2", rep.circumscribed_area2}};
}

json to_json(const IdentityExample& ex) {
  json tables = json::array();
  for (const auto& t : ex.tables) tables.push_back(to_json(t));
  return {{"triangle", to_json(ex.triangle)},
          {"tables", tables},
          {"cycle_error", ex.cycle_error},
          {"diff_error", ex.diff_error},
          {"composed_diff", json::array({ex.composed_diff.a, ex.composed_diff.b,
                                         ex.composed_diff.c, ex.composed_diff.d})}};
}

json to_json(const ObstructionReport& rep) {
  return {{"params", rep.params},
          {"residuals", rep.residuals},
          {"slope_at_zero", rep.slope_at_zero},
          {"symmetric_configuration", rep.symmetric_configuration}};
}

json to_json(const RoundedSquareReport& rep) {
  return {{"center", to_json(rep.center)},
          {"disk_radius", rep.disk_radius},
          {"tested", rep.tested},
          {"periodic", rep.periodic},
          {"fraction", rep.fraction},
          {"max_error", rep.max_error}};
}

json to_json(const ShootReport& rep) {
  return {{"residual_history", rep.residual_history},
          {"iterations", rep.iterations},
          {"converged", rep.converged}};
}

json to_json(const Solve3Report& rep) {
  return {{"residual_history", rep.residual_history},
          {"iterations", rep.iterations},
          {"converged", rep.converged}};
}

json to_json(const FamilyReport& rep) {
  return {{"fit_ok", rep.fit_ok},
          {"fit_residual", rep.fit_residual},
          {"max_closure", rep.max_closure},
          {"area_spread", rep.area_spread}};
}

json to_json(const RotationSequence& seq) {
  json states = json::array();
  for (const auto& s : seq.states)
    states.push_back(json::array({s.triangle[0], s.triangle[1], s.triangle[2]}));
  json moves = json::array();
  for (const auto& m : seq.moves)
    moves.push_back({{"corner", m.corner}, {"dir", m.dir}});
  const char* outcome = "move_limit";
  switch (seq.outcome) {
    case RotationOutcome::exact_return: outcome = "exact_return"; break;
    case RotationOutcome::relabeled_return: outcome = "relabeled_return"; break;
    case RotationOutcome::stuck: outcome = "stuck"; break;
    case RotationOutcome::move_limit: break;
  }
  return {{"triangles", states}, {"moves", moves}, {"outcome", outcome}};
}

json to_json(const DeformationSpace& space) {
  json basis = json::array();
  for (const auto& W : space.basis) {
    json vec = json::array();
    for (const Vec2& v : W) vec.push_back(to_json(v));
    basis.push_back(vec);
  }
  return {{"dimension", space.dimension},
          {"affine_directions", space.affine_directions},
          {"basis", basis}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace obl
