#include "dualcurve/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dualcurve {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& what) { throw GeometryError(ErrorCode::InvalidArgument, what); }

constexpr double kUnitSlack = 4e-16;

// Unit vectors are kept bit for bit.
Direction direction_of(const Vec& v) {
  if (std::abs(v.norm() - 1.0) <= kUnitSlack) return Direction::unit(v);
  return Direction::normalized(v);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) reject(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) reject(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) reject(std::string(what) + " must be finite");
  return x;
}

int dimension(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1) reject("dim must be a positive integer");
  return d.get<int>();
}

Vec vector_of(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    reject(std::string(what) + " must be an array of length " + std::to_string(dim));
  }
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = number(j[i], what);
  return v;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) reject(std::string("'") + key + "' must be an array");
  return a;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    reject(std::string("malformed JSON: ") + e.what());
  }
}

json to_array(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json hpolytope_json(const HPolytope& p) {
  json normals = json::array();
  for (const Direction& v : p.normals()) normals.push_back(to_array(v.coords()));
  return {{"type", "hpolytope"}, {"dim", p.dim()}, {"normals", normals}, {"offsets", p.offsets()}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) reject("cannot write " + path);
  out << text << '\n';
}

}  // namespace

Body body_from_json(const std::string& text) {
  const json j = parse(text);
  const json& type = field(j, "type");
  if (!type.is_string()) reject("type must be a string");
  const std::string kind = type.get<std::string>();

  if (kind == "hpolytope") {
    const int n = dimension(j);
    const json& normals = array_field(j, "normals");
    const json& offsets = array_field(j, "offsets");
    if (normals.size() != offsets.size()) reject("normals and offsets differ in length");
    std::vector<Direction> dirs;
    std::vector<double> h;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const Vec v = vector_of(normals[i], n, "normal");
      double norm = v.norm();
      if (!(norm > 0.0)) reject("normal must be nonzero");
      if (std::abs(norm - 1.0) <= kUnitSlack) norm = 1.0;
      dirs.push_back(direction_of(v));
      h.push_back(number(offsets[i], "offset") / norm);
    }
    return HPolytope(std::move(dirs), std::move(h));
  }
  if (kind == "vpolytope") {
    const int n = dimension(j);
    std::vector<Vec> points;
    for (const json& p : array_field(j, "vertices")) points.push_back(vector_of(p, n, "vertex"));
    return VPolytope(n, std::move(points));
  }
  if (kind == "ball") {
    return SmoothBody::ball(dimension(j), number(field(j, "radius"), "radius"));
  }
  if (kind == "ellipsoid") {
    std::vector<double> axes;
    for (const json& a : array_field(j, "axes")) axes.push_back(number(a, "axis"));
    return SmoothBody::ellipsoid(std::move(axes));
  }
  reject("unknown body type '" + kind + "'");
}

std::string body_to_json(const Body& body) {
  json j;
  if (const auto* h = std::get_if<HPolytope>(&body)) {
    j = hpolytope_json(*h);
  } else if (const auto* v = std::get_if<VPolytope>(&body)) {
    json vertices = json::array();
    for (const Vec& p : v->vertices()) vertices.push_back(to_array(p));
    j = {{"type", "vpolytope"}, {"dim", v->dim()}, {"vertices", vertices}};
  } else {
    const auto& s = std::get<SmoothBody>(body);
    if (s.kind() == SmoothBody::Kind::Ball) {
      j = {{"type", "ball"}, {"dim", s.dim()}, {"radius", s.axes().front()}};
    } else {
      j = {{"type", "ellipsoid"}, {"axes", s.axes()}};
    }
  }
  return j.dump(2);
}

DiscreteSphericalMeasure measure_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = dimension(j);
  std::vector<Atom> atoms;
  for (const json& a : array_field(j, "atoms")) {
    const Vec v = vector_of(field(a, "dir"), n, "dir");
    atoms.push_back(Atom{direction_of(v), number(field(a, "weight"), "weight")});
  }
  DiscreteSphericalMeasure mu(n, std::move(atoms));
  if (j.contains("even")) {
    const json& even = j.at("even");
    if (!even.is_boolean()) reject("even must be a boolean");
    if (even.get<bool>() && !mu.even()) reject("measure is declared even but its atoms are not");
  }
  return mu;
}

std::string measure_to_json(const DiscreteSphericalMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back({{"dir", to_array(a.dir.coords())}, {"weight", a.weight}});
  const json j = {{"dim", mu.dim()}, {"even", mu.even()}, {"atoms", atoms}};
  return j.dump(2);
}

Body load_body(const std::string& path) { return body_from_json(read_file(path)); }

void save_body(const std::string& path, const Body& body) { write_file(path, body_to_json(body)); }

DiscreteSphericalMeasure load_measure(const std::string& path) { return measure_from_json(read_file(path)); }

void save_measure(const std::string& path, const DiscreteSphericalMeasure& mu) {
  write_file(path, measure_to_json(mu));
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace dualcurve
