#include "permlattice/io.hpp"

#include <fstream>

namespace permlattice {

namespace {

Vec vec_from(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected an integer vector");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidInput("expected an integer vector");
    v.push_back(x.get<int>());
  }
  return v;
}

template <class F>
auto guarded(const char* what, F f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const RestrictionSet& a) {
  Json j;
  j["d"] = a.dim();
  j["elements"] = a.elements();
  return j;
}

Json to_json(const Region& u) {
  Json j;
  j["d"] = u.dim();
  j["cells"] = u.cells();
  if (u.box_size()) j["box"] = *u.box_size();
  return j;
}

Json to_json(const Pattern& p) {
  Json j;
  j["set"] = to_json(p.set());
  j["region"] = to_json(p.region());
  j["values"] = p.values();
  return j;
}

Json to_json(const UndirectedGraph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  Json e = Json::array();
  for (const auto& [a, b] : g.edges()) e.push_back({a, b});
  j["edges"] = e;
  return j;
}

Json big_json(const BigInt& x) { return x.get_str(); }

Json big_list(const std::vector<BigInt>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

RestrictionSet set_from_json(const Json& j) {
  return guarded("restriction set", [&] {
    if (j.is_string()) return preset_by_name(j.get<std::string>());
    std::vector<Vec> el;
    for (const auto& e : j.at("elements")) el.push_back(vec_from(e));
    int d = j.contains("d") ? j.at("d").get<int>() : (el.empty() ? 0 : static_cast<int>(el[0].size()));
    return RestrictionSet(d, el);
  });
}

Region region_from_json(const Json& j) {
  return guarded("region", [&] {
    if (j.contains("box") && !j.contains("cells")) return Region::box(vec_from(j.at("box")));
    std::vector<Vec> cells;
    for (const auto& c : j.at("cells")) cells.push_back(vec_from(c));
    int d = j.contains("d") ? j.at("d").get<int>() : (cells.empty() ? 0 : static_cast<int>(cells[0].size()));
    Region r(d, cells);
    if (j.contains("box")) {
      Region b = Region::box(vec_from(j.at("box")));
      if (!(b == r)) throw InvalidInput("region box descriptor does not match its cells");
      return b;
    }
    return r;
  });
}

Pattern pattern_from_json(const Json& j) {
  return guarded("pattern", [&] {
    RestrictionSet a = set_from_json(j.at("set"));
    Region u = region_from_json(j.at("region"));
    std::vector<int> v = j.at("values").get<std::vector<int>>();
    return Pattern(a, u, v);
  });
}

UndirectedGraph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    int n = j.at("vertices").get<int>();
    if (n < 0) throw InvalidInput("negative vertex count");
    UndirectedGraph g(n, true);
    for (const auto& e : j.at("edges")) {
      Vec p = vec_from(e);
      if (p.size() != 2 || p[0] < 0 || p[1] < 0 || p[0] >= n || p[1] >= n) throw InvalidInput("bad edge");
      g.add_edge(p[0], p[1]);
    }
    return g;
  });
}

TorusIntegrand integrand_from_json(const Json& j) {
  return guarded("polynomial", [&] {
    TorusIntegrand t;
    for (const auto& term : j.at("terms")) {
      if (!term.is_array() || term.size() < 3 || term.size() > 4) throw InvalidInput("term must be [a, b, re] or [a, b, re, im]");
      double im = term.size() == 4 ? term[3].get<double>() : 0.0;
      t.terms.emplace_back(term[0].get<int>(), term[1].get<int>(), std::complex<double>(term[2].get<double>(), im));
    }
    t.validate();
    return t;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

}  // namespace permlattice
