#ifndef GROUPALG_JSON_IO_HPP_
#define GROUPALG_JSON_IO_HPP_

#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse.hpp"
#include "convolution.hpp"
#include "graph.hpp"
#include "groupoid.hpp"
#include "inverse_semigroup.hpp"
#include "partial_action.hpp"
#include "self_similar.hpp"

namespace groupalg {

using Json = nlohmann::json;

namespace detail_io {

inline std::map<std::string, int> index_labels(Json const& arr,
                                               char const* what) {
  std::map<std::string, int> idx;
  int i = 0;
  for (auto const& v : arr) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (!idx.emplace(s, i++).second)
      throw std::invalid_argument(std::string("duplicate ") + what +
                                  " label: " + s);
  }
  return idx;
}

inline int lookup(std::map<std::string, int> const& idx, Json const& key,
                  char const* what) {
  std::string s = key.is_string() ? key.get<std::string>() : key.dump();
  auto it = idx.find(s);
  if (it == idx.end())
    throw std::invalid_argument(std::string("unknown ") + what +
                                " label: " + s);
  return it->second;
}

}  // namespace detail_io

// { "arrows": [labels], "units": [labels], "r": {a: x}, "d": {a: x},
//   "compose": [[a, b, ab]], "inverse": {a: b}, "basis": [[a, ...]]? }
inline FiniteGroupoid groupoid_from_json(Json const& j) {
  using detail_io::lookup;
  auto idx = detail_io::index_labels(j.at("arrows"), "arrow");
  FiniteGroupoid g;
  g.n = static_cast<int>(idx.size());
  for (auto const& v : j.at("arrows")) g.labels.push_back(v.get<std::string>());
  g.unit.assign(g.n, false);
  for (auto const& u : j.at("units")) g.unit[lookup(idx, u, "arrow")] = true;
  g.range_map.assign(g.n, -1);
  g.domain_map.assign(g.n, -1);
  g.inverse_map.assign(g.n, -1);
  for (auto const& [k, v] : j.at("r").items())
    g.range_map[idx.at(k)] = lookup(idx, v, "arrow");
  for (auto const& [k, v] : j.at("d").items())
    g.domain_map[idx.at(k)] = lookup(idx, v, "arrow");
  for (auto const& [k, v] : j.at("inverse").items())
    g.inverse_map[idx.at(k)] = lookup(idx, v, "arrow");
  g.comp.assign(static_cast<size_t>(g.n) * g.n, -1);
  for (auto const& trip : j.at("compose")) {
    int a = lookup(idx, trip.at(0), "arrow");
    int b = lookup(idx, trip.at(1), "arrow");
    int c = lookup(idx, trip.at(2), "arrow");
    g.comp[static_cast<size_t>(a) * g.n + b] = c;
  }
  if (j.contains("basis")) {
    TopologyBasis tb;
    for (auto const& set : j.at("basis")) {
      ArrowSet s;
      for (auto const& a : set) s.push_back(lookup(idx, a, "arrow"));
      tb.sets.push_back(make_set(std::move(s)));
    }
    g.topology = std::move(tb);
  }
  for (Arrow a = 0; a < g.n; ++a)
    if (g.range_map[a] < 0 || g.domain_map[a] < 0 || g.inverse_map[a] < 0)
      throw std::invalid_argument("arrow missing r, d, or inverse: " +
                                  g.label(a));
  return g;
}

inline Json groupoid_to_json(FiniteGroupoid const& g) {
  Json j;
  j["arrows"] = Json::array();
  for (Arrow a = 0; a < g.n; ++a) j["arrows"].push_back(g.label(a));
  j["units"] = Json::array();
  for (Arrow a : g.units()) j["units"].push_back(g.label(a));
  j["r"] = Json::object();
  j["d"] = Json::object();
  j["inverse"] = Json::object();
  for (Arrow a = 0; a < g.n; ++a) {
    j["r"][g.label(a)] = g.label(g.range(a));
    j["d"][g.label(a)] = g.label(g.domain(a));
    j["inverse"][g.label(a)] = g.label(g.inverse(a));
  }
  j["compose"] = Json::array();
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b)
      if (g.compose(a, b) >= 0)
        j["compose"].push_back({g.label(a), g.label(b),
                                g.label(g.compose(a, b))});
  if (g.topology) {
    j["basis"] = Json::array();
    for (auto const& s : g.topology->sets) {
      Json set = Json::array();
      for (Arrow a : s) set.push_back(g.label(a));
      j["basis"].push_back(set);
    }
  }
  return j;
}

// { "values": [[a, b, re, im]] }; unspecified composable pairs default to 1.
inline TwoCocycle<Cx> cocycle_from_json(Json const& j,
                                        FiniteGroupoid const& g) {
  std::map<std::string, int> idx;
  for (Arrow a = 0; a < g.n; ++a) idx[g.label(a)] = a;
  auto sigma = TwoCocycle<Cx>::trivial_on(g);
  for (auto const& row : j.at("values")) {
    int a = detail_io::lookup(idx, row.at(0), "arrow");
    int b = detail_io::lookup(idx, row.at(1), "arrow");
    sigma.values[static_cast<size_t>(a) * g.n + b] =
        Cx(row.at(2).get<double>(), row.at(3).get<double>());
  }
  return sigma;
}

// { "coeffs": {arrowLabel: [re, im]} }
inline ConvElement<Cx> element_from_json(Json const& j,
                                         FiniteGroupoid const& g) {
  std::map<std::string, int> idx;
  for (Arrow a = 0; a < g.n; ++a) idx[g.label(a)] = a;
  ConvElement<Cx> f;
  f.g = &g;
  f.coeffs.assign(g.n, Cx{});
  for (auto const& [k, v] : j.at("coeffs").items()) {
    auto it = idx.find(k);
    if (it == idx.end())
      throw std::invalid_argument("unknown arrow label: " + k);
    f.coeffs[it->second] = Cx(v.at(0).get<double>(), v.at(1).get<double>());
  }
  return f;
}

// { "elements": [labels], "zero": label, "table": [[label]] }
inline FiniteInverseSemigroup semigroup_from_json(Json const& j) {
  auto idx = detail_io::index_labels(j.at("elements"), "element");
  FiniteInverseSemigroup s;
  s.m = static_cast<int>(idx.size());
  for (auto const& v : j.at("elements")) s.labels.push_back(v.get<std::string>());
  s.zero = detail_io::lookup(idx, j.at("zero"), "element");
  Json const& table = j.at("table");
  if (static_cast<int>(table.size()) != s.m)
    throw std::invalid_argument("table has the wrong number of rows");
  s.table.assign(static_cast<size_t>(s.m) * s.m, -1);
  for (int a = 0; a < s.m; ++a) {
    if (static_cast<int>(table[a].size()) != s.m)
      throw std::invalid_argument("table row has the wrong length");
    for (int b = 0; b < s.m; ++b)
      s.table[static_cast<size_t>(a) * s.m + b] =
          detail_io::lookup(idx, table[a][b], "element");
  }
  return s;  // caller runs validate_semigroup and finalize
}

// { "group": [[int]], "space": [labels], "theta": {t: {x: y}},
//   "u": [[s, t, x, re, im]]? }   t, s are group indices as strings.
struct PartialActionInput {
  PartialAction pa;
  std::optional<ActionCocycle<Cx>> u;
};

inline PartialActionInput paction_from_json(Json const& j) {
  PartialActionInput in;
  PartialAction& pa = in.pa;
  for (auto const& row : j.at("group"))
    pa.gtable.push_back(row.get<std::vector<int>>());
  pa.order = static_cast<int>(pa.gtable.size());
  auto xidx = detail_io::index_labels(j.at("space"), "point");
  pa.nx = static_cast<int>(xidx.size());
  for (auto const& v : j.at("space")) pa.x_labels.push_back(v.get<std::string>());
  pa.theta.assign(pa.order, std::vector<int>(pa.nx, -1));
  for (auto const& [tkey, moves] : j.at("theta").items()) {
    int t = std::stoi(tkey);
    if (t < 0 || t >= pa.order)
      throw std::invalid_argument("group index out of range: " + tkey);
    for (auto const& [xkey, y] : moves.items())
      pa.theta[t][xidx.at(xkey)] = detail_io::lookup(xidx, y, "point");
  }
  if (j.contains("u")) {
    ActionCocycle<Cx> u;
    u.order = pa.order;
    u.nx = pa.nx;
    u.values.assign(static_cast<size_t>(pa.order) * pa.order * pa.nx, Cx{1});
    for (auto const& row : j.at("u")) {
      int s = row.at(0).get<int>(), t = row.at(1).get<int>();
      int x = row.at(2).get<int>();
      u.values[(static_cast<size_t>(s) * pa.order + t) * pa.nx + x] =
          Cx(row.at(3).get<double>(), row.at(4).get<double>());
    }
    in.u = std::move(u);
  }
  return in;
}

// { "vertices": [labels], "edges": [[src, rng]] }
inline DirectedGraph graph_from_json(Json const& j) {
  auto vidx = detail_io::index_labels(j.at("vertices"), "vertex");
  DirectedGraph q;
  q.nv = static_cast<int>(vidx.size());
  for (auto const& v : j.at("vertices")) q.v_labels.push_back(v.get<std::string>());
  for (auto const& e : j.at("edges")) {
    q.esrc.push_back(detail_io::lookup(vidx, e.at(0), "vertex"));
    q.erng.push_back(detail_io::lookup(vidx, e.at(1), "vertex"));
  }
  return q;
}

inline std::string to_dot(DirectedGraph const& q) {
  std::ostringstream os;
  os << "digraph {\n";
  for (int v = 0; v < q.nv; ++v) os << "  " << q.vlabel(v) << ";\n";
  for (int e = 0; e < q.ne(); ++e)
    os << "  " << q.vlabel(q.esrc[e]) << " -> " << q.vlabel(q.erng[e])
       << ";\n";
  os << "}\n";
  return os.str();
}

// { "graph": {...}, "states": [labels] (identity first),
//   "sigma": {state: {edge: edge}}, "restrict": {state: {edge: state}},
//   "product": [[s, t, st]] }   edges are indices as strings.
inline SelfSimilarAction selfsim_from_json(Json const& j) {
  SelfSimilarAction a;
  a.q = graph_from_json(j.at("graph"));
  auto sidx = detail_io::index_labels(j.at("states"), "state");
  a.ns = static_cast<int>(sidx.size());
  a.id_state = 0;
  for (auto const& v : j.at("states")) a.s_labels.push_back(v.get<std::string>());
  int ne = a.q.ne();
  a.sigma_e.assign(a.ns, std::vector<int>(ne));
  for (int g = 0; g < a.ns; ++g)
    for (int e = 0; e < ne; ++e) a.sigma_e[g][e] = e;
  a.restrict_.assign(a.ns, std::vector<int>(ne, 0));
  for (auto const& [skey, moves] : j.at("sigma").items()) {
    int g = detail_io::lookup(sidx, skey, "state");
    for (auto const& [ekey, f] : moves.items())
      a.sigma_e[g][std::stoi(ekey)] = f.is_string()
                                          ? std::stoi(f.get<std::string>())
                                          : f.get<int>();
  }
  for (auto const& [skey, moves] : j.at("restrict").items()) {
    int g = detail_io::lookup(sidx, skey, "state");
    for (auto const& [ekey, h] : moves.items())
      a.restrict_[g][std::stoi(ekey)] = detail_io::lookup(sidx, h, "state");
  }
  a.product.assign(a.ns, std::vector<int>(a.ns, -1));
  for (int g = 0; g < a.ns; ++g) {
    a.product[0][g] = g;
    a.product[g][0] = g;
  }
  for (auto const& trip : j.at("product")) {
    int s = detail_io::lookup(sidx, trip.at(0), "state");
    int t = detail_io::lookup(sidx, trip.at(1), "state");
    a.product[s][t] = detail_io::lookup(sidx, trip.at(2), "state");
  }
  // vertex action derived from the edge action via the range map
  a.sigma_v.assign(a.ns, std::vector<int>(a.q.nv, -1));
  for (int g = 0; g < a.ns; ++g)
    for (int v = 0; v < a.q.nv; ++v) {
      for (int e = 0; e < ne; ++e)
        if (a.q.erng[e] == v) {
          a.sigma_v[g][v] = a.q.erng[a.sigma_e[g][e]];
          break;
        }
      if (a.sigma_v[g][v] < 0) a.sigma_v[g][v] = v;  // sources: rejected later
    }
  return a;
}

// { "points": [labels] | count, "generators": [[[x, y], ...]],
//   "blockdim": k }
struct CoarseInput {
  CoarseSpace cs;
  int blockdim = 1;
  std::vector<std::string> labels;
};

inline CoarseInput coarse_from_json(Json const& j) {
  CoarseInput in;
  int nx;
  std::map<std::string, int> pidx;
  if (j.at("points").is_number()) {
    nx = j.at("points").get<int>();
    for (int x = 0; x < nx; ++x) in.labels.push_back(std::to_string(x));
  } else {
    pidx = detail_io::index_labels(j.at("points"), "point");
    nx = static_cast<int>(pidx.size());
    for (auto const& v : j.at("points")) in.labels.push_back(v.get<std::string>());
  }
  auto point = [&](Json const& v) {
    if (v.is_number()) return v.get<int>();
    return detail_io::lookup(pidx, v, "point");
  };
  std::vector<Entourage> gens;
  for (auto const& gen : j.at("generators")) {
    Entourage e;
    for (auto const& pr : gen) e.insert({point(pr.at(0)), point(pr.at(1))});
    gens.push_back(std::move(e));
  }
  in.cs = coarse_space(nx, gens);
  if (j.contains("blockdim")) in.blockdim = j.at("blockdim").get<int>();
  return in;
}

}  // namespace groupalg

#endif  // GROUPALG_JSON_IO_HPP_
