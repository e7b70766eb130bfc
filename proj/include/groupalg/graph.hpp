#ifndef GROUPALG_GRAPH_HPP_
#define GROUPALG_GRAPH_HPP_

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groupoid.hpp"

namespace groupalg {

// Directed graph with explicit range and source maps on edges.  A path
// mu_1 mu_2 ... satisfies s(mu_i) = r(mu_{i+1}); edges point from source
// to range, and paths are read against the edge direction.
struct DirectedGraph {
  int nv = 0;
  std::vector<int> esrc, erng;  // per edge: s(e), r(e)
  std::vector<std::string> v_labels, e_labels;

  int ne() const { return static_cast<int>(esrc.size()); }
  std::string vlabel(int v) const {
    return v < static_cast<int>(v_labels.size()) ? v_labels[v]
                                                 : "v" + std::to_string(v);
  }
};

inline ValidationReport validate_graph(DirectedGraph const& q) {
  ValidationReport rep;
  for (int e = 0; e < q.ne(); ++e) {
    if (q.esrc[e] < 0 || q.esrc[e] >= q.nv)
      rep.add("edge source out of range", {e});
    if (q.erng[e] < 0 || q.erng[e] >= q.nv)
      rep.add("edge range out of range", {e});
  }
  return rep;
}

// Singular vertices: r^{-1}(v) empty (the infinite-receiver case cannot
// occur at finite size).
inline std::vector<int> singular_vertices(DirectedGraph const& q) {
  std::vector<bool> receives(q.nv, false);
  for (int e = 0; e < q.ne(); ++e) receives[q.erng[e]] = true;
  std::vector<int> out;
  for (int v = 0; v < q.nv; ++v)
    if (!receives[v]) out.push_back(v);
  return out;
}

// v <= w iff some path ends in v and starts in w, i.e. v is reachable from
// w along edge direction.  Returns the full relation as a matrix.
inline std::vector<std::vector<bool>> reachability(DirectedGraph const& q) {
  std::vector<std::vector<bool>> leq(q.nv, std::vector<bool>(q.nv, false));
  for (int v = 0; v < q.nv; ++v) leq[v][v] = true;
  for (int e = 0; e < q.ne(); ++e) leq[q.erng[e]][q.esrc[e]] = true;
  for (int k = 0; k < q.nv; ++k)
    for (int v = 0; v < q.nv; ++v)
      for (int w = 0; w < q.nv; ++w)
        if (leq[v][k] && leq[k][w]) leq[v][w] = true;
  return leq;
}

// All simple cycles as edge sequences mu_1 ... mu_n with s(mu_i) =
// r(mu_{i+1}) and s(mu_n) = r(mu_1); capped because the count can blow up.
inline std::vector<std::vector<int>> simple_cycles(DirectedGraph const& q,
                                                   size_t cap = 10000) {
  std::vector<std::vector<int>> out;
  // out-edges by source for the forward walk r(mu_1) <- ... <- s(mu_n):
  // we walk in edge direction, base -> ... -> base, recording edges, then
  // reverse to match the path convention.
  std::vector<std::vector<int>> by_src(q.nv);
  for (int e = 0; e < q.ne(); ++e) by_src[q.esrc[e]].push_back(e);
  std::vector<bool> on_path(q.nv, false);
  std::vector<int> edges;
  std::function<void(int, int)> dfs = [&](int base, int v) {
    for (int e : by_src[v]) {
      int w = q.erng[e];
      if (w == base) {
        std::vector<int> full;
        full.push_back(e);
        for (auto it = edges.rbegin(); it != edges.rend(); ++it)
          full.push_back(*it);
        out.push_back(std::move(full));
        if (out.size() > cap)
          throw std::runtime_error("too many simple cycles (cap exceeded)");
        continue;
      }
      if (w < base || on_path[w]) continue;
      on_path[w] = true;
      edges.push_back(e);
      dfs(base, w);
      edges.pop_back();
      on_path[w] = false;
    }
  };
  for (int base = 0; base < q.nv; ++base) {
    on_path[base] = true;
    dfs(base, base);
    on_path[base] = false;
  }
  return out;
}

inline std::vector<int> cycle_vertices(DirectedGraph const& q,
                                       std::vector<int> const& cycle) {
  ArrowSet vs;
  for (int e : cycle) vs.push_back(q.erng[e]);
  return make_set(std::move(vs));
}

// A cycle has an entry if some r(mu_i) receives an edge other than mu_i.
// An entryless cycle forces an entryless simple cycle, so the simple ones
// decide the verdict.
inline Verdict every_cycle_has_entry(DirectedGraph const& q) {
  for (auto const& cyc : simple_cycles(q)) {
    bool has_entry = false;
    for (int mu : cyc) {
      for (int e = 0; e < q.ne(); ++e)
        if (e != mu && q.erng[e] == q.erng[mu]) {
          has_entry = true;
          break;
        }
      if (has_entry) break;
    }
    if (!has_entry) return no("entryless cycle", cyc);
  }
  return yes("every cycle has an entry");
}

// Cofinality: every boundary path must see, for each vertex v, some s(mu_i)
// above v.  The zero-length boundary paths give condition (b) on singular
// vertices; the eventually periodic infinite paths reduce to condition (a)
// on simple cycles, since vertices on a common cycle are equivalent under
// the reachability order.
inline Verdict is_cofinal(DirectedGraph const& q) {
  auto leq = reachability(q);
  for (auto const& cyc : simple_cycles(q)) {
    auto vs = cycle_vertices(q, cyc);
    for (int v = 0; v < q.nv; ++v) {
      bool ok = false;
      for (int u : vs)
        if (leq[v][u]) {
          ok = true;
          break;
        }
      if (!ok) {
        std::vector<Arrow> w = {v};
        for (int u : vs) w.push_back(u);
        return no("vertex cannot reach any tail of a cycle path", w);
      }
    }
  }
  for (int w : singular_vertices(q))
    for (int v = 0; v < q.nv; ++v)
      if (!leq[v][w])
        return no("vertex is not reachable from a singular vertex", {v, w});
  return yes("all boundary paths are cofinal");
}

enum class GraphVerdict { not_simple, simple_af, simple_purely_infinite };

struct GraphSimplicity {
  GraphVerdict kind;
  Verdict cycles_have_entries;
  Verdict cofinal;
  std::string reason;
};

inline GraphSimplicity simplicity_verdict(DirectedGraph const& q) {
  GraphSimplicity out{GraphVerdict::not_simple, every_cycle_has_entry(q),
                      is_cofinal(q), ""};
  if (!out.cycles_have_entries.value) {
    out.reason = "not simple: " + out.cycles_have_entries.reason;
    return out;
  }
  if (!out.cofinal.value) {
    out.reason = "not simple: " + out.cofinal.reason;
    return out;
  }
  bool has_cycle = !simple_cycles(q).empty();
  out.kind = has_cycle ? GraphVerdict::simple_purely_infinite
                       : GraphVerdict::simple_af;
  out.reason = has_cycle ? "simple and purely infinite (the graph has a "
                           "cycle)"
                         : "simple and approximately finite (no cycles)";
  return out;
}

// Boundary paths of a finite acyclic graph: finite paths starting at a
// singular vertex, as edge sequences mu_1 ... mu_n read from the range end
// (empty sequence = the zero-length path at the singular vertex itself).
struct BoundaryPathGroupoid {
  FiniteGroupoid g;
  std::vector<std::vector<int>> paths;       // edge sequences
  std::vector<int> path_start;               // singular start vertex s(mu_n)
  std::vector<std::pair<int, int>> arrow_pair;  // arrow -> (path, path)
};

inline BoundaryPathGroupoid boundary_path_groupoid_acyclic(
    DirectedGraph const& q) {
  if (!simple_cycles(q).empty())
    throw std::invalid_argument("graph has a cycle; boundary paths would be "
                                "infinite");
  BoundaryPathGroupoid out;
  std::vector<std::vector<int>> by_src(q.nv);
  for (int e = 0; e < q.ne(); ++e) by_src[q.esrc[e]].push_back(e);
  // grow paths from the singular start vertex by prepending edges at the
  // range end
  for (int w : singular_vertices(q)) {
    std::vector<int> seq;
    std::function<void(int)> grow = [&](int head) {
      out.paths.push_back(std::vector<int>(seq.rbegin(), seq.rend()));
      out.path_start.push_back(w);
      for (int e : by_src[head]) {
        seq.push_back(e);
        grow(q.erng[e]);
        seq.pop_back();
      }
    };
    grow(w);
  }
  // two boundary paths are tail-equivalent exactly when they share the
  // singular start, so the groupoid is a union of pair groupoids
  int np = static_cast<int>(out.paths.size());
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      if (out.path_start[i] == out.path_start[j])
        out.arrow_pair.emplace_back(i, j);
  int n = static_cast<int>(out.arrow_pair.size());
  std::map<std::pair<int, int>, Arrow> idx;
  for (Arrow a = 0; a < n; ++a) idx[out.arrow_pair[a]] = a;
  FiniteGroupoid& g = out.g;
  g.n = n;
  g.unit.assign(n, false);
  g.range_map.resize(n);
  g.domain_map.resize(n);
  g.inverse_map.resize(n);
  g.comp.assign(static_cast<size_t>(n) * n, -1);
  g.labels.resize(n);
  for (Arrow a = 0; a < n; ++a) {
    auto [i, j] = out.arrow_pair[a];
    g.unit[a] = (i == j);
    g.range_map[a] = idx.at({i, i});
    g.domain_map[a] = idx.at({j, j});
    g.inverse_map[a] = idx.at({j, i});
    g.labels[a] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  for (Arrow a = 0; a < n; ++a)
    for (Arrow b = 0; b < n; ++b) {
      auto [i, j] = out.arrow_pair[a];
      auto [k, l] = out.arrow_pair[b];
      if (j == k) g.comp[static_cast<size_t>(a) * n + b] = idx.at({i, l});
    }
  return out;
}

// Minimal DOT reader: `digraph name? { a -> b; a -> b -> c; lone_node; }`.
// An edge `a -> b` has source a and range b.
inline DirectedGraph parse_dot(std::string const& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text.compare(pos, 2, "//") == 0) {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto ident = [&]() -> std::string {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (start == pos) throw std::invalid_argument("dot: identifier expected");
    return text.substr(start, pos - start);
  };
  skip_ws();
  if (ident() != "digraph")
    throw std::invalid_argument("dot: expected 'digraph'");
  skip_ws();
  if (pos < text.size() && text[pos] != '{') ident();  // optional name
  skip_ws();
  if (pos >= text.size() || text[pos] != '{')
    throw std::invalid_argument("dot: expected '{'");
  ++pos;
  DirectedGraph q;
  std::map<std::string, int> vid;
  auto vertex = [&](std::string const& name) {
    auto it = vid.find(name);
    if (it != vid.end()) return it->second;
    int v = q.nv++;
    vid[name] = v;
    q.v_labels.push_back(name);
    return v;
  };
  while (true) {
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("dot: expected '}'");
    if (text[pos] == '}') break;
    if (text[pos] == ';') {
      ++pos;
      continue;
    }
    int a = vertex(ident());
    while (true) {
      skip_ws();
      if (text.compare(pos, 2, "->") == 0) {
        pos += 2;
        int b = vertex(ident());
        q.esrc.push_back(a);
        q.erng.push_back(b);
        q.e_labels.push_back(q.v_labels[a] + "->" + q.v_labels[b]);
        a = b;
      } else {
        break;
      }
    }
  }
  return q;
}

}  // namespace groupalg

#endif  // GROUPALG_GRAPH_HPP_
