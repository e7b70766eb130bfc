#ifndef GROUPALG_SELF_SIMILAR_HPP_
#define GROUPALG_SELF_SIMILAR_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace groupalg {

// Self-similar group action on a finite graph without sources, presented as
// an automaton: states act by graph automorphisms, restriction sends a
// state and an edge to a state, and the product table may be partial.
struct SelfSimilarAction {
  DirectedGraph q;
  int ns = 0;        // number of states
  int id_state = 0;  // identity state
  std::vector<std::vector<int>> sigma_v;    // [state][vertex] -> vertex
  std::vector<std::vector<int>> sigma_e;    // [state][edge] -> edge
  std::vector<std::vector<int>> restrict_;  // [state][edge] -> state
  std::vector<std::vector<int>> product;    // [state][state] -> state or -1
  std::vector<std::string> s_labels;

  int prod(int g, int h) const { return product[g][h]; }
};

// Trivial group acting on a graph.
inline SelfSimilarAction trivial_self_similar(DirectedGraph q) {
  SelfSimilarAction a;
  a.q = std::move(q);
  a.ns = 1;
  a.id_state = 0;
  a.sigma_v.assign(1, std::vector<int>(a.q.nv));
  for (int v = 0; v < a.q.nv; ++v) a.sigma_v[0][v] = v;
  a.sigma_e.assign(1, std::vector<int>(a.q.ne()));
  for (int e = 0; e < a.q.ne(); ++e) a.sigma_e[0][e] = e;
  a.restrict_.assign(1, std::vector<int>(a.q.ne(), 0));
  a.product.assign(1, std::vector<int>(1, 0));
  a.s_labels = {"1"};
  return a;
}

inline ValidationReport validate_action_ss(SelfSimilarAction const& a) {
  ValidationReport rep;
  if (!singular_vertices(a.q).empty()) {
    rep.add("graph has a source vertex", singular_vertices(a.q));
    return rep;
  }
  // identity state acts trivially with trivial restrictions
  for (int v = 0; v < a.q.nv; ++v)
    if (a.sigma_v[a.id_state][v] != v)
      rep.add("identity state moves a vertex", {v});
  for (int e = 0; e < a.q.ne(); ++e) {
    if (a.sigma_e[a.id_state][e] != e)
      rep.add("identity state moves an edge", {e});
    if (a.restrict_[a.id_state][e] != a.id_state)
      rep.add("identity state has a nontrivial restriction", {e});
  }
  // each state acts by a graph automorphism
  for (int g = 0; g < a.ns; ++g) {
    std::vector<bool> hitv(a.q.nv, false), hite(a.q.ne(), false);
    for (int v = 0; v < a.q.nv; ++v) {
      int w = a.sigma_v[g][v];
      if (w < 0 || w >= a.q.nv || hitv[w]) {
        rep.add("state is not a bijection on vertices", {g, v});
        continue;
      }
      hitv[w] = true;
    }
    for (int e = 0; e < a.q.ne(); ++e) {
      int f = a.sigma_e[g][e];
      if (f < 0 || f >= a.q.ne() || hite[f]) {
        rep.add("state is not a bijection on edges", {g, e});
        continue;
      }
      hite[f] = true;
      if (a.q.erng[f] != a.sigma_v[g][a.q.erng[e]])
        rep.add("automorphism does not intertwine the range map", {g, e});
      if (a.q.esrc[f] != a.sigma_v[g][a.q.esrc[e]])
        rep.add("automorphism does not intertwine the source map", {g, e});
    }
  }
  return rep;
}

// The two defining identities of the restriction map, checked wherever the
// product table is defined:
//   gh|_e = g|_{sigma_h(e)} h|_e       and      sigma_{g|_e}(s(e)) =
//   sigma_g(s(e)).
inline ValidationReport validate_cocycle_identities(
    SelfSimilarAction const& a) {
  ValidationReport rep;
  for (int g = 0; g < a.ns; ++g)
    for (int e = 0; e < a.q.ne(); ++e)
      if (a.sigma_v[a.restrict_[g][e]][a.q.esrc[e]] !=
          a.sigma_v[g][a.q.esrc[e]])
        rep.add("restriction acts differently on the source vertex", {g, e});
  for (int g = 0; g < a.ns; ++g)
    for (int h = 0; h < a.ns; ++h) {
      int gh = a.prod(g, h);
      if (gh < 0) continue;
      for (int e = 0; e < a.q.ne(); ++e) {
        if (a.sigma_e[gh][e] != a.sigma_e[g][a.sigma_e[h][e]])
          rep.add("product state acts differently on an edge", {g, h, e});
        int lhs = a.restrict_[gh][e];
        int rhs = a.prod(a.restrict_[g][a.sigma_e[h][e]],
                         a.restrict_[h][e]);
        if (rhs >= 0 && lhs != rhs)
          rep.add("restriction identity gh|_e = g|_{sigma_h(e)} h|_e fails",
                  {g, h, e});
      }
    }
  return rep;
}

// sigma_g(e mu) = sigma_g(e) sigma_{g|_e}(mu): apply a state to a path read
// from the range end, returning the image path and the final restriction.
struct PathActResult {
  std::vector<int> path;
  int state;
};

inline PathActResult act_on_path(SelfSimilarAction const& a, int g,
                                 std::vector<int> const& mu) {
  PathActResult out;
  out.state = g;
  for (int e : mu) {
    out.path.push_back(a.sigma_e[out.state][e]);
    out.state = a.restrict_[out.state][e];
  }
  return out;
}

inline bool is_strongly_fixed(SelfSimilarAction const& a, int g,
                              std::vector<int> const& mu) {
  auto r = act_on_path(a, g, mu);
  return r.path == mu && r.state == a.id_state;
}

// Minimal strongly fixed paths up to a depth bound: paths fixed pointwise
// whose final restriction is the identity and with no strongly fixed proper
// prefix.  exhausted reports whether the search space was fully closed off
// below the depth bound.
struct StronglyFixedResult {
  std::vector<std::vector<int>> minimal_paths;
  bool exhausted = true;
};

inline StronglyFixedResult strongly_fixed_paths(SelfSimilarAction const& a,
                                                int g, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  StronglyFixedResult out;
  std::vector<std::vector<int>> by_rng(a.q.nv);
  for (int e = 0; e < a.q.ne(); ++e) by_rng[a.q.erng[e]].push_back(e);
  // frontier of (state, s-end vertex, path) with no violation so far and no
  // strongly fixed prefix
  struct Node {
    int h, v;
    std::vector<int> path;
  };
  std::vector<Node> frontier;
  for (int v = 0; v < a.q.nv; ++v) frontier.push_back({g, v, {}});
  for (int level = 1; level <= depth; ++level) {
    std::vector<Node> next;
    for (auto const& nd : frontier)
      for (int e : by_rng[nd.v]) {
        if (a.sigma_e[nd.h][e] != e) continue;  // moved: never fixed again
        Node child{a.restrict_[nd.h][e], a.q.esrc[e], nd.path};
        child.path.push_back(e);
        if (child.h == a.id_state) {
          out.minimal_paths.push_back(child.path);
        } else {
          next.push_back(std::move(child));
        }
      }
    frontier = std::move(next);
  }
  out.exhausted = frontier.empty();
  return out;
}

enum class Tri { yes, no, unknown };

struct SlackResult {
  Tri verdict = Tri::unknown;
  int n = -1;                // minimal level for a yes
  std::vector<int> witness;  // state/vertex data for a no
  std::string reason;
};

namespace detail_ss {

// Product automaton node (state, vertex) reading paths from the range end.
inline int node_id(SelfSimilarAction const& a, int h, int v) {
  return h * a.q.nv + v;
}

// reachable set from (g, v) along all transitions
inline std::vector<bool> reachable_nodes(SelfSimilarAction const& a, int g,
                                         int v) {
  std::vector<bool> seen(a.ns * a.q.nv, false);
  std::vector<int> stack = {node_id(a, g, v)};
  seen[stack[0]] = true;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    int h = id / a.q.nv, w = id % a.q.nv;
    for (int e = 0; e < a.q.ne(); ++e) {
      if (a.q.erng[e] != w) continue;
      int nid = node_id(a, a.restrict_[h][e], a.q.esrc[e]);
      if (!seen[nid]) {
        seen[nid] = true;
        stack.push_back(nid);
      }
    }
  }
  return seen;
}

// does some reachable node carry an edge moved by its state?
inline bool violation_reachable(SelfSimilarAction const& a,
                                std::vector<bool> const& seen, int* wit) {
  for (int h = 0; h < a.ns; ++h)
    for (int v = 0; v < a.q.nv; ++v) {
      if (!seen[node_id(a, h, v)]) continue;
      for (int e = 0; e < a.q.ne(); ++e)
        if (a.q.erng[e] == v && a.sigma_e[h][e] != e) {
          if (wit) *wit = node_id(a, h, v);
          return true;
        }
    }
  return false;
}

}  // namespace detail_ss

// g fixes all infinite paths ending in v exactly when no reachable node of
// the product automaton moves an incoming edge.
inline bool fixes_all_paths_at(SelfSimilarAction const& a, int g, int v) {
  auto seen = detail_ss::reachable_nodes(a, g, v);
  return !detail_ss::violation_reachable(a, seen, nullptr);
}

// Slackness of g at v: some level n with every length-n path ending in v
// strongly fixed (longer levels follow by splitting off the fixed prefix).
inline SlackResult is_slack(SelfSimilarAction const& a, int g, int v,
                            int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  SlackResult res;
  std::vector<std::vector<int>> by_rng(a.q.nv);
  for (int e = 0; e < a.q.ne(); ++e) by_rng[a.q.erng[e]].push_back(e);
  // level-by-level: frontier of (state, s-end) pairs of non-strongly-fixed
  // prefixes; a level is all-fixed when the frontier dies out
  struct Node {
    int h, w;
    bool moved;  // some earlier edge was moved by the running state
  };
  std::vector<Node> frontier = {{g, v, false}};
  for (int level = 1; level <= depth; ++level) {
    std::vector<Node> next;
    std::vector<bool> dedup(2 * a.ns * a.q.nv, false);
    for (auto const& nd : frontier)
      for (int e : by_rng[nd.w]) {
        Node child{a.restrict_[nd.h][e], a.q.esrc[e],
                   nd.moved || a.sigma_e[nd.h][e] != e};
        bool fixed = !child.moved && child.h == a.id_state;
        if (fixed) continue;  // strongly fixed: longer extensions also are
        int key = (child.moved ? a.ns * a.q.nv : 0) +
                  detail_ss::node_id(a, child.h, child.w);
        if (!dedup[key]) {
          dedup[key] = true;
          next.push_back(child);
        }
      }
    frontier = std::move(next);
    if (frontier.empty()) {
      // an empty frontier is absorbing: every longer path factors through
      // a strongly fixed prefix
      res.n = level;
      res.verdict = Tri::yes;
      res.reason = "all paths of this length ending at the vertex are "
                   "strongly fixed";
      return res;
    }
  }
  // exact refutation: a violation is reachable, or a non-identity cycle in
  // the fixing automaton keeps producing long non-fixed paths
  auto seen = detail_ss::reachable_nodes(a, g, v);
  int wit = -1;
  if (detail_ss::violation_reachable(a, seen, &wit)) {
    res.verdict = Tri::no;
    res.witness = {wit / a.q.nv, wit % a.q.nv};
    res.reason = "a reachable restriction state moves an incoming edge, "
                 "and any extension stays non-fixed";
    return res;
  }
  // all transitions fix edges; look for a reachable cycle from which a
  // non-identity state is still reachable
  int nn = a.ns * a.q.nv;
  auto step = [&](int id, std::vector<int>& outs) {
    int h = id / a.q.nv, w = id % a.q.nv;
    for (int e = 0; e < a.q.ne(); ++e)
      if (a.q.erng[e] == w) outs.push_back(detail_ss::node_id(
          a, a.restrict_[h][e], a.q.esrc[e]));
  };
  for (int id = 0; id < nn; ++id) {
    if (!seen[id]) continue;
    // is id on a cycle?
    std::vector<bool> vis(nn, false);
    std::vector<int> stack;
    {
      std::vector<int> outs;
      step(id, outs);
      for (int o : outs)
        if (!vis[o]) {
          vis[o] = true;
          stack.push_back(o);
        }
    }
    bool on_cycle = vis[id];
    while (!stack.empty() && !on_cycle) {
      int cur = stack.back();
      stack.pop_back();
      std::vector<int> outs;
      step(cur, outs);
      for (int o : outs) {
        if (o == id) on_cycle = true;
        if (!vis[o]) {
          vis[o] = true;
          stack.push_back(o);
        }
      }
    }
    if (!on_cycle) continue;
    // can a non-identity state be reached from the cycle?
    std::vector<bool> after(nn, false);
    std::vector<int> st2 = {id};
    after[id] = true;
    while (!st2.empty()) {
      int cur = st2.back();
      st2.pop_back();
      if (cur / a.q.nv != a.id_state) {
        res.verdict = Tri::no;
        res.witness = {id / a.q.nv, id % a.q.nv, cur / a.q.nv,
                       cur % a.q.nv};
        res.reason = "a reachable automaton cycle keeps producing "
                     "non-identity restrictions";
        return res;
      }
      std::vector<int> outs;
      step(cur, outs);
      for (int o : outs)
        if (!after[o]) {
          after[o] = true;
          st2.push_back(o);
        }
    }
  }
  res.verdict = Tri::unknown;
  res.reason = "no all-fixed level found up to the depth bound";
  return res;
}

// Orbit partition of the vertex set under all states.
inline std::vector<int> orbit_relation(SelfSimilarAction const& a) {
  std::vector<int> parent(a.q.nv);
  for (int v = 0; v < a.q.nv; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int g = 0; g < a.ns; ++g)
    for (int v = 0; v < a.q.nv; ++v)
      parent[find(v)] = find(a.sigma_v[g][v]);
  std::vector<int> out(a.q.nv);
  for (int v = 0; v < a.q.nv; ++v) out[v] = find(v);
  return out;
}

// v << w iff v <= u ~ w for some u.
inline std::vector<std::vector<bool>> ll_relation(SelfSimilarAction const& a) {
  auto leq = reachability(a.q);
  auto orb = orbit_relation(a);
  std::vector<std::vector<bool>> ll(a.q.nv, std::vector<bool>(a.q.nv, false));
  for (int v = 0; v < a.q.nv; ++v)
    for (int w = 0; w < a.q.nv; ++w)
      for (int u = 0; u < a.q.nv; ++u)
        if (leq[v][u] && orb[u] == orb[w]) {
          ll[v][w] = true;
          break;
        }
  return ll;
}

// Cofinality in (Q^0, <<): with no sources all boundary paths are infinite,
// so the condition reduces to the simple cycles as for plain graphs.
inline Verdict is_cofinal_ss(SelfSimilarAction const& a) {
  auto ll = ll_relation(a);
  for (auto const& cyc : simple_cycles(a.q)) {
    auto vs = cycle_vertices(a.q, cyc);
    for (int v = 0; v < a.q.nv; ++v) {
      bool ok = false;
      for (int u : vs)
        if (ll[v][u]) {
          ok = true;
          break;
        }
      if (!ok) {
        std::vector<Arrow> w = {v};
        for (int u : vs) w.push_back(u);
        return no("vertex is not below any tail of a cycle path", w);
      }
    }
  }
  return yes("all infinite paths are cofinal");
}

// Are there infinitely many minimal strongly fixed paths for g?  Exact via
// the fixing automaton: a cycle of non-identity nodes that is reachable and
// still reaches a transition into the identity state yields unboundedly
// long minimal paths.
inline Tri finitely_many_minimal_fixed(SelfSimilarAction const& a, int g) {
  if (g == a.id_state) return Tri::yes;
  int nn = a.ns * a.q.nv;
  // fixing automaton restricted to non-identity states
  auto nexts = [&](int id, std::vector<int>& outs) {
    int h = id / a.q.nv, w = id % a.q.nv;
    for (int e = 0; e < a.q.ne(); ++e)
      if (a.q.erng[e] == w && a.sigma_e[h][e] == e)
        outs.push_back(detail_ss::node_id(a, a.restrict_[h][e], a.q.esrc[e]));
  };
  // nodes reachable from some start (g, v) without entering the identity
  std::vector<bool> seen(nn, false);
  std::vector<int> stack;
  for (int v = 0; v < a.q.nv; ++v) {
    int id = detail_ss::node_id(a, g, v);
    if (!seen[id]) {
      seen[id] = true;
      stack.push_back(id);
    }
  }
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    std::vector<int> outs;
    nexts(cur, outs);
    for (int o : outs) {
      if (o / a.q.nv == a.id_state) continue;  // minimal path completed
      if (!seen[o]) {
        seen[o] = true;
        stack.push_back(o);
      }
    }
  }
  // from each reachable node on a non-identity cycle, can the identity
  // still be entered?
  for (int id = 0; id < nn; ++id) {
    if (!seen[id] || id / a.q.nv == a.id_state) continue;
    // downstream of id within non-identity nodes, noting a cycle back to
    // id and any transition into the identity state
    std::vector<bool> vis(nn, false);
    std::vector<int> st = {id};
    bool on_cycle = false, can_finish = false;
    while (!st.empty()) {
      int cur = st.back();
      st.pop_back();
      std::vector<int> outs;
      nexts(cur, outs);
      for (int o : outs) {
        if (o / a.q.nv == a.id_state) {
          can_finish = true;
          continue;
        }
        if (o == id) on_cycle = true;
        if (!vis[o]) {
          vis[o] = true;
          st.push_back(o);
        }
      }
    }
    if (on_cycle && can_finish) return Tri::no;
  }
  return Tri::yes;
}

struct SelfSimilarVerdict {
  Verdict cofinal;
  Verdict cycles_have_entries;
  Tri fixing_implies_slack = Tri::yes;
  std::vector<int> slack_witness;  // (state, vertex) refuting or unknown
  Tri hausdorff = Tri::yes;        // finitely many minimal fixed paths
  int hausdorff_state = -1;
  std::string summary;
};

inline SelfSimilarVerdict verdict(SelfSimilarAction const& a, int depth = 10) {
  if (!singular_vertices(a.q).empty())
    throw std::invalid_argument("graph has a source vertex");
  SelfSimilarVerdict out;
  out.cofinal = is_cofinal_ss(a);
  out.cycles_have_entries = every_cycle_has_entry(a.q);
  for (int g = 0; g < a.ns && out.fixing_implies_slack == Tri::yes; ++g)
    for (int v = 0; v < a.q.nv; ++v) {
      if (!fixes_all_paths_at(a, g, v)) continue;
      auto sl = is_slack(a, g, v, depth);
      if (sl.verdict == Tri::yes) continue;
      out.fixing_implies_slack = sl.verdict;
      out.slack_witness = {g, v};
      break;
    }
  for (int g = 0; g < a.ns; ++g) {
    auto t = finitely_many_minimal_fixed(a, g);
    if (t != Tri::yes) {
      out.hausdorff = t;
      out.hausdorff_state = g;
      break;
    }
  }
  bool hyp = out.cofinal.value && out.cycles_have_entries.value &&
             out.fixing_implies_slack == Tri::yes;
  if (hyp)
    out.summary = "simple purely infinite (hypotheses established)";
  else if (!out.cofinal.value || !out.cycles_have_entries.value ||
           out.fixing_implies_slack == Tri::no)
    out.summary = "hypotheses refuted: simplicity not guaranteed";
  else
    out.summary = "undecided at this depth";
  return out;
}

}  // namespace groupalg

#endif  // GROUPALG_SELF_SIMILAR_HPP_
