#ifndef GROUPALG_PARTIAL_ACTION_HPP_
#define GROUPALG_PARTIAL_ACTION_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convolution.hpp"
#include "groupoid.hpp"

namespace groupalg {

// Partial action of a finite group on a finite set: for each group element t
// a partial injection theta[t] with domain X_{t^-1} (entries -1 = undefined).
struct PartialAction {
  int order = 0;                         // group order
  std::vector<std::vector<int>> gtable;  // group multiplication table
  int nx = 0;                            // size of the space X
  std::vector<std::vector<int>> theta;   // theta[t][x] in [0, nx) or -1
  std::vector<std::string> g_labels, x_labels;

  int gmul(int s, int t) const { return gtable[s][t]; }
  int gid() const {
    for (int e = 0; e < order; ++e) {
      bool ok = true;
      for (int a = 0; a < order; ++a)
        if (gmul(e, a) != a || gmul(a, e) != a) {
          ok = false;
          break;
        }
      if (ok) return e;
    }
    throw std::invalid_argument("group table has no identity");
  }
  int ginv(int t) const {
    int e = gid();
    for (int s = 0; s < order; ++s)
      if (gmul(s, t) == e && gmul(t, s) == e) return s;
    throw std::invalid_argument("group table has no inverse");
  }
  bool in_domain(int t, int x) const { return theta[t][x] >= 0; }
  // X_t = image of theta[t] = domain of theta[t^-1]
  ArrowSet image_set(int t) const {
    ArrowSet out;
    for (int x = 0; x < nx; ++x)
      if (theta[t][x] >= 0) out.push_back(theta[t][x]);
    return make_set(std::move(out));
  }
  ArrowSet domain_set(int t) const {
    ArrowSet out;
    for (int x = 0; x < nx; ++x)
      if (theta[t][x] >= 0) out.push_back(x);
    return out;
  }
};

inline ValidationReport validate_action(PartialAction const& pa) {
  ValidationReport rep;
  if (pa.order <= 0 || static_cast<int>(pa.theta.size()) != pa.order) {
    rep.add("theta must assign one partial map per group element");
    return rep;
  }
  int e = pa.gid();
  // group table sanity: associativity
  for (int a = 0; a < pa.order && rep.issues.size() < 64; ++a)
    for (int b = 0; b < pa.order; ++b)
      for (int c = 0; c < pa.order; ++c)
        if (pa.gmul(pa.gmul(a, b), c) != pa.gmul(a, pa.gmul(b, c)))
          rep.add("group multiplication not associative", {a, b, c});
  // theta_1 = id
  for (int x = 0; x < pa.nx; ++x)
    if (pa.theta[e][x] != x) rep.add("theta_1 is not the identity", {x});
  // injectivity and the inverse axiom theta_t^-1 = theta_{t^-1}
  for (int t = 0; t < pa.order; ++t) {
    std::vector<int> hit(pa.nx, -1);
    for (int x = 0; x < pa.nx; ++x) {
      int y = pa.theta[t][x];
      if (y < 0) continue;
      if (y >= pa.nx) {
        rep.add("theta value out of range", {t, x});
        continue;
      }
      if (hit[y] >= 0) rep.add("theta_t is not injective", {t, hit[y], x});
      hit[y] = x;
      int ti = pa.ginv(t);
      if (pa.theta[ti][y] != x)
        rep.add("theta_{t^-1} does not invert theta_t", {t, x});
    }
  }
  // theta_{st} extends theta_s . theta_t
  for (int s = 0; s < pa.order; ++s)
    for (int t = 0; t < pa.order; ++t) {
      int st = pa.gmul(s, t);
      for (int x = 0; x < pa.nx; ++x) {
        int y = pa.theta[t][x];
        if (y < 0) continue;
        int z = pa.theta[s][y];
        if (z < 0) continue;
        if (pa.theta[st][x] != z)
          rep.add("theta_{st} does not extend theta_s . theta_t", {s, t, x});
      }
    }
  return rep;
}

// Scalar 2-cocycle of the action: u(s,t) is a unimodular function on
// X_s intersect X_{st}; stored flat with default value 1 elsewhere.
template <class S>
struct ActionCocycle {
  int order = 0, nx = 0;
  std::vector<S> values;  // flat order*order*nx

  S const& at(int s, int t, int x) const {
    return values[(static_cast<size_t>(s) * order + t) * nx + x];
  }
  S& at(int s, int t, int x) {
    return values[(static_cast<size_t>(s) * order + t) * nx + x];
  }
  static ActionCocycle trivial_on(PartialAction const& pa) {
    ActionCocycle u;
    u.order = pa.order;
    u.nx = pa.nx;
    u.values.assign(static_cast<size_t>(pa.order) * pa.order * pa.nx, S{1});
    return u;
  }
};

template <class S>
ValidationReport validate_action_cocycle(PartialAction const& pa,
                                         ActionCocycle<S> const& u) {
  ValidationReport rep;
  int e = pa.gid();
  auto in_xs = [&](int s, int x) { return pa.in_domain(pa.ginv(s), x); };
  for (int s = 0; s < pa.order; ++s)
    for (int t = 0; t < pa.order; ++t)
      for (int x = 0; x < pa.nx; ++x) {
        if (!in_xs(s, x) || !in_xs(pa.gmul(s, t), x)) continue;
        using R = typename scalar_traits<S>::real;
        auto m = scalar_traits<S>::abs_sq(u.at(s, t, x));
        bool unimodular;
        if constexpr (scalar_traits<S>::exact)
          unimodular = (m == R{1});
        else
          unimodular = std::abs(m - R{1}) <= 1e-9;
        if (!unimodular) rep.add("cocycle value is not unimodular", {s, t, x});
      }
  for (int t = 0; t < pa.order; ++t)
    for (int x = 0; x < pa.nx; ++x) {
      if (in_xs(t, x) && !scalar_eq(u.at(e, t, x), S{1}))
        rep.add("u(1,t) != 1", {t, x});
      if (in_xs(t, x) && !scalar_eq(u.at(t, e, x), S{1}))
        rep.add("u(t,1) != 1", {t, x});
    }
  // pointwise cocycle identity: for x in X_{r^-1} ^ X_s ^ X_{st},
  //   u(s,t)(x) u(r,st)(theta_r x) = u(r,s)(theta_r x) u(rs,t)(theta_r x)
  for (int r = 0; r < pa.order; ++r)
    for (int s = 0; s < pa.order; ++s)
      for (int t = 0; t < pa.order; ++t) {
        int st = pa.gmul(s, t);
        int rs = pa.gmul(r, s);
        for (int x = 0; x < pa.nx; ++x) {
          if (!pa.in_domain(r, x) || !in_xs(s, x) || !in_xs(st, x)) continue;
          int y = pa.theta[r][x];
          if (!scalar_eq(u.at(s, t, x) * u.at(r, st, y),
                         u.at(r, s, y) * u.at(rs, t, y)))
            rep.add("action cocycle identity fails", {r, s, t, x});
        }
      }
  return rep;
}

// Transformation groupoid: arrows (t, x) with x in the domain of theta_t,
// r(t,x) = theta_t(x), d(t,x) = x, (s, theta_t(x)) (t, x) = (st, x).
struct TransformationGroupoid {
  FiniteGroupoid g;
  std::vector<std::pair<int, int>> arrow_pt;  // arrow -> (t, x)
  std::vector<std::vector<Arrow>> arrow_of;   // [t][x] -> arrow or -1
};

inline TransformationGroupoid transformation_groupoid(PartialAction const& pa) {
  TransformationGroupoid out;
  int e = pa.gid();
  out.arrow_of.assign(pa.order, std::vector<Arrow>(pa.nx, -1));
  for (int t = 0; t < pa.order; ++t)
    for (int x = 0; x < pa.nx; ++x) {
      if (!pa.in_domain(t, x)) continue;
      out.arrow_of[t][x] = static_cast<Arrow>(out.arrow_pt.size());
      out.arrow_pt.emplace_back(t, x);
    }
  int n = static_cast<int>(out.arrow_pt.size());
  FiniteGroupoid& g = out.g;
  g.n = n;
  g.unit.assign(n, false);
  g.range_map.resize(n);
  g.domain_map.resize(n);
  g.inverse_map.resize(n);
  g.comp.assign(static_cast<size_t>(n) * n, -1);
  g.labels.resize(n);
  for (Arrow a = 0; a < n; ++a) {
    auto [t, x] = out.arrow_pt[a];
    g.unit[a] = (t == e);
    g.domain_map[a] = out.arrow_of[e][x];
    g.range_map[a] = out.arrow_of[e][pa.theta[t][x]];
    g.inverse_map[a] = out.arrow_of[pa.ginv(t)][pa.theta[t][x]];
    std::string gl = pa.g_labels.empty() ? "t" + std::to_string(t)
                                         : pa.g_labels[t];
    std::string xl = pa.x_labels.empty() ? "x" + std::to_string(x)
                                         : pa.x_labels[x];
    g.labels[a] = "(" + gl + "," + xl + ")";
  }
  for (Arrow a = 0; a < n; ++a)
    for (Arrow b = 0; b < n; ++b) {
      if (g.domain(a) != g.range(b)) continue;
      auto [s, y] = out.arrow_pt[a];
      auto [t, x] = out.arrow_pt[b];
      g.comp[static_cast<size_t>(a) * n + b] = out.arrow_of[pa.gmul(s, t)][x];
    }
  return out;
}

// sigma_u((s, theta_t(x)), (t, x)) = u(s,t)(theta_{st}(x)).
template <class S>
TwoCocycle<S> induced_cocycle(PartialAction const& pa,
                              ActionCocycle<S> const& u,
                              TransformationGroupoid const& tg) {
  TwoCocycle<S> sigma = TwoCocycle<S>::trivial_on(tg.g);
  for (Arrow a = 0; a < tg.g.n; ++a)
    for (Arrow b = 0; b < tg.g.n; ++b) {
      if (!tg.g.composable(a, b)) continue;
      auto [s, y] = tg.arrow_pt[a];
      auto [t, x] = tg.arrow_pt[b];
      int st = pa.gmul(s, t);
      sigma.values[static_cast<size_t>(a) * tg.g.n + b] =
          u.at(s, t, pa.theta[st][x]);
    }
  return sigma;
}

// Topologically free: for discrete finite X, the fixed set of theta_t must
// be empty for every t != 1.
inline Verdict is_topologically_free_pa(PartialAction const& pa) {
  int e = pa.gid();
  for (int t = 0; t < pa.order; ++t) {
    if (t == e) continue;
    for (int x = 0; x < pa.nx; ++x)
      if (pa.theta[t][x] == x)
        return no("theta_t has a fixed point for t != 1", {t, x});
  }
  return yes("no nontrivial theta_t has a fixed point");
}

// Orbits of the equivalence generated by x ~ theta_t(x).
inline std::vector<ArrowSet> orbits_pa(PartialAction const& pa) {
  std::vector<int> parent(pa.nx);
  for (int x = 0; x < pa.nx; ++x) parent[x] = x;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int t = 0; t < pa.order; ++t)
    for (int x = 0; x < pa.nx; ++x)
      if (pa.theta[t][x] >= 0) parent[find(x)] = find(pa.theta[t][x]);
  std::vector<ArrowSet> out;
  std::vector<int> root_idx(pa.nx, -1);
  for (int x = 0; x < pa.nx; ++x) {
    int r = find(x);
    if (root_idx[r] < 0) {
      root_idx[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[root_idx[r]].push_back(x);
  }
  return out;
}

inline Verdict is_minimal_pa(PartialAction const& pa) {
  auto orb = orbits_pa(pa);
  if (orb.size() > 1)
    return no("a proper orbit is an invariant open set", orb[0]);
  return yes("the action has a single orbit");
}

// n-filling: the full verdict needs X compact and infinite, which fails at
// finite size; the cover condition is evaluated on its own.  Monotonicity
// in U reduces the check to singletons.
inline NFillingResult is_n_filling_pa(PartialAction const& pa, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  NFillingResult res;
  res.unit_count = pa.nx;
  res.full = no("the space is compact but finite; the definition needs it "
                "infinite");
  if (pa.nx > n) {
    // each theta_{t_i} applied to a singleton yields at most one point
    res.cover_condition =
        no("a singleton U needs at least |X| translates", {});
    return res;
  }
  for (int x = 0; x < pa.nx; ++x) {
    ArrowSet reach;
    for (int t = 0; t < pa.order; ++t)
      if (pa.theta[t][x] >= 0) reach.push_back(pa.theta[t][x]);
    reach = make_set(std::move(reach));
    if (static_cast<int>(reach.size()) != pa.nx) {
      res.cover_condition = no("translates of a singleton miss the space",
                               {x});
      return res;
    }
  }
  res.cover_condition = yes("translates of every singleton cover the space");
  return res;
}

// Local boundary actions need theta_t(closure(V)) strictly inside V; with
// X finite and theta_t injective the image has |V| points, so the strict
// inclusion is impossible.  The certificate records one failed attempt.
struct LocalBoundaryCertificate {
  ArrowSet tried_u;  // the open set U that was examined
  ArrowSet v;        // the candidate V inside U (closed = open here)
  int t = -1;        // the group element tried
  ArrowSet image;    // theta_t(closure(V))
  std::string argument;
};

struct LocalBoundaryResult {
  Verdict verdict;
  LocalBoundaryCertificate certificate;
};

inline bool check_local_boundary_certificate(
    PartialAction const& pa, LocalBoundaryCertificate const& c) {
  if (c.tried_u.empty() || c.v.empty()) return false;
  if (!set_subset(c.v, c.tried_u)) return false;
  if (c.t < 0 || c.t >= pa.order) return false;
  ArrowSet img;
  for (int x : c.v) {
    if (!pa.in_domain(c.t, x)) return false;  // closure(V) must lie in X_t
    img.push_back(pa.theta[c.t][x]);
  }
  img = make_set(std::move(img));
  if (img != c.image) return false;
  // injectivity: the image is as large as V, so theta_t(V) properly inside
  // V is impossible
  if (img.size() != c.v.size()) return false;
  return !(set_subset(img, c.v) && img.size() < c.v.size());
}

inline LocalBoundaryResult is_local_boundary_pa(PartialAction const& pa) {
  LocalBoundaryResult res;
  if (pa.nx == 0) {
    res.verdict = no("the space is empty");
    return res;
  }
  int e = pa.gid();
  // canonical failed attempt: U = X, V = X, t = 1
  LocalBoundaryCertificate& c = res.certificate;
  for (int x = 0; x < pa.nx; ++x) c.tried_u.push_back(x);
  c.v = c.tried_u;
  c.t = e;
  c.image = c.tried_u;
  c.argument =
      "theta_t is injective, so theta_t(closure(V)) has |V| points and "
      "cannot be a proper subset of V";
  res.verdict = no(c.argument, {});
  return res;
}

}  // namespace groupalg

#endif  // GROUPALG_PARTIAL_ACTION_HPP_
