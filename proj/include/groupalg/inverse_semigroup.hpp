#ifndef GROUPALG_INVERSE_SEMIGROUP_HPP_
#define GROUPALG_INVERSE_SEMIGROUP_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupoid.hpp"

namespace groupalg {

// Finite inverse semigroup with zero, given by a multiplication table.
struct FiniteInverseSemigroup {
  int m = 0;
  std::vector<int> table;  // flat m*m
  int zero = -1;
  std::vector<int> star;        // generalized inverses (filled by finalize)
  std::vector<int> idempotents; // sorted, including zero
  std::vector<std::string> labels;

  int mul(int a, int b) const { return table[static_cast<size_t>(a) * m + b]; }
  bool is_idempotent(int x) const { return mul(x, x) == x; }
  // natural order: a <= b iff a = b a* a
  bool leq(int a, int b) const { return mul(b, mul(star[a], a)) == a; }

  std::vector<int> nonzero_idempotents() const {
    std::vector<int> out;
    for (int e : idempotents)
      if (e != zero) out.push_back(e);
    return out;
  }

  // fill in star and idempotents; throws when inverses are missing
  void finalize() {
    star.assign(m, -1);
    idempotents.clear();
    for (int s = 0; s < m; ++s) {
      for (int t = 0; t < m; ++t)
        if (mul(mul(s, t), s) == s && mul(mul(t, s), t) == t) {
          if (star[s] >= 0 && star[s] != t)
            throw std::invalid_argument("generalized inverse not unique");
          star[s] = t;
        }
      if (star[s] < 0)
        throw std::invalid_argument("element has no generalized inverse");
    }
    for (int x = 0; x < m; ++x)
      if (is_idempotent(x)) idempotents.push_back(x);
    if (labels.empty()) {
      labels.resize(m);
      for (int x = 0; x < m; ++x) labels[x] = "s" + std::to_string(x);
    }
  }
};

inline ValidationReport validate_semigroup(FiniteInverseSemigroup const& s) {
  ValidationReport rep;
  for (int a = 0; a < s.m && rep.issues.size() < 64; ++a)
    for (int b = 0; b < s.m; ++b)
      for (int c = 0; c < s.m; ++c)
        if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)))
          rep.add("multiplication not associative", {a, b, c});
  if (s.zero < 0 || s.zero >= s.m) {
    rep.add("zero element missing");
    return rep;
  }
  for (int a = 0; a < s.m; ++a)
    if (s.mul(a, s.zero) != s.zero || s.mul(s.zero, a) != s.zero)
      rep.add("zero does not annihilate", {a});
  // inverses: existence and uniqueness
  for (int a = 0; a < s.m; ++a) {
    int found = -1, count = 0;
    for (int b = 0; b < s.m; ++b)
      if (s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b) {
        found = b;
        ++count;
      }
    if (count == 0) rep.add("no generalized inverse", {a});
    if (count > 1) rep.add("generalized inverse not unique", {a, found});
  }
  for (int a = 0; a < s.m; ++a)
    for (int b = 0; b < s.m; ++b)
      if (s.is_idempotent(a) && s.is_idempotent(b) &&
          s.mul(a, b) != s.mul(b, a))
        rep.add("idempotents do not commute", {a, b});
  return rep;
}

// F covers e: every non-zero idempotent z <= e meets some f in F.
inline bool is_cover(FiniteInverseSemigroup const& s,
                     std::vector<int> const& f_set, int e) {
  for (int z : s.nonzero_idempotents()) {
    if (!s.leq(z, e)) continue;
    bool meets = false;
    for (int f : f_set)
      if (s.mul(z, f) != s.zero) {
        meets = true;
        break;
      }
    if (!meets) return false;
  }
  return true;
}

// Finite filters on E \ {0} are exactly the principal up-sets of nonzero
// idempotents; a filter is stored by its minimum.
struct Filter {
  int min_idem = -1;
  bool operator==(Filter const&) const = default;
  auto operator<=>(Filter const&) const = default;
};

inline bool filter_contains(FiniteInverseSemigroup const& s, Filter phi,
                            int e) {
  return s.is_idempotent(e) && e != s.zero && s.leq(phi.min_idem, e);
}

inline std::vector<Filter> all_filters(FiniteInverseSemigroup const& s) {
  if (static_cast<int>(s.nonzero_idempotents().size()) > 20)
    throw std::runtime_error("idempotent semilattice too large (cap 20)");
  std::vector<Filter> out;
  for (int e : s.nonzero_idempotents()) out.push_back({e});
  return out;
}

inline bool is_minimal_idempotent(FiniteInverseSemigroup const& s, int e) {
  if (e == s.zero || !s.is_idempotent(e)) return false;
  for (int f : s.nonzero_idempotents())
    if (f != e && s.leq(f, e)) return false;
  return true;
}

inline std::vector<Filter> ultrafilters(FiniteInverseSemigroup const& s) {
  std::vector<Filter> out;
  for (int e : s.nonzero_idempotents())
    if (is_minimal_idempotent(s, e)) out.push_back({e});
  return out;
}

// Tight filters by the verbatim definition: phi meets every cover of each
// of its members.  Covers are enumerated over subsets of {f <= e}.
inline std::vector<Filter> tight_filters(FiniteInverseSemigroup const& s) {
  std::vector<Filter> out;
  for (Filter phi : all_filters(s)) {
    bool tight = true;
    for (int e : s.nonzero_idempotents()) {
      if (!filter_contains(s, phi, e)) continue;
      std::vector<int> below;
      for (int f : s.nonzero_idempotents())
        if (s.leq(f, e)) below.push_back(f);
      if (below.size() > 20)
        throw std::runtime_error("cover enumeration too large");
      for (uint32_t mask = 0; mask < (1u << below.size()) && tight; ++mask) {
        std::vector<int> f_set;
        for (size_t i = 0; i < below.size(); ++i)
          if (mask & (1u << i)) f_set.push_back(below[i]);
        if (!is_cover(s, f_set, e)) continue;
        bool meets = false;
        for (int f : f_set)
          if (filter_contains(s, phi, f)) {
            meets = true;
            break;
          }
        if (!meets) tight = false;
      }
      if (!tight) break;
    }
    if (tight) out.push_back(phi);
  }
  return out;
}

// Z_e: tight filters containing e.
inline std::vector<Filter> z_set(FiniteInverseSemigroup const& s, int e) {
  std::vector<Filter> out;
  for (Filter phi : tight_filters(s))
    if (filter_contains(s, phi, e)) out.push_back(phi);
  return out;
}

// Canonical action h_t on tight filters: h_t(phi) = {e : t* e t in phi},
// defined for phi in Z_{t*t}; on principal filters h_t(up(m)) = up(tmt*).
inline std::optional<Filter> act(FiniteInverseSemigroup const& s, int t,
                                 Filter phi) {
  int tt = s.mul(s.star[t], t);
  if (!filter_contains(s, phi, tt)) return std::nullopt;
  int image_min = s.mul(s.mul(t, phi.min_idem), s.star[t]);
  return Filter{image_min};
}

// ---------------------------------------------------------------------------
// Tight groupoid.  Arrows are germs [t, up(m)] with m a minimal nonzero
// idempotent below t*t; the germ is determined by b = t m, and the map
// b -> [b, up(b*b)] identifies arrows with the nonzero elements b whose
// domain idempotent b*b is minimal.

struct TightGroupoid {
  FiniteGroupoid g;
  std::vector<int> arrow_elt;        // arrow id -> semigroup element b
  std::map<int, Arrow> arrow_of_elt; // inverse map
};

inline TightGroupoid tight_groupoid(FiniteInverseSemigroup const& s) {
  TightGroupoid out;
  for (int b = 0; b < s.m; ++b) {
    if (b == s.zero) continue;
    if (!is_minimal_idempotent(s, s.mul(s.star[b], b))) continue;
    out.arrow_of_elt[b] = static_cast<Arrow>(out.arrow_elt.size());
    out.arrow_elt.push_back(b);
  }
  int n = static_cast<int>(out.arrow_elt.size());
  FiniteGroupoid& g = out.g;
  g.n = n;
  g.unit.assign(n, false);
  g.range_map.resize(n);
  g.domain_map.resize(n);
  g.inverse_map.resize(n);
  g.comp.assign(static_cast<size_t>(n) * n, -1);
  g.labels.resize(n);
  for (Arrow a = 0; a < n; ++a) {
    int b = out.arrow_elt[a];
    g.unit[a] = s.is_idempotent(b);
    g.domain_map[a] = out.arrow_of_elt.at(s.mul(s.star[b], b));
    g.range_map[a] = out.arrow_of_elt.at(s.mul(b, s.star[b]));
    g.inverse_map[a] = out.arrow_of_elt.at(s.star[b]);
    g.labels[a] = s.labels[b];
  }
  for (Arrow a = 0; a < n; ++a)
    for (Arrow b2 = 0; b2 < n; ++b2) {
      if (g.domain(a) != g.range(b2)) continue;
      int prod = s.mul(out.arrow_elt[a], out.arrow_elt[b2]);
      g.comp[static_cast<size_t>(a) * n + b2] = out.arrow_of_elt.at(prod);
    }
  // topology basis Theta(t, e) = {germ(t, m) : m <= e}, 0 != e <= t*t
  TopologyBasis basis;
  std::vector<ArrowSet> seen;
  for (int t = 0; t < s.m; ++t) {
    if (t == s.zero) continue;
    int tt = s.mul(s.star[t], t);
    for (int e : s.nonzero_idempotents()) {
      if (!s.leq(e, tt)) continue;
      ArrowSet theta;
      for (int mm : s.nonzero_idempotents()) {
        if (!is_minimal_idempotent(s, mm) || !s.leq(mm, e)) continue;
        theta.push_back(out.arrow_of_elt.at(s.mul(t, mm)));
      }
      if (!theta.empty()) basis.sets.push_back(make_set(std::move(theta)));
    }
  }
  std::sort(basis.sets.begin(), basis.sets.end());
  basis.sets.erase(std::unique(basis.sets.begin(), basis.sets.end()),
                   basis.sets.end());
  g.topology = std::move(basis);
  return out;
}

// ---------------------------------------------------------------------------
// Property checkers on S itself

// e is fixed by t when f t* f != 0 for every nonzero idempotent f <= e.
inline bool is_fixed(FiniteInverseSemigroup const& s, int e, int t) {
  for (int f : s.nonzero_idempotents())
    if (s.leq(f, e) && s.mul(s.mul(f, s.star[t]), f) == s.zero) return false;
  return true;
}

// trivially fixed elements F_t = {e in E : e <= t}
inline std::vector<int> trivially_fixed(FiniteInverseSemigroup const& s,
                                        int t) {
  std::vector<int> out;
  for (int e : s.nonzero_idempotents())
    if (s.leq(e, t)) out.push_back(e);
  return out;
}

// Finite S is always closed: F = F_t is finite and covers each e in F_t.
inline Verdict is_closed_s(FiniteInverseSemigroup const& s) {
  for (int t = 0; t < s.m; ++t) {
    auto ft = trivially_fixed(s, t);
    for (int e : ft)
      if (!is_cover(s, ft, e))
        return no("F_t fails to cover one of its members", {t, e});
  }
  return yes("F_t is a finite cover of itself for every t");
}

inline Verdict is_topologically_free_s(FiniteInverseSemigroup const& s) {
  for (int t = 0; t < s.m; ++t) {
    if (t == s.zero) continue;
    auto ft = trivially_fixed(s, t);
    for (int e : s.nonzero_idempotents()) {
      if (!is_fixed(s, e, t)) continue;
      bool ok = false;
      for (int f : ft)
        if (s.mul(f, e) != s.zero) {
          ok = true;
          break;
        }
      if (!ok) return no("fixed idempotent meets no trivially fixed one",
                         {t, e});
    }
  }
  return yes("every fixed idempotent meets F_t");
}

inline Verdict is_minimal_s(FiniteInverseSemigroup const& s) {
  for (int e : s.nonzero_idempotents())
    for (int f : s.nonzero_idempotents()) {
      std::vector<int> conj;
      for (int t = 0; t < s.m; ++t) {
        int c = s.mul(s.mul(t, f), s.star[t]);
        if (c != s.zero) conj.push_back(c);
      }
      if (!is_cover(s, conj, e))
        return no("no conjugate family of f covers e", {e, f});
    }
  return yes("conjugates of every idempotent cover every idempotent");
}

inline Verdict is_locally_contracting_s(FiniteInverseSemigroup const& s) {
  auto nz = s.nonzero_idempotents();
  for (int e : nz) {
    bool found_se = false;
    for (int ss = 0; ss < s.m && !found_se; ++ss) {
      if (ss == s.zero) continue;
      int dom = s.mul(e, s.mul(s.star[ss], ss));
      std::vector<int> below;
      for (int f : nz)
        if (s.leq(f, dom)) below.push_back(f);
      if (below.empty() || below.size() > 16) continue;
      for (uint32_t mask = 1; mask < (1u << below.size()) && !found_se;
           ++mask) {
        std::vector<int> f_set;
        for (size_t i = 0; i < below.size(); ++i)
          if (mask & (1u << i)) f_set.push_back(below[i]);
        // every f in F must be covered at s f s*, and a distinguished f0
        // must be avoided by the image: f0 s f = 0 for all f in F
        bool all_cover = true;
        for (int f : f_set)
          if (!is_cover(s, f_set, s.mul(s.mul(ss, f), s.star[ss]))) {
            all_cover = false;
            break;
          }
        if (!all_cover) continue;
        for (int f0 : f_set) {
          bool ok = true;
          for (int f : f_set)
            if (s.mul(s.mul(f0, ss), f) != s.zero) {
              ok = false;
              break;
            }
          if (ok) {
            found_se = true;
            break;
          }
        }
      }
    }
    if (!found_se)
      return no("no contracting pair (s, F) exists for e", {e});
  }
  return yes("every nonzero idempotent admits a contracting pair");
}

// ---------------------------------------------------------------------------
// Builders

// Symmetric inverse monoid I_n: all partial injective maps on n points,
// composed right-to-left; the empty map is the zero.
inline FiniteInverseSemigroup symmetric_inverse_monoid(int n) {
  // enumerate partial injections as image vectors with -1 = undefined
  std::vector<std::vector<int>> maps;
  std::vector<int> cur(n, -1);
  std::function<void(int, int)> rec = [&](int pos, int used_mask) {
    if (pos == n) {
      maps.push_back(cur);
      return;
    }
    cur[pos] = -1;
    rec(pos + 1, used_mask);
    for (int v = 0; v < n; ++v) {
      if (used_mask & (1 << v)) continue;
      cur[pos] = v;
      rec(pos + 1, used_mask | (1 << v));
    }
    cur[pos] = -1;
  };
  rec(0, 0);
  std::sort(maps.begin(), maps.end());
  FiniteInverseSemigroup s;
  s.m = static_cast<int>(maps.size());
  s.table.resize(static_cast<size_t>(s.m) * s.m);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < s.m; ++i) index[maps[i]] = i;
  auto compose = [&](std::vector<int> const& a, std::vector<int> const& b) {
    std::vector<int> out(n, -1);
    for (int x = 0; x < n; ++x)
      if (b[x] >= 0 && a[b[x]] >= 0) out[x] = a[b[x]];
    return out;
  };
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < s.m; ++j)
      s.table[static_cast<size_t>(i) * s.m + j] =
          index.at(compose(maps[i], maps[j]));
  s.zero = index.at(std::vector<int>(n, -1));
  s.labels.resize(s.m);
  for (int i = 0; i < s.m; ++i) {
    std::string l = "[";
    for (int x = 0; x < n; ++x)
      l += (maps[i][x] < 0 ? "." : std::to_string(maps[i][x]));
    s.labels[i] = l + "]";
  }
  s.finalize();
  return s;
}

// Closure of a generator set (plus the zero) under product and inverse,
// returned as an inverse semigroup in its own right.  The returned
// element_of maps new indices back to parent indices.
struct Subsemigroup {
  FiniteInverseSemigroup s;
  std::vector<int> element_of;
};

inline Subsemigroup subsemigroup_closure(FiniteInverseSemigroup const& parent,
                                         std::vector<int> gens) {
  std::vector<int> elems = {parent.zero};
  for (int g : gens)
    if (std::find(elems.begin(), elems.end(), g) == elems.end())
      elems.push_back(g);
  bool changed = true;
  while (changed) {
    changed = false;
    size_t cur_size = elems.size();
    for (size_t i = 0; i < cur_size; ++i) {
      int st = parent.star[elems[i]];
      if (std::find(elems.begin(), elems.end(), st) == elems.end()) {
        elems.push_back(st);
        changed = true;
      }
      for (size_t j = 0; j < cur_size; ++j) {
        int p = parent.mul(elems[i], elems[j]);
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
          elems.push_back(p);
          changed = true;
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  Subsemigroup out;
  out.element_of = elems;
  std::map<int, int> idx;
  for (size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = (int)i;
  out.s.m = static_cast<int>(elems.size());
  out.s.table.resize(static_cast<size_t>(out.s.m) * out.s.m);
  for (int i = 0; i < out.s.m; ++i)
    for (int j = 0; j < out.s.m; ++j)
      out.s.table[static_cast<size_t>(i) * out.s.m + j] =
          idx.at(parent.mul(elems[i], elems[j]));
  out.s.zero = idx.at(parent.zero);
  out.s.labels.resize(out.s.m);
  for (int i = 0; i < out.s.m; ++i) out.s.labels[i] = parent.labels[elems[i]];
  out.s.finalize();
  return out;
}

}  // namespace groupalg

#endif  // GROUPALG_INVERSE_SEMIGROUP_HPP_
