#ifndef GROUPALG_RANDOM_GEN_HPP_
#define GROUPALG_RANDOM_GEN_HPP_

#include <random>
#include <type_traits>

#include "convolution.hpp"
#include "groupoid.hpp"

namespace groupalg {

using Rng = std::mt19937_64;

// Klein four-group: elements are bit pairs, product is xor.
inline std::vector<std::vector<int>> klein_table() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

// A random discrete groupoid together with the data needed to put
// structured cocycles on it: every finite discrete groupoid is a disjoint
// union over orbits of (pair groupoid on the orbit) x (isotropy group).
struct RandomGroupoid {
  FiniteGroupoid g;
  std::vector<int> orbit_of_arrow;
  std::vector<int> group_elt;    // index of the isotropy component
  std::vector<bool> orbit_klein; // orbit carries the Klein four-group
};

inline RandomGroupoid random_discrete_groupoid(Rng& rng, int max_units = 6,
                                               int max_arrows = 30) {
  std::uniform_int_distribution<int> unit_dist(1, max_units);
  int units_left = unit_dist(rng);
  RandomGroupoid out;
  out.g.n = 0;
  out.g.comp.clear();
  bool first = true;
  int orbit_id = 0;
  int arrows_used = 0;
  while (units_left > 0) {
    std::uniform_int_distribution<int> size_dist(1, units_left);
    int k = size_dist(rng);
    // isotropy choice constrained by the arrow budget
    std::vector<std::pair<std::vector<std::vector<int>>, bool>> choices;
    for (int m = 1; m <= 4; ++m)
      if (k * k * m + arrows_used <= max_arrows)
        choices.push_back({cyclic_group_table(m), false});
    if (k * k * 4 + arrows_used <= max_arrows)
      choices.push_back({klein_table(), true});
    if (choices.empty()) {
      k = 1;
      choices.push_back({cyclic_group_table(1), false});
      if (arrows_used + 1 > max_arrows) break;
    }
    std::uniform_int_distribution<size_t> ch(0, choices.size() - 1);
    auto const& [table, is_klein] = choices[ch(rng)];
    int m = static_cast<int>(table.size());
    FiniteGroupoid part = transitive_groupoid(k, table);
    int base = out.g.n;
    out.g = first ? part : disjoint_union(out.g, part);
    first = false;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int h = 0; h < m; ++h) {
          out.orbit_of_arrow.push_back(orbit_id);
          out.group_elt.push_back(h);
        }
    (void)base;
    out.orbit_klein.push_back(is_klein);
    arrows_used += k * k * m;
    units_left -= k;
    ++orbit_id;
  }
  if (out.g.n == 0) {
    out.g = pair_groupoid(1);
    out.orbit_of_arrow = {0};
    out.group_elt = {0};
    out.orbit_klein = {false};
  }
  return out;
}

// Cocycle = coboundary of a unimodular 1-chain (trivial on units) times,
// on Klein orbits, the nontrivial bilinear sign cocycle (-1)^{b(h) a(h')}.
// With signs_only, the 1-chain takes values in {+1, -1}.
template <class S>
TwoCocycle<S> random_cocycle(Rng& rng, RandomGroupoid const& rg,
                             bool signs_only = scalar_traits<S>::exact) {
  FiniteGroupoid const& g = rg.g;
  std::vector<S> chain(g.n, S{1});
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  std::bernoulli_distribution coin(0.5);
  for (Arrow a = 0; a < g.n; ++a) {
    if (g.unit[a]) continue;
    if constexpr (std::is_same_v<S, Cx>) {
      if (signs_only) {
        chain[a] = coin(rng) ? S{1} : S{-1};
      } else {
        double t = angle(rng);
        chain[a] = Cx(std::cos(t), std::sin(t));
      }
    } else {
      chain[a] = coin(rng) ? S{1} : S{-1};
    }
  }
  TwoCocycle<S> c;
  c.g = &g;
  c.values.assign(static_cast<size_t>(g.n) * g.n, S{1});
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b) {
      if (!g.composable(a, b)) continue;
      Arrow ab = g.compose(a, b);
      S v = chain[a] * chain[b] * scalar_traits<S>::conj(chain[ab]);
      if (rg.orbit_klein[rg.orbit_of_arrow[a]]) {
        int h = rg.group_elt[a], h2 = rg.group_elt[b];
        if (((h & 2) >> 1) * (h2 & 1)) v = S{-1} * v;
      }
      c.values[static_cast<size_t>(a) * g.n + b] = v;
    }
  return c;
}

template <class S>
ConvElement<S> random_element(Rng& rng, FiniteGroupoid const& g) {
  ConvElement<S> f(g);
  if constexpr (scalar_traits<S>::exact) {
    std::uniform_int_distribution<long long> num(-8, 8);
    std::uniform_int_distribution<long long> den(1, 6);
    for (Arrow a = 0; a < g.n; ++a) f[a] = S(num(rng), den(rng));
  } else if constexpr (std::is_same_v<S, Cx>) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (Arrow a = 0; a < g.n; ++a) f[a] = Cx(coef(rng), coef(rng));
  } else {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (Arrow a = 0; a < g.n; ++a) f[a] = coef(rng);
  }
  return f;
}

}  // namespace groupalg

#endif  // GROUPALG_RANDOM_GEN_HPP_
