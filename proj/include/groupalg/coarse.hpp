#ifndef GROUPALG_COARSE_HPP_
#define GROUPALG_COARSE_HPP_

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "convolution.hpp"
#include "matrix.hpp"

namespace groupalg {

// A relation on the point set, stored as a sorted set of (x, y) pairs with
// the pair-groupoid convention: (x, y) has range x and domain y.
using Entourage = std::set<std::pair<int, int>>;

inline Entourage inverse_of(Entourage const& e) {
  Entourage out;
  for (auto const& [x, y] : e) out.insert({y, x});
  return out;
}

// Pair-groupoid composition: (x, y)(y, z) = (x, z).
inline Entourage compose_ent(Entourage const& a, Entourage const& b) {
  Entourage out;
  for (auto const& [x, y] : a)
    for (auto const& [y2, z] : b)
      if (y == y2) out.insert({x, z});
  return out;
}

inline Entourage diagonal_ent(int nx) {
  Entourage out;
  for (int x = 0; x < nx; ++x) out.insert({x, x});
  return out;
}

inline Entourage full_ent(int nx) {
  Entourage out;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y) out.insert({x, y});
  return out;
}

// A finite coarse space.  The entourage family is closed under inverses,
// products, unions and subsets; on a finite point set the union and subset
// axioms make the family the full power set of its largest member, so the
// whole structure is the carrier relation and membership is a subset test.
struct CoarseSpace {
  int nx = 0;
  Entourage carrier;

  bool contains(Entourage const& e) const {
    return std::includes(carrier.begin(), carrier.end(), e.begin(), e.end());
  }
  bool unital() const {
    for (int x = 0; x < nx; ++x)
      if (!carrier.count({x, x})) return false;
    return true;
  }
};

// Close the generators under inverses and products.
inline CoarseSpace coarse_space(int nx, std::vector<Entourage> const& gens) {
  if (nx < 1) throw std::invalid_argument("point set must be nonempty");
  CoarseSpace cs;
  cs.nx = nx;
  for (auto const& g : gens)
    for (auto const& [x, y] : g) {
      if (x < 0 || x >= nx || y < 0 || y >= nx)
        throw std::invalid_argument("generator pair out of range");
      cs.carrier.insert({x, y});
      cs.carrier.insert({y, x});
    }
  bool grew = true;
  while (grew) {
    grew = false;
    Entourage prod = compose_ent(cs.carrier, cs.carrier);
    for (auto const& q : prod)
      if (cs.carrier.insert(q).second) grew = true;
  }
  return cs;
}

// n(E) = max over points of the number of partners in either coordinate.
inline int n_of(CoarseSpace const& cs, Entourage const& e) {
  if (!cs.contains(e)) throw std::invalid_argument("not an entourage");
  int best = 0;
  for (int x = 0; x < cs.nx; ++x) {
    std::set<int> partners;
    for (auto const& [a, b] : e) {
      if (a == x) partners.insert(b);
      if (b == x) partners.insert(a);
    }
    best = std::max(best, static_cast<int>(partners.size()));
  }
  return best;
}

inline bool is_bisection_ent(Entourage const& e) {
  std::set<int> rs, ds;
  for (auto const& [x, y] : e) {
    if (!rs.insert(x).second || !ds.insert(y).second) return false;
  }
  return true;
}

// Split an entourage into pairwise disjoint bisection entourages by proper
// edge coloring of its bipartite graph (rows vs columns).  Alternating-
// chain flips keep the color count at the maximum degree, which is at most
// n(E) <= n(E)^2 + 1; the full relation on n points yields n permutations.
inline std::vector<Entourage> decompose_into_bisections(CoarseSpace const& cs,
                                                        Entourage const& e) {
  if (!cs.contains(e)) throw std::invalid_argument("not an entourage");
  int delta = 0;
  {
    std::vector<int> rdeg(cs.nx, 0), cdeg(cs.nx, 0);
    for (auto const& [x, y] : e)
      delta = std::max({delta, ++rdeg[x], ++cdeg[y]});
  }
  // partner per (vertex, color), or -1
  std::vector<std::vector<int>> row_col(cs.nx, std::vector<int>(delta, -1));
  std::vector<std::vector<int>> col_row(cs.nx, std::vector<int>(delta, -1));
  auto free_color = [delta](std::vector<int> const& used) {
    for (int c = 0; c < delta; ++c)
      if (used[c] < 0) return c;
    throw std::logic_error("no free color below the maximum degree");
  };
  for (auto const& [x, y] : e) {
    int a = free_color(row_col[x]);
    int b = free_color(col_row[y]);
    if (a != b) {
      // free color a at column y: swap a and b along the alternating chain
      // starting with the a-colored edge at y
      struct Link {
        int row, col, color;
      };
      std::vector<Link> chain;
      int col = y;
      while (true) {
        int row = col_row[col][a];
        if (row < 0) break;
        chain.push_back({row, col, a});
        int ncol = row_col[row][b];
        if (ncol < 0) break;
        chain.push_back({row, ncol, b});
        col = ncol;
      }
      for (auto const& l : chain) {
        row_col[l.row][l.color] = -1;
        col_row[l.col][l.color] = -1;
      }
      for (auto const& l : chain) {
        int o = a + b - l.color;
        row_col[l.row][o] = l.col;
        col_row[l.col][o] = l.row;
      }
    }
    row_col[x][a] = y;
    col_row[y][a] = x;
  }
  std::vector<Entourage> pieces(delta);
  for (int x = 0; x < cs.nx; ++x)
    for (int c = 0; c < delta; ++c)
      if (row_col[x][c] >= 0) pieces[c].insert({x, row_col[x][c]});
  return pieces;
}

// An X-by-X matrix of k-by-k scalar blocks whose support is an entourage.
struct ControlledMatrix {
  int nx = 0, k = 0;
  std::vector<Matrix<Cx>> blocks;  // row-major, nx * nx blocks

  ControlledMatrix() = default;
  ControlledMatrix(int nx_, int k_)
      : nx(nx_), k(k_),
        blocks(static_cast<size_t>(nx_) * nx_, Matrix<Cx>(k_, k_)) {}

  Matrix<Cx>& block(int x, int y) {
    return blocks[static_cast<size_t>(x) * nx + y];
  }
  Matrix<Cx> const& block(int x, int y) const {
    return blocks[static_cast<size_t>(x) * nx + y];
  }

  Entourage support() const {
    Entourage out;
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < nx; ++y) {
        bool nonzero = false;
        for (Cx const& c : block(x, y).data)
          if (c != Cx{}) {
            nonzero = true;
            break;
          }
        if (nonzero) out.insert({x, y});
      }
    return out;
  }

  // Full (nx * k)-dimensional matrix.
  Matrix<Cx> assemble() const {
    Matrix<Cx> m(nx * k, nx * k);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < nx; ++y)
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            m(x * k + i, y * k + j) = block(x, y)(i, j);
    return m;
  }
};

inline ValidationReport validate_controlled(CoarseSpace const& cs,
                                            ControlledMatrix const& t) {
  ValidationReport rep;
  if (t.nx != cs.nx) rep.add("matrix size differs from the point set", {});
  for (auto const& b : t.blocks)
    if (b.rows != t.k || b.cols != t.k)
      rep.add("block has the wrong shape", {});
  if (rep.ok() && !cs.contains(t.support()))
    rep.add("support is not an entourage", {});
  return rep;
}

inline ControlledMatrix multiply(ControlledMatrix const& a,
                                 ControlledMatrix const& b) {
  if (a.nx != b.nx || a.k != b.k)
    throw std::invalid_argument("controlled matrix shape mismatch");
  ControlledMatrix out(a.nx, a.k);
  for (int x = 0; x < a.nx; ++x)
    for (int y = 0; y < a.nx; ++y)
      for (int z = 0; z < a.nx; ++z)
        out.block(x, z) = out.block(x, z) + a.block(x, y) * b.block(y, z);
  return out;
}

// A diagonal coefficient function times the indicator of a bisection
// entourage: block f(x) at each (x, y) in e.
inline ControlledMatrix basic_element(int nx,
                                      std::vector<Matrix<Cx>> const& f,
                                      Entourage const& e) {
  if (static_cast<int>(f.size()) != nx)
    throw std::invalid_argument("coefficient function size mismatch");
  if (!is_bisection_ent(e))
    throw std::invalid_argument("not a bisection entourage");
  int k = nx > 0 ? f[0].rows : 0;
  ControlledMatrix out(nx, k);
  for (auto const& [x, y] : e) out.block(x, y) = f[x];
  return out;
}

struct NormBoundResult {
  double exact = 0.0;
  double bound = 0.0;
};

// Exact operator p-norm of the assembled matrix against the decomposition
// bound sup-block-norm * (n(supp)^2 + 1).
inline NormBoundResult matrix_rep_norm_bound(CoarseSpace const& cs,
                                             ControlledMatrix const& t,
                                             double p) {
  auto rep = validate_controlled(cs, t);
  if (!rep.ok()) throw std::invalid_argument("invalid controlled matrix");
  NormBoundResult res;
  res.exact = operator_norm(t.assemble(), p);
  double sup = 0.0;
  for (auto const& b : t.blocks) sup = std::max(sup, operator_norm(b, p));
  int n = n_of(cs, t.support());
  res.bound = sup * (static_cast<double>(n) * n + 1);
  return res;
}

// Smallest ideal carrier containing the given pair: closed under inverse
// and absorption by the full carrier on both sides.  Every ideal of the
// coarse space is a union of these.
inline Entourage principal_ideal(CoarseSpace const& cs,
                                 std::pair<int, int> q) {
  if (!cs.carrier.count(q)) throw std::invalid_argument("not an entourage pair");
  Entourage out = {q};
  bool grew = true;
  while (grew) {
    grew = false;
    Entourage add;
    for (auto const& [x, y] : out) {
      add.insert({y, x});
      for (auto const& [a, b] : cs.carrier) {
        if (b == x) add.insert({a, y});  // left absorption
        if (a == y) add.insert({x, b});  // right absorption
      }
    }
    for (auto const& p2 : add)
      if (out.insert(p2).second) grew = true;
  }
  return out;
}

// Distinct principal ideal carriers, one per generating orbit.
inline std::vector<Entourage> coarse_ideals(CoarseSpace const& cs) {
  std::set<Entourage> seen;
  for (auto const& q : cs.carrier) seen.insert(principal_ideal(cs, q));
  return {seen.begin(), seen.end()};
}

// Simple iff every nonzero ideal is everything, i.e. every principal ideal
// equals the carrier.
inline Verdict is_simple_coarse(CoarseSpace const& cs) {
  for (auto const& q : cs.carrier)
    if (principal_ideal(cs, q) != cs.carrier)
      return no("pair generates a proper ideal", {q.first, q.second});
  return yes("every pair generates the whole coarse structure");
}

}  // namespace groupalg

#endif  // GROUPALG_COARSE_HPP_
