#ifndef GROUPALG_CONVOLUTION_HPP_
#define GROUPALG_CONVOLUTION_HPP_

#include <cmath>
#include <stdexcept>

#include "groupoid.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace groupalg {

// Normalized 2-cocycle with unimodular values on composable pairs.
template <class S>
struct TwoCocycle {
  FiniteGroupoid const* g = nullptr;
  std::vector<S> values;  // flat n*n, meaningful on composable pairs

  S at(Arrow a, Arrow b) const {
    return values[static_cast<size_t>(a) * g->n + b];
  }
  bool trivial() const {
    for (Arrow a = 0; a < g->n; ++a)
      for (Arrow b = 0; b < g->n; ++b)
        if (g->composable(a, b) && at(a, b) != S{1}) return false;
    return true;
  }
  static TwoCocycle trivial_on(FiniteGroupoid const& gr) {
    TwoCocycle c;
    c.g = &gr;
    c.values.assign(static_cast<size_t>(gr.n) * gr.n, S{1});
    return c;
  }
};

template <class S>
bool scalar_eq(S const& a, S const& b) {
  if constexpr (scalar_traits<S>::exact)
    return a == b;
  else
    return scalar_traits<S>::abs(a - b) <= 1e-9;
}

template <class S>
ValidationReport validate_cocycle(TwoCocycle<S> const& c) {
  FiniteGroupoid const& g = *c.g;
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b)
      if (g.composable(a, b)) {
        auto m = scalar_traits<S>::abs_sq(c.at(a, b));
        using R = typename scalar_traits<S>::real;
        bool unimodular;
        if constexpr (scalar_traits<S>::exact)
          unimodular = (m == R{1});
        else
          unimodular = std::abs(m - R{1}) <= 1e-9;
        if (!unimodular)
          throw std::invalid_argument("cocycle value is not unimodular");
      }
  ValidationReport rep;
  for (Arrow a = 0; a < g.n; ++a) {
    if (!scalar_eq(c.at(g.range(a), a), S{1}))
      rep.add("normalization sigma(r(g),g) != 1", {a});
    if (!scalar_eq(c.at(a, g.domain(a)), S{1}))
      rep.add("normalization sigma(g,d(g)) != 1", {a});
  }
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b) {
      if (!g.composable(a, b)) continue;
      Arrow ab = g.compose(a, b);
      for (Arrow cc = 0; cc < g.n; ++cc) {
        if (!g.composable(b, cc)) continue;
        Arrow bc = g.compose(b, cc);
        if (!scalar_eq(c.at(a, b) * c.at(ab, cc), c.at(b, cc) * c.at(a, bc)))
          rep.add("cocycle identity fails", {a, b, cc});
      }
    }
  return rep;
}

// Element of the convolution algebra: a scalar coefficient per arrow.
template <class S>
struct ConvElement {
  FiniteGroupoid const* g = nullptr;
  std::vector<S> coeffs;

  explicit ConvElement(FiniteGroupoid const& gr)
      : g(&gr), coeffs(gr.n, S{}) {}
  ConvElement() = default;

  S& operator[](Arrow a) { return coeffs[a]; }
  S const& operator[](Arrow a) const { return coeffs[a]; }
  bool operator==(ConvElement const& o) const { return coeffs == o.coeffs; }

  static ConvElement delta(FiniteGroupoid const& gr, Arrow a) {
    ConvElement f(gr);
    f[a] = S{1};
    return f;
  }
  // Indicator of an arrow subset; 1_X for the unit set is the algebra unit.
  static ConvElement indicator(FiniteGroupoid const& gr, ArrowSet const& s) {
    ConvElement f(gr);
    for (Arrow a : s) f[a] = S{1};
    return f;
  }
  static ConvElement unit_element(FiniteGroupoid const& gr) {
    return indicator(gr, gr.units());
  }
};

template <class S>
ConvElement<S> operator+(ConvElement<S> const& f, ConvElement<S> const& h) {
  if (f.g != h.g) throw std::invalid_argument("mismatched groupoids");
  ConvElement<S> out = f;
  for (Arrow a = 0; a < f.g->n; ++a) out[a] += h[a];
  return out;
}

template <class S>
ConvElement<S> operator*(S const& c, ConvElement<S> const& f) {
  ConvElement<S> out = f;
  for (auto& x : out.coeffs) x = c * x;
  return out;
}

// (f * h)(g) = sum over eta with r(eta) = r(g) of
//   sigma(eta, eta^-1 g) f(eta) h(eta^-1 g).
template <class S>
ConvElement<S> convolve(ConvElement<S> const& f, ConvElement<S> const& h,
                        TwoCocycle<S> const& sigma) {
  if (f.g != h.g || sigma.g != f.g)
    throw std::invalid_argument("mismatched groupoids");
  FiniteGroupoid const& g = *f.g;
  ConvElement<S> out(g);
  for (Arrow gamma = 0; gamma < g.n; ++gamma) {
    S acc{};
    for (Arrow eta = 0; eta < g.n; ++eta) {
      if (g.range(eta) != g.range(gamma)) continue;
      Arrow rest = g.compose(g.inverse(eta), gamma);
      if (rest < 0) continue;
      acc += sigma.at(eta, rest) * f[eta] * h[rest];
    }
    out[gamma] = acc;
  }
  return out;
}

// f*(g) = conj(sigma(g, g^-1)) conj(f(g^-1)).
template <class S>
ConvElement<S> involute(ConvElement<S> const& f, TwoCocycle<S> const& sigma) {
  FiniteGroupoid const& g = *f.g;
  ConvElement<S> out(g);
  for (Arrow a = 0; a < g.n; ++a)
    out[a] = scalar_traits<S>::conj(sigma.at(a, g.inverse(a))) *
             scalar_traits<S>::conj(f[g.inverse(a)]);
  return out;
}

enum class NormKind { sup, star_d, star_r, I };

template <class S>
typename scalar_traits<S>::real norm(ConvElement<S> const& f, NormKind k) {
  using T = scalar_traits<S>;
  using R = typename T::real;
  FiniteGroupoid const& g = *f.g;
  auto fiber_max = [&](std::vector<Arrow> const& anchor) {
    R best{};
    for (Arrow x : g.units()) {
      R s{};
      for (Arrow a = 0; a < g.n; ++a)
        if (anchor[a] == x) s += T::abs(f[a]);
      if (s > best) best = s;
    }
    return best;
  };
  switch (k) {
    case NormKind::sup: {
      R best{};
      for (Arrow a = 0; a < g.n; ++a) {
        R v = T::abs(f[a]);
        if (v > best) best = v;
      }
      return best;
    }
    case NormKind::star_d:
      return fiber_max(g.domain_map);
    case NormKind::star_r:
      return fiber_max(g.range_map);
    case NormKind::I:
      return std::max(fiber_max(g.domain_map), fiber_max(g.range_map));
  }
  throw std::logic_error("unreachable");
}

// Matrix of the regular representation on functions of arrows:
// A[g, g''] = sigma(g g''^-1, g'') f(g g''^-1) when d(g) = d(g'').
template <class S>
Matrix<S> regular_rep(ConvElement<S> const& f, TwoCocycle<S> const& sigma) {
  FiniteGroupoid const& g = *f.g;
  Matrix<S> m(g.n, g.n);
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b) {
      if (g.domain(a) != g.domain(b)) continue;
      Arrow left = g.compose(a, g.inverse(b));
      if (left < 0) continue;
      m(a, b) = sigma.at(left, b) * f[left];
    }
  return m;
}

// Matrix of the trivial (orbit) representation on functions of units:
// B[x, y] = sum of f over arrows with r = x and d = y.  Untwisted only.
template <class S>
Matrix<S> trivial_rep(ConvElement<S> const& f, TwoCocycle<S> const& sigma) {
  if (!sigma.trivial())
    throw std::invalid_argument("trivial representation needs sigma == 1");
  FiniteGroupoid const& g = *f.g;
  ArrowSet un = g.units();
  std::vector<int> idx(g.n, -1);
  for (size_t i = 0; i < un.size(); ++i) idx[un[i]] = static_cast<int>(i);
  Matrix<S> m(static_cast<int>(un.size()), static_cast<int>(un.size()));
  for (Arrow a = 0; a < g.n; ++a)
    m(idx[g.range(a)], idx[g.domain(a)]) += f[a];
  return m;
}

template <class S>
Matrix<S> trivial_rep(ConvElement<S> const& f) {
  return trivial_rep(f, TwoCocycle<S>::trivial_on(*f.g));
}

// Exact for p in {1, inf}; p = 2 via singular values (float scalars).
template <class S>
typename scalar_traits<S>::real operator_norm(Matrix<S> const& m, double p) {
  if (p == 1.0) return matrix_norm_1(m);
  if (std::isinf(p)) return matrix_norm_inf(m);
  if (p == 2.0) {
    if constexpr (scalar_traits<S>::exact)
      throw std::invalid_argument("p = 2 norm needs floating scalars");
    else
      return matrix_norm_2(m);
  }
  throw std::invalid_argument("operator_norm supports p in {1, 2, inf}");
}

// Hoelder interpolation bound |f|_{*d}^{1/p} |f|_{*r}^{1/q}, 1/p + 1/q = 1.
template <class S>
double lp_norm_bound(ConvElement<S> const& f, double p) {
  if (p < 1.0) throw std::invalid_argument("p must be in [1, inf]");
  double d = to_double(norm(f, NormKind::star_d));
  double r = to_double(norm(f, NormKind::star_r));
  if (std::isinf(p)) return r;
  if (p == 1.0) return d;
  return std::pow(d, 1.0 / p) * std::pow(r, 1.0 - 1.0 / p);
}

// E_U: coefficientwise restriction to an arrow subset.
template <class S>
ConvElement<S> expectation_restrict(ConvElement<S> const& f,
                                    ArrowSet const& u) {
  ConvElement<S> out(*f.g);
  for (Arrow a : u) out[a] = f[a];
  return out;
}

}  // namespace groupalg

#endif  // GROUPALG_CONVOLUTION_HPP_
