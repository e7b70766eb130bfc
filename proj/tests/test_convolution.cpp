#include <doctest.h>

#include <groupalg/convolution.hpp>
#include <groupalg/random_gen.hpp>

using namespace groupalg;

namespace {

// Independent oracle: sum over all composable factorizations a b = g.
template <class S>
ConvElement<S> convolve_oracle(ConvElement<S> const& f, ConvElement<S> const& h,
                               TwoCocycle<S> const& sigma) {
  FiniteGroupoid const& g = *f.g;
  ConvElement<S> out(g);
  for (Arrow a = 0; a < g.n; ++a)
    for (Arrow b = 0; b < g.n; ++b) {
      Arrow ab = g.compose(a, b);
      if (ab < 0) continue;
      out[ab] += sigma.at(a, b) * f[a] * h[b];
    }
  return out;
}

bool close(Cx a, Cx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

bool close_elem(ConvElement<Cx> const& a, ConvElement<Cx> const& b,
                double tol = 1e-10) {
  for (Arrow i = 0; i < a.g->n; ++i)
    if (!close(a[i], b[i], tol)) return false;
  return true;
}

// One-unit Klein four-group groupoid with the sign cocycle
// sigma(h, h') = (-1)^{b(h) a(h')} for h = (a, b) encoded as two bits.
struct KleinFixture {
  FiniteGroupoid g = group_groupoid(klein_table());
  TwoCocycle<Cx> sigma;
  KleinFixture() {
    sigma.g = &g;
    sigma.values.assign(16, Cx{1});
    for (int h = 0; h < 4; ++h)
      for (int h2 = 0; h2 < 4; ++h2)
        sigma.values[h * 4 + h2] =
            (((h & 2) >> 1) * (h2 & 1)) ? Cx{-1} : Cx{1};
  }
};

}  // namespace

TEST_CASE("cocycle validation") {
  auto p = pair_groupoid(2);
  CHECK(validate_cocycle(TwoCocycle<Cx>::trivial_on(p)).ok());

  KleinFixture kf;
  CHECK(validate_cocycle(kf.sigma).ok());
  CHECK(!kf.sigma.trivial());

  // broken normalization is witnessed
  auto bad = TwoCocycle<Cx>::trivial_on(p);
  Arrow u = p.units()[0];
  bad.values[static_cast<size_t>(u) * p.n + u] = Cx{-1};
  CHECK(!validate_cocycle(bad).ok());

  // non-unimodular value is a hard error
  auto nu = TwoCocycle<Cx>::trivial_on(p);
  for (Arrow a = 0; a < p.n; ++a)
    if (!p.unit[a]) {
      nu.values[static_cast<size_t>(a) * p.n + p.inverse(a)] = Cx{2};
      break;
    }
  CHECK_THROWS(validate_cocycle(nu));
}

TEST_CASE("random cocycles validate") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    REQUIRE(validate(rg.g).ok());
    auto s = random_cocycle<Cx>(rng, rg);
    CHECK(validate_cocycle(s).ok());
    auto sr = random_cocycle<Rat>(rng, rg);
    CHECK(validate_cocycle(sr).ok());
  }
}

TEST_CASE("convolution basics") {
  auto p = pair_groupoid(2);
  auto sigma = TwoCocycle<Cx>::trivial_on(p);
  auto one = ConvElement<Cx>::unit_element(p);
  Rng rng(11);
  auto f = random_element<Cx>(rng, p);
  CHECK(close_elem(convolve(f, one, sigma), f));
  CHECK(close_elem(convolve(one, f, sigma), f));
}

TEST_CASE("bisection indicators multiply as set products") {
  auto p = pair_groupoid(3);
  auto sigma = TwoCocycle<Cx>::trivial_on(p);
  // two bisections in the pair groupoid on 3 units
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    // random partial injections as bisections
    ArrowSet u, v;
    for (Arrow a = 0; a < p.n; ++a) {
      ArrowSet cand{a};
      if (is_bisection(p, set_union(u, cand)) && rng() % 2) u = set_union(u, cand);
      if (is_bisection(p, set_union(v, cand)) && rng() % 2) v = set_union(v, cand);
    }
    ArrowSet uv;
    for (Arrow a : u)
      for (Arrow b : v) {
        Arrow ab = p.compose(a, b);
        if (ab >= 0) uv.push_back(ab);
      }
    uv = make_set(std::move(uv));
    auto lhs = convolve(ConvElement<Cx>::indicator(p, u),
                        ConvElement<Cx>::indicator(p, v), sigma);
    CHECK(close_elem(lhs, ConvElement<Cx>::indicator(p, uv)));
  }
}

TEST_CASE("convolution matches the factorization oracle and is associative") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Cx>(rng, rg);
    auto f = random_element<Cx>(rng, rg.g);
    auto h = random_element<Cx>(rng, rg.g);
    auto k = random_element<Cx>(rng, rg.g);
    CHECK(close_elem(convolve(f, h, sigma), convolve_oracle(f, h, sigma)));
    CHECK(close_elem(convolve(convolve(f, h, sigma), k, sigma),
                     convolve(f, convolve(h, k, sigma), sigma)));
  }
}

TEST_CASE("exact rational convolution agrees with the oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Rat>(rng, rg);
    auto f = random_element<Rat>(rng, rg.g);
    auto h = random_element<Rat>(rng, rg.g);
    CHECK(convolve(f, h, sigma) == convolve_oracle(f, h, sigma));
    auto k = random_element<Rat>(rng, rg.g);
    CHECK(convolve(convolve(f, h, sigma), k, sigma) ==
          convolve(f, convolve(h, k, sigma), sigma));
  }
}

TEST_CASE("involution") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Cx>(rng, rg);
    auto f = random_element<Cx>(rng, rg.g);
    auto h = random_element<Cx>(rng, rg.g);
    // f** = f
    CHECK(close_elem(involute(involute(f, sigma), sigma), f));
    // (f h)* = h* f*
    CHECK(close_elem(involute(convolve(f, h, sigma), sigma),
                     convolve(involute(h, sigma), involute(f, sigma), sigma)));
  }
  // delta_x* = delta_x for units; untwisted f*(g) = conj(f(g^-1))
  auto p = pair_groupoid(2);
  auto sigma = TwoCocycle<Cx>::trivial_on(p);
  Arrow x = p.units()[0];
  CHECK(close_elem(involute(ConvElement<Cx>::delta(p, x), sigma),
                   ConvElement<Cx>::delta(p, x)));
  auto f = random_element<Cx>(rng, p);
  auto fs = involute(f, sigma);
  for (Arrow a = 0; a < p.n; ++a)
    CHECK(close(fs[a], std::conj(f[p.inverse(a)])));
}

TEST_CASE("twisted Klein involution matches the hand table") {
  KleinFixture kf;
  // delta_h* = conj(sigma(h, h)) delta_h since every element is its own
  // inverse; sigma(h,h) = -1 exactly for h in {2 = (0,1) bit pattern? no:
  // encoding h = bits (a = h&1, b = h>>1), sigma(h,h) = (-1)^{b(h) a(h)}
  for (int h = 0; h < 4; ++h) {
    auto d = ConvElement<Cx>::delta(kf.g, h);
    auto ds = involute(d, kf.sigma);
    Cx expect = (((h & 2) >> 1) * (h & 1)) ? Cx{-1} : Cx{1};
    CHECK(close(ds[h], expect));
  }
}

TEST_CASE("norms") {
  auto p = pair_groupoid(3);
  for (Arrow a = 0; a < p.n; ++a) {
    auto d = ConvElement<Cx>::delta(p, a);
    CHECK(norm(d, NormKind::sup) == 1.0);
    CHECK(norm(d, NormKind::star_d) == 1.0);
    CHECK(norm(d, NormKind::star_r) == 1.0);
    CHECK(norm(d, NormKind::I) == 1.0);
  }
  // indicator of a d-fiber: k arrows with distinct ranges
  Arrow x = p.units()[0];
  ArrowSet fiber;
  for (Arrow a = 0; a < p.n; ++a)
    if (p.domain(a) == x) fiber.push_back(a);
  auto f = ConvElement<Cx>::indicator(p, fiber);
  CHECK(norm(f, NormKind::star_d) == 3.0);
  CHECK(norm(f, NormKind::star_r) == 1.0);
  CHECK(norm(f, NormKind::I) == 3.0);

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Cx>(rng, rg);
    auto g = random_element<Cx>(rng, rg.g);
    auto h = random_element<Cx>(rng, rg.g);
    auto gs = involute(g, sigma);
    CHECK(norm(gs, NormKind::star_d) ==
          doctest::Approx(norm(g, NormKind::star_r)).epsilon(1e-12));
    CHECK(norm(gs, NormKind::I) ==
          doctest::Approx(norm(g, NormKind::I)).epsilon(1e-12));
    // submultiplicativity of the I-norm
    CHECK(norm(convolve(g, h, sigma), NormKind::I) <=
          norm(g, NormKind::I) * norm(h, NormKind::I) + 1e-9);
  }
}

TEST_CASE("regular representation") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Cx>(rng, rg);
    auto one = ConvElement<Cx>::unit_element(rg.g);
    auto id_m = regular_rep(one, sigma);
    auto id_e = Matrix<Cx>::identity(rg.g.n);
    for (size_t i = 0; i < id_m.data.size(); ++i)
      CHECK(close(id_m.data[i], id_e.data[i]));
    auto f = random_element<Cx>(rng, rg.g);
    auto h = random_element<Cx>(rng, rg.g);
    // multiplicativity
    auto lhs = regular_rep(convolve(f, h, sigma), sigma);
    auto rhs = regular_rep(f, sigma) * regular_rep(h, sigma);
    REQUIRE(lhs.rows == rhs.rows);
    for (size_t i = 0; i < lhs.data.size(); ++i)
      CHECK(close(lhs.data[i], rhs.data[i], 1e-10));
    // j-map readback: the column entry at the domain unit recovers f
    auto m = regular_rep(f, sigma);
    for (Arrow a = 0; a < rg.g.n; ++a)
      CHECK(close(m(a, rg.g.domain(a)), f[a]));
  }
}

TEST_CASE("trivial representation") {
  // one-unit Z2: 1x1 matrix f(e) + f(g)
  auto z2 = group_groupoid(cyclic_group_table(2));
  Rng rng(17);
  auto f = random_element<Cx>(rng, z2);
  auto m = trivial_rep(f);
  REQUIRE(m.rows == 1);
  CHECK(close(m(0, 0), f[0] + f[1]));

  // pair groupoid on 2 units: linear isomorphism onto 2x2 matrices
  auto p = pair_groupoid(2);
  std::vector<Matrix<Cx>> images;
  for (Arrow a = 0; a < p.n; ++a)
    images.push_back(trivial_rep(ConvElement<Cx>::delta(p, a)));
  Eigen::MatrixXcd span(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) span(i, j) = images[i].data[j];
  CHECK(matrix_rank(span) == 4);

  // unit-supported elements go to diagonal matrices
  auto g3 = pair_groupoid(3);
  auto h = random_element<Cx>(rng, g3);
  auto hu = expectation_restrict(h, g3.units());
  auto dm = trivial_rep(hu);
  for (int i = 0; i < dm.rows; ++i)
    for (int j = 0; j < dm.cols; ++j)
      if (i != j) CHECK(close(dm(i, j), Cx{0}));

  // multiplicative on the untwisted algebra
  for (int trial = 0; trial < 20; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = TwoCocycle<Cx>::trivial_on(rg.g);
    auto a = random_element<Cx>(rng, rg.g);
    auto b = random_element<Cx>(rng, rg.g);
    auto lhs = trivial_rep(convolve(a, b, sigma));
    auto rhs = trivial_rep(a) * trivial_rep(b);
    for (size_t i = 0; i < lhs.data.size(); ++i)
      CHECK(close(lhs.data[i], rhs.data[i], 1e-10));
  }

  // twisted input is rejected
  KleinFixture kf;
  auto kx = random_element<Cx>(rng, kf.g);
  CHECK_THROWS(trivial_rep(kx, kf.sigma));
}

TEST_CASE("operator norms and the norm chain") {
  Rng rng(29);
  double inf = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 40; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Cx>(rng, rg);
    auto f = random_element<Cx>(rng, rg.g);
    auto m = regular_rep(f, sigma);
    CHECK(operator_norm(m, 1.0) ==
          doctest::Approx(norm(f, NormKind::star_d)).epsilon(1e-12));
    CHECK(operator_norm(m, inf) ==
          doctest::Approx(norm(f, NormKind::star_r)).epsilon(1e-12));
    double n2 = operator_norm(m, 2.0);
    CHECK(n2 <= lp_norm_bound(f, 2.0) * (1 + 1e-9) + 1e-12);
    CHECK(lp_norm_bound(f, 2.0) <= norm(f, NormKind::I) * (1 + 1e-9));
    // p <-> q anti-isomorphism through the involution
    auto ms = regular_rep(involute(f, sigma), sigma);
    CHECK(operator_norm(ms, 1.0) ==
          doctest::Approx(operator_norm(m, inf)).epsilon(1e-12));
    CHECK_THROWS(operator_norm(m, 3.0));
  }
  // identity matrix has norm 1 for every p
  auto id = Matrix<Cx>::identity(5);
  CHECK(operator_norm(id, 1.0) == 1.0);
  CHECK(operator_norm(id, inf) == 1.0);
  CHECK(operator_norm(id, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact rational operator norms") {
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto sigma = random_cocycle<Rat>(rng, rg);
    auto f = random_element<Rat>(rng, rg.g);
    auto m = regular_rep(f, sigma);
    CHECK(operator_norm(m, 1.0) == norm(f, NormKind::star_d));
    CHECK(operator_norm(m, std::numeric_limits<double>::infinity()) ==
          norm(f, NormKind::star_r));
    CHECK_THROWS(operator_norm(m, 2.0));
  }
}

TEST_CASE("expectations") {
  auto p = pair_groupoid(3);
  auto sigma = TwoCocycle<Cx>::trivial_on(p);
  for (Arrow a = 0; a < p.n; ++a)
    if (!p.unit[a])
      CHECK(close_elem(expectation_restrict(ConvElement<Cx>::delta(p, a),
                                            p.units()),
                       ConvElement<Cx>(p)));

  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    auto rg = random_discrete_groupoid(rng);
    auto s = random_cocycle<Cx>(rng, rg);
    auto f = random_element<Cx>(rng, rg.g);
    // E_X is idempotent onto unit-supported elements
    auto ex = expectation_restrict(f, rg.g.units());
    CHECK(close_elem(expectation_restrict(ex, rg.g.units()), ex));
    // E_X(f* f)(x) = sum_{d(g) = x} |f(g)|^2 in the untwisted case
    auto triv = TwoCocycle<Cx>::trivial_on(rg.g);
    auto pos = convolve(involute(f, triv), f, triv);
    for (Arrow x : rg.g.units()) {
      double expect = 0;
      for (Arrow a = 0; a < rg.g.n; ++a)
        if (rg.g.domain(a) == x) expect += std::norm(f[a]);
      CHECK(close(pos[x], Cx{expect}, 1e-9));
    }
    // bimodule property over C0(X) for a bisection restriction
    auto a = expectation_restrict(random_element<Cx>(rng, rg.g), rg.g.units());
    auto b = expectation_restrict(random_element<Cx>(rng, rg.g), rg.g.units());
    ArrowSet u;
    for (Arrow ar = 0; ar < rg.g.n; ++ar) {
      ArrowSet cand = set_union(u, {ar});
      if (is_bisection(rg.g, cand) && rng() % 2) u = cand;
    }
    auto lhs = expectation_restrict(
        convolve(convolve(a, f, s), b, s), u);
    auto rhs = convolve(convolve(a, expectation_restrict(f, u), s), b, s);
    CHECK(close_elem(lhs, rhs, 1e-9));
    // kernels of restrictions over a cover of the arrows intersect to 0
    auto again = f;
    for (Arrow ar = 0; ar < rg.g.n; ++ar)
      again[ar] -= expectation_restrict(f, {ar})[ar];
    CHECK(close_elem(again, ConvElement<Cx>(rg.g)));
  }
}
