#include <doctest.h>

#include <groupalg/algebra_analysis.hpp>
#include <groupalg/partial_action.hpp>
#include <groupalg/random_gen.hpp>

using namespace groupalg;

namespace {

// Restriction of a global action tau on Y to a subset X of Y: the standard
// way every partial action in these tests is produced, so the axioms hold
// by construction.
PartialAction restrict_global(std::vector<std::vector<int>> gtable, int order,
                              std::vector<std::vector<int>> const& tau,
                              std::vector<int> const& xset) {
  PartialAction pa;
  pa.order = order;
  pa.gtable = std::move(gtable);
  pa.nx = static_cast<int>(xset.size());
  int ny = static_cast<int>(tau[0].size());
  std::vector<int> idx(ny, -1);
  for (int i = 0; i < pa.nx; ++i) idx[xset[i]] = i;
  pa.theta.assign(order, std::vector<int>(pa.nx, -1));
  for (int t = 0; t < order; ++t)
    for (int i = 0; i < pa.nx; ++i) {
      int y = tau[t][xset[i]];
      if (idx[y] >= 0) pa.theta[t][i] = idx[y];
    }
  return pa;
}

PartialAction swap_action() {
  // global Z/2 swap on two points
  return restrict_global(cyclic_group_table(2), 2, {{0, 1}, {1, 0}}, {0, 1});
}

PartialAction identity_z2_on_point() {
  return restrict_global(cyclic_group_table(2), 2, {{0}, {0}}, {0});
}

// Z/4 rotation on Z/4, restricted to {0, 1, 2}: a genuinely partial action.
PartialAction rotation_restricted() {
  std::vector<std::vector<int>> tau(4, std::vector<int>(4));
  for (int t = 0; t < 4; ++t)
    for (int y = 0; y < 4; ++y) tau[t][y] = (y + t) % 4;
  return restrict_global(cyclic_group_table(4), 4, tau, {0, 1, 2});
}

PartialAction two_orbit_action() {
  // Z/2 swapping 0,1 and fixing 2, on all three points
  return restrict_global(cyclic_group_table(2), 2,
                         {{0, 1, 2}, {1, 0, 2}}, {0, 1, 2});
}

struct RandomPA {
  PartialAction pa;
};

PartialAction random_partial_action(Rng& rng) {
  std::uniform_int_distribution<int> gkind(0, 3);
  int kind = gkind(rng);
  std::vector<std::vector<int>> gtable;
  int order;
  if (kind == 3) {
    gtable = klein_table();
    order = 4;
  } else {
    order = kind + 2;  // Z/2, Z/3, Z/4
    gtable = cyclic_group_table(order);
  }
  // build a global action on Y as a disjoint union of standard orbits
  std::vector<std::vector<int>> tau(order);
  int ny = 0;
  std::uniform_int_distribution<int> nblocks(1, 3);
  int blocks = nblocks(rng);
  std::vector<int> block_kind(blocks), block_size(blocks), block_off(blocks);
  for (int b = 0; b < blocks; ++b) {
    block_off[b] = ny;
    if (kind == 3) {
      std::uniform_int_distribution<int> bk(0, 4);
      int k = bk(rng);
      // 0: fixed point, 1..3: 2-element orbit via a quotient, 4: regular
      block_kind[b] = k;
      block_size[b] = (k == 0) ? 1 : (k == 4 ? 4 : 2);
    } else {
      // orbit of size d for a divisor d of the order
      std::vector<int> divs;
      for (int d = 1; d <= order; ++d)
        if (order % d == 0) divs.push_back(d);
      std::uniform_int_distribution<int> pick(0, (int)divs.size() - 1);
      block_kind[b] = divs[pick(rng)];
      block_size[b] = block_kind[b];
    }
    ny += block_size[b];
  }
  for (int t = 0; t < order; ++t) {
    tau[t].resize(ny);
    for (int b = 0; b < blocks; ++b) {
      int off = block_off[b], sz = block_size[b];
      for (int j = 0; j < sz; ++j) {
        int img;
        if (kind == 3) {
          if (block_kind[b] == 0)
            img = j;
          else if (block_kind[b] == 4)
            img = j ^ t;
          else {
            int m = block_kind[b];  // quotient mask 1..3
            int bit = __builtin_popcount(t & m) & 1;
            img = j ^ bit;
          }
        } else {
          img = (j + t) % block_kind[b];
        }
        tau[t][off + j] = off + img;
      }
    }
  }
  // random nonempty subset of Y
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> xset;
  for (int y = 0; y < ny; ++y)
    if (coin(rng)) xset.push_back(y);
  if (xset.empty()) xset.push_back(0);
  return restrict_global(gtable, order, tau, xset);
}

// Random cocycle of the action as a coboundary of a unimodular 1-chain c:
// u(s,t)(x) = c(s,x) c(t, theta_{s^-1}(x)) conj(c(st,x)).
ActionCocycle<Cx> random_action_cocycle(Rng& rng, PartialAction const& pa) {
  int e = pa.gid();
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  std::vector<std::vector<Cx>> c(pa.order, std::vector<Cx>(pa.nx, Cx{1}));
  for (int t = 0; t < pa.order; ++t) {
    if (t == e) continue;
    for (int x = 0; x < pa.nx; ++x)
      if (pa.in_domain(pa.ginv(t), x)) c[t][x] = std::polar(1.0, ang(rng));
  }
  auto u = ActionCocycle<Cx>::trivial_on(pa);
  for (int s = 0; s < pa.order; ++s)
    for (int t = 0; t < pa.order; ++t) {
      int st = pa.gmul(s, t);
      for (int x = 0; x < pa.nx; ++x) {
        if (!pa.in_domain(pa.ginv(s), x) || !pa.in_domain(pa.ginv(st), x))
          continue;
        int w = pa.theta[pa.ginv(s)][x];
        u.at(s, t, x) = c[s][x] * c[t][w] * std::conj(c[st][x]);
      }
    }
  return u;
}

}  // namespace

TEST_CASE("validation accepts restrictions and rejects broken data") {
  CHECK(validate_action(swap_action()).ok());
  CHECK(validate_action(identity_z2_on_point()).ok());
  CHECK(validate_action(rotation_restricted()).ok());
  CHECK(validate_action(two_orbit_action()).ok());

  // theta_1 != id
  auto bad = swap_action();
  bad.theta[0] = {1, 0};
  CHECK(!validate_action(bad).ok());

  // inverse axiom broken
  auto bad2 = rotation_restricted();
  bad2.theta[1][0] = -1;  // remove 0 from dom(theta_1) but not its inverse
  CHECK(!validate_action(bad2).ok());

  // non-injective
  auto bad3 = two_orbit_action();
  bad3.theta[1] = {1, 1, 2};
  CHECK(!validate_action(bad3).ok());

  Rng rng(201);
  for (int i = 0; i < 25; ++i)
    CHECK(validate_action(random_partial_action(rng)).ok());
}

TEST_CASE("transformation groupoid shapes") {
  // trivial group on a set: unit groupoid
  auto triv = restrict_global({{0}}, 1, {{0, 1, 2}}, {0, 1, 2});
  auto tg0 = transformation_groupoid(triv);
  CHECK(validate(tg0.g).ok());
  CHECK(tg0.g.n == 3);
  CHECK(tg0.g.units().size() == 3);

  // free transitive Z/2 on 2 points: pair groupoid
  auto tg1 = transformation_groupoid(swap_action());
  CHECK(validate(tg1.g).ok());
  CHECK(tg1.g.n == 4);
  CHECK(tg1.g.units().size() == 2);
  CHECK(is_principal(tg1.g).value);
  CHECK(orbits(tg1.g).size() == 1);

  // identity Z/2 on one point: the Z/2 group groupoid
  auto tg2 = transformation_groupoid(identity_z2_on_point());
  CHECK(validate(tg2.g).ok());
  CHECK(tg2.g.n == 2);
  CHECK(tg2.g.units().size() == 1);
  CHECK(!is_principal(tg2.g).value);

  // the partial rotation: 3 + 2 + 2 + 2 arrows
  auto tg3 = transformation_groupoid(rotation_restricted());
  CHECK(validate(tg3.g).ok());
  CHECK(tg3.g.n == 9);
  CHECK(tg3.g.units().size() == 3);
  CHECK(is_principal(tg3.g).value);

  Rng rng(203);
  for (int i = 0; i < 20; ++i) {
    auto pa = random_partial_action(rng);
    auto tg = transformation_groupoid(pa);
    CHECK(validate(tg.g).ok());
    CHECK(tg.g.units().size() == static_cast<size_t>(pa.nx));
  }
}

TEST_CASE("action cocycles validate and induce groupoid cocycles") {
  auto pa = rotation_restricted();
  auto u0 = ActionCocycle<Cx>::trivial_on(pa);
  CHECK(validate_action_cocycle(pa, u0).ok());

  Rng rng(207);
  for (int i = 0; i < 20; ++i) {
    auto rpa = random_partial_action(rng);
    auto u = random_action_cocycle(rng, rpa);
    CHECK(validate_action_cocycle(rpa, u).ok());
    auto tg = transformation_groupoid(rpa);
    auto sigma = induced_cocycle(rpa, u, tg);
    CHECK(validate_cocycle(sigma).ok());
  }

  // a broken cocycle is reported
  auto ub = ActionCocycle<Cx>::trivial_on(pa);
  ub.at(pa.gid(), 1, 1) = Cx{-1};  // violates u(1,t) = 1
  CHECK(!validate_action_cocycle(pa, ub).ok());
}

TEST_CASE("groupoid convolution matches the crossed product formula") {
  Rng rng(211);
  for (int i = 0; i < 15; ++i) {
    auto pa = random_partial_action(rng);
    auto u = random_action_cocycle(rng, pa);
    auto tg = transformation_groupoid(pa);
    auto sigma = induced_cocycle(pa, u, tg);
    REQUIRE(validate_cocycle(sigma).ok());

    auto fhat = random_element<Cx>(rng, tg.g);
    auto ghat = random_element<Cx>(rng, tg.g);
    auto prod = convolve(fhat, ghat, sigma);

    // read an element as a map t -> function on X_t
    auto slice = [&](ConvElement<Cx> const& h, int t, int y) -> Cx {
      int x = pa.theta[pa.ginv(t)][y];
      return h[tg.arrow_of[t][x]];
    };
    // independent crossed product convolution:
    // (f*g)(r)(y) = sum over s t = r of f(s)(y) g(t)(theta_{s^-1} y) u(s,t)(y)
    for (int r = 0; r < pa.order; ++r)
      for (int y = 0; y < pa.nx; ++y) {
        if (!pa.in_domain(pa.ginv(r), y)) continue;
        Cx acc{};
        for (int s = 0; s < pa.order; ++s) {
          if (!pa.in_domain(pa.ginv(s), y)) continue;
          int w = pa.theta[pa.ginv(s)][y];
          int t = pa.gmul(pa.ginv(s), r);
          // g(t) is defined at w iff w lies in X_t
          if (!pa.in_domain(pa.ginv(t), w)) continue;
          acc += slice(fhat, s, y) * slice(ghat, t, w) * u.at(s, t, y);
        }
        CHECK(std::abs(acc - slice(prod, r, y)) < 1e-9);
      }
  }
}

TEST_CASE("topological freeness and minimality") {
  CHECK(is_topologically_free_pa(swap_action()).value);
  CHECK(is_minimal_pa(swap_action()).value);
  CHECK(!is_topologically_free_pa(identity_z2_on_point()).value);
  CHECK(is_topologically_free_pa(rotation_restricted()).value);
  CHECK(is_minimal_pa(rotation_restricted()).value);
  auto two = two_orbit_action();
  CHECK(!is_topologically_free_pa(two).value);  // fixed point at 2
  auto vm = is_minimal_pa(two);
  CHECK(!vm.value);
  CHECK(!vm.witness.empty());  // a proper invariant orbit

  // the action checkers agree with the groupoid checkers
  Rng rng(213);
  std::vector<PartialAction> cases = {swap_action(), identity_z2_on_point(),
                                      rotation_restricted(),
                                      two_orbit_action()};
  for (int i = 0; i < 25; ++i) cases.push_back(random_partial_action(rng));
  for (auto const& pa : cases) {
    auto tg = transformation_groupoid(pa);
    CHECK(is_topologically_free_pa(pa).value ==
          is_topologically_free(tg.g).value);
    CHECK(is_minimal_pa(pa).value == is_minimal(tg.g).value);
  }
}

TEST_CASE("simplicity of the crossed product algebra") {
  Rng rng(217);
  for (int i = 0; i < 20; ++i) {
    auto pa = random_partial_action(rng);
    auto u = random_action_cocycle(rng, pa);
    auto tg = transformation_groupoid(pa);
    auto sigma = induced_cocycle(pa, u, tg);
    auto alg = from_groupoid(tg.g, sigma);
    bool simple = is_simple_burnside(alg).simple;
    bool maxab = is_maximal_abelian(alg, diagonal_subspace(tg.g));
    bool tf = is_topologically_free_pa(pa).value;
    bool mi = is_minimal_pa(pa).value;
    CHECK((simple && maxab) == (tf && mi));
  }
}

TEST_CASE("n-filling cover condition") {
  CHECK_THROWS(is_n_filling_pa(swap_action(), 0));
  auto r1 = is_n_filling_pa(swap_action(), 2);
  CHECK(!r1.full.value);
  CHECK(r1.cover_condition.value);
  CHECK(!is_n_filling_pa(swap_action(), 1).cover_condition.value);
  CHECK(is_n_filling_pa(identity_z2_on_point(), 1).cover_condition.value);
  CHECK(!is_n_filling_pa(two_orbit_action(), 3).cover_condition.value);
  CHECK(is_n_filling_pa(rotation_restricted(), 3).cover_condition.value);
  CHECK(!is_n_filling_pa(rotation_restricted(), 2).cover_condition.value);
}

TEST_CASE("local boundary actions are impossible at finite size") {
  std::vector<PartialAction> cases = {swap_action(), rotation_restricted(),
                                      two_orbit_action()};
  Rng rng(219);
  for (int i = 0; i < 10; ++i) cases.push_back(random_partial_action(rng));
  for (auto const& pa : cases) {
    auto res = is_local_boundary_pa(pa);
    CHECK(!res.verdict.value);
    CHECK(check_local_boundary_certificate(pa, res.certificate));

    // tampered certificates are rejected
    auto c = res.certificate;
    c.t = -1;
    CHECK(!check_local_boundary_certificate(pa, c));
    c = res.certificate;
    c.image.clear();
    CHECK(!check_local_boundary_certificate(pa, c));
    c = res.certificate;
    c.v.clear();
    CHECK(!check_local_boundary_certificate(pa, c));
  }
}
