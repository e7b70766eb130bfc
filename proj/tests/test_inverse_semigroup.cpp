#include <doctest.h>

#include <algorithm>
#include <groupalg/inverse_semigroup.hpp>
#include <groupalg/random_gen.hpp>

using namespace groupalg;

namespace {

// Meet semilattice {0, e, f, 1} with e f = 0 and e, f <= 1.
FiniteInverseSemigroup semilattice_efo() {
  FiniteInverseSemigroup s;
  s.m = 4;
  s.zero = 0;
  // indices: 0 = zero, 1 = e, 2 = f, 3 = one; product = meet
  auto meet = [](int a, int b) {
    if (a == b) return a;
    if (a == 3) return b;
    if (b == 3) return a;
    return 0;
  };
  s.table.resize(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s.table[a * 4 + b] = meet(a, b);
  s.labels = {"0", "e", "f", "1"};
  s.finalize();
  return s;
}

// Z/2 with a zero adjoined: {0, e, g}, g g = e.
FiniteInverseSemigroup z2_with_zero() {
  FiniteInverseSemigroup s;
  s.m = 3;
  s.zero = 0;
  s.table = {0, 0, 0,   // 0 row
             0, 1, 2,   // e row
             0, 2, 1};  // g row
  s.labels = {"0", "e", "g"};
  s.finalize();
  return s;
}

std::vector<FiniteInverseSemigroup> random_family(int count, unsigned seed) {
  auto i3 = symmetric_inverse_monoid(3);
  Rng rng(seed);
  std::vector<FiniteInverseSemigroup> out;
  std::uniform_int_distribution<int> pick(0, i3.m - 1);
  std::uniform_int_distribution<int> ngen(1, 3);
  while (static_cast<int>(out.size()) < count) {
    std::vector<int> gens;
    int k = ngen(rng);
    for (int i = 0; i < k; ++i) gens.push_back(pick(rng));
    auto sub = subsemigroup_closure(i3, gens);
    if (sub.s.m < 2 || sub.s.m > 12) continue;
    out.push_back(sub.s);
  }
  return out;
}

}  // namespace

TEST_CASE("symmetric inverse monoids") {
  auto i2 = symmetric_inverse_monoid(2);
  CHECK(i2.m == 7);
  CHECK(validate_semigroup(i2).ok());
  auto i3 = symmetric_inverse_monoid(3);
  CHECK(i3.m == 34);
  CHECK(validate_semigroup(i3).ok());
  // idempotents of I_n are the identity maps on subsets
  CHECK(i2.idempotents.size() == 4);
  CHECK(i3.idempotents.size() == 8);
  // the inverse of a partial bijection is its relational inverse:
  // check via the defining identities
  for (int a = 0; a < i3.m; ++a) {
    CHECK(i3.mul(i3.mul(a, i3.star[a]), a) == a);
    CHECK(i3.is_idempotent(i3.mul(i3.star[a], a)));
  }
}

TEST_CASE("subsemigroup closure recovers the group with zero") {
  auto i2 = symmetric_inverse_monoid(2);
  // the transposition is the unique non-idempotent whose square is nonzero
  int tau = -1;
  for (int a = 0; a < i2.m; ++a)
    if (!i2.is_idempotent(a) && i2.mul(a, a) != i2.zero) tau = a;
  REQUIRE(tau >= 0);
  auto sub = subsemigroup_closure(i2, {tau});
  CHECK(sub.s.m == 3);  // {0, id, tau}
  CHECK(validate_semigroup(sub.s).ok());
  // isomorphic to Z/2 with zero: one non-idempotent squaring to the identity
  int g = -1;
  for (int a = 0; a < sub.s.m; ++a)
    if (!sub.s.is_idempotent(a)) g = a;
  REQUIRE(g >= 0);
  CHECK(sub.s.is_idempotent(sub.s.mul(g, g)));
  CHECK(sub.s.mul(g, g) != sub.s.zero);
}

TEST_CASE("validation flags a missing generalized inverse") {
  // null semigroup {0, a} with a a = 0: a has no generalized inverse
  FiniteInverseSemigroup s;
  s.m = 2;
  s.zero = 0;
  s.table = {0, 0, 0, 0};
  auto rep = validate_semigroup(s);
  CHECK(!rep.ok());
  bool found = false;
  for (auto const& is : rep.issues)
    if (is.rule.find("no generalized inverse") != std::string::npos)
      found = true;
  CHECK(found);
  CHECK_THROWS(s.finalize());
}

TEST_CASE("natural order and covers on the semilattice") {
  auto s = semilattice_efo();
  CHECK(s.leq(1, 3));
  CHECK(s.leq(2, 3));
  CHECK(!s.leq(3, 1));
  CHECK(!s.leq(1, 2));
  CHECK(is_cover(s, {1, 2}, 3));   // {e, f} covers 1
  CHECK(!is_cover(s, {1}, 3));     // {e} misses f
  CHECK(is_cover(s, {1}, 1));
  CHECK(is_cover(s, {3}, 3));      // {1} covers 1
}

TEST_CASE("filters, ultrafilters, tight filters") {
  auto s = semilattice_efo();
  auto filters = all_filters(s);
  CHECK(filters.size() == 3);  // up-sets of e, f, 1
  auto ultra = ultrafilters(s);
  REQUIRE(ultra.size() == 2);
  auto tight = tight_filters(s);
  REQUIRE(tight.size() == 2);
  std::sort(ultra.begin(), ultra.end());
  std::sort(tight.begin(), tight.end());
  CHECK(ultra == tight);
  // the principal filter at 1 is not tight: {e, f} is a cover it misses
  for (auto phi : tight) CHECK(phi.min_idem != 3);

  // on a finite semigroup tight and ultra always agree
  for (auto const& r : random_family(10, 101)) {
    auto u = ultrafilters(r);
    auto t = tight_filters(r);
    std::sort(u.begin(), u.end());
    std::sort(t.begin(), t.end());
    CHECK(u == t);
  }
}

TEST_CASE("canonical action on tight filters") {
  auto i2 = symmetric_inverse_monoid(2);
  for (int t = 0; t < i2.m; ++t) {
    if (t == i2.zero) continue;
    int tt = i2.mul(i2.star[t], t);
    int rr = i2.mul(t, i2.star[t]);
    for (auto phi : tight_filters(i2)) {
      auto img = act(i2, t, phi);
      if (!filter_contains(i2, phi, tt)) {
        CHECK(!img.has_value());
        continue;
      }
      REQUIRE(img.has_value());
      // lands in Z_{t t*}
      CHECK(filter_contains(i2, *img, rr));
      // h_{t*} inverts h_t
      auto back = act(i2, i2.star[t], *img);
      REQUIRE(back.has_value());
      CHECK(*back == phi);
      // composition: h_s(h_t(phi)) = h_{s t}(phi) when defined
      for (int u = 0; u < i2.m; ++u) {
        if (u == i2.zero) continue;
        auto two = act(i2, u, *img);
        if (!two) continue;
        auto one = act(i2, i2.mul(u, t), phi);
        REQUIRE(one.has_value());
        CHECK(*one == *two);
      }
    }
  }
}

TEST_CASE("tight groupoid of I_2 is the pair groupoid on 2 points") {
  auto i2 = symmetric_inverse_monoid(2);
  auto tg = tight_groupoid(i2);
  CHECK(validate(tg.g).ok());
  CHECK(tg.g.n == 4);
  CHECK(tg.g.units().size() == 2);
  CHECK(is_principal(tg.g).value);
  CHECK(orbits(tg.g).size() == 1);
  CHECK(is_hausdorff(tg.g).value);
}

TEST_CASE("tight groupoid of the semilattice is a unit space") {
  auto s = semilattice_efo();
  auto tg = tight_groupoid(s);
  CHECK(validate(tg.g).ok());
  CHECK(tg.g.n == 2);
  CHECK(tg.g.units().size() == 2);
  CHECK(orbits(tg.g).size() == 2);
  CHECK(!is_minimal(tg.g).value);
}

TEST_CASE("tight groupoid of Z/2 with zero is the group groupoid") {
  auto s = z2_with_zero();
  auto tg = tight_groupoid(s);
  CHECK(validate(tg.g).ok());
  CHECK(tg.g.n == 2);
  CHECK(tg.g.units().size() == 1);
  CHECK(!is_topologically_free(tg.g).value);
  CHECK(!is_topologically_free_s(s).value);
}

TEST_CASE("tight groupoid size and validity on random subsemigroups") {
  for (auto const& s : random_family(15, 103)) {
    if (s.nonzero_idempotents().empty()) continue;
    auto tg = tight_groupoid(s);
    auto rep = validate(tg.g);
    CHECK(rep.ok());
    // at most one arrow per nonzero semigroup element
    CHECK(tg.g.n <= s.m - 1);
    // tight filters correspond to units
    CHECK(tight_filters(s).size() == tg.g.units().size());
  }
}

TEST_CASE("semigroup checkers match groupoid checkers") {
  // fixtures first
  {
    auto s = semilattice_efo();
    auto tg = tight_groupoid(s);
    CHECK(is_closed_s(s).value == is_hausdorff(tg.g).value);
    CHECK(is_topologically_free_s(s).value ==
          is_topologically_free(tg.g).value);
    CHECK(is_minimal_s(s).value == is_minimal(tg.g).value);
    CHECK(!is_minimal_s(s).value);
  }
  {
    auto i2 = symmetric_inverse_monoid(2);
    auto tg = tight_groupoid(i2);
    CHECK(is_closed_s(i2).value);
    CHECK(is_topologically_free_s(i2).value ==
          is_topologically_free(tg.g).value);
    CHECK(is_minimal_s(i2).value);
    CHECK(is_minimal(tg.g).value);
  }
  // random family
  for (auto const& s : random_family(20, 107)) {
    if (s.nonzero_idempotents().empty()) continue;
    auto tg = tight_groupoid(s);
    CHECK(is_closed_s(s).value == is_hausdorff(tg.g).value);
    CHECK(is_topologically_free_s(s).value ==
          is_topologically_free(tg.g).value);
    CHECK(is_minimal_s(s).value == is_minimal(tg.g).value);
    // local contraction: impossible on both sides at finite size
    CHECK(!is_locally_contracting_s(s).value);
    CHECK(!is_locally_contracting(tg.g).verdict.value);
  }
}

TEST_CASE("fixed idempotents match fixed points of the action") {
  auto check_lemma = [](FiniteInverseSemigroup const& s) {
    for (int t = 0; t < s.m; ++t) {
      if (t == s.zero) continue;
      int tt = s.mul(s.star[t], t);
      for (int e : s.nonzero_idempotents()) {
        if (!s.leq(e, tt)) continue;
        bool all_fixed_points = true;
        for (auto phi : z_set(s, e)) {
          auto img = act(s, t, phi);
          if (!img || !(*img == phi)) {
            all_fixed_points = false;
            break;
          }
        }
        CHECK(is_fixed(s, e, t) == all_fixed_points);
      }
    }
  };
  check_lemma(symmetric_inverse_monoid(2));
  check_lemma(z2_with_zero());
  check_lemma(semilattice_efo());
  for (auto const& s : random_family(12, 109)) check_lemma(s);
}
