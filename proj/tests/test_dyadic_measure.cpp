#include <doctest.h>

#include <set>

#include "randiso/base_groups.hpp"
#include "randiso/dyadic_measure.hpp"
#include "randiso/error.hpp"
#include "randiso/generators.hpp"

using namespace randiso;

namespace
{

Rational frac(long num, long den)
{
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// period of interval i by iterating the map until it returns
std::size_t return_time(DyadicMPT const &t, Index i)
{
  std::size_t k = 1;
  for (Index j = t(i); j != i; j = t(j))
    ++k;
  return k;
}

Rational count_displaced(DyadicMPT const &a, DyadicMPT const &b)
{
  unsigned level = std::max(a.level(), b.level());
  auto x = mpt_refine(a, level);
  auto y = mpt_refine(b, level);
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    n += x(static_cast<Index>(i)) != y(static_cast<Index>(i));
  return frac(static_cast<long>(n), static_cast<long>(x.size()));
}

void check_tower_by_enumeration(DyadicMPT const &t, TowerData const &tower)
{
  std::vector<int> hits(t.size());
  REQUIRE(tower.levels.size() == tower.height);
  for (std::size_t k = 0; k < tower.height; ++k)
    for (Index i : tower.levels[k].members())
      ++hits[i];
  for (Index i : tower.leftover.members())
    ++hits[i];
  for (int h : hits)
    CHECK(h == 1);
  // levels[k] = T^k(base)
  for (Index b : tower.base.members()) {
    Index x = b;
    for (std::size_t k = 0; k < tower.height; ++k) {
      CHECK(tower.levels[k].contains(x));
      x = t(x);
    }
  }
}

} // namespace

TEST_CASE("compose, inverse and refine")
{
  Rng rng(11);
  auto t = gen::random_mpt(rng, 4);
  CHECK(mpt_compose(t, mpt_inverse(t)) == DyadicMPT::identity(4));
  CHECK(mpt_refine(DyadicMPT::identity(1), 3) == DyadicMPT::identity(3));
  CHECK(mpt_compose(DyadicMPT::shift(2, 1), DyadicMPT::shift(2, 1)) == DyadicMPT::shift(2, 2));

  // refinement keeps the point map: subinterval j of i goes to subinterval j of T(i)
  auto r = mpt_refine(t, 6);
  for (Index i = 0; i < r.size(); ++i)
    CHECK(r(i) == 4 * t(i / 4) + i % 4);
}

TEST_CASE("group axioms on random triples")
{
  Rng rng(12);
  for (int c = 0; c < 50; ++c) {
    auto a = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto b = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto d = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    CHECK(mpt_compose(mpt_compose(a, b), d) == mpt_compose(a, mpt_compose(b, d)));
    CHECK(mpt_compose(a, DyadicMPT::identity(0)) == mpt_refine(a, a.level()));
    CHECK(mpt_compose(mpt_inverse(a), a) == DyadicMPT::identity(a.level()));
  }
}

TEST_CASE("cycle decomposition")
{
  auto full = DyadicMPT::shift(5, 1);
  auto cyc = mpt_cycles(full);
  CHECK(cyc.census == std::map<std::size_t, std::size_t>{{32, 1}});
  CHECK(cyc.is_aperiodic_up_to(32));
  CHECK_FALSE(cyc.is_aperiodic_up_to(33));

  CHECK(mpt_cycles(DyadicMPT::identity(3)).census == std::map<std::size_t, std::size_t>{{1, 8}});

  // (0 1)(2 3 4 5) with 6, 7 fixed
  DyadicMPT t(3, {1, 0, 3, 4, 5, 2, 6, 7});
  auto d = mpt_cycles(t);
  std::map<std::size_t, std::size_t> by_iteration;
  for (Index i = 0; i < 8; ++i)
    ++by_iteration[return_time(t, i)];
  CHECK(d.period_measure(2) == frac(static_cast<long>(by_iteration[2]), 8));
  CHECK(d.period_measure(4) == frac(static_cast<long>(by_iteration[4]), 8));
  CHECK(d.period_measure(2) == frac(2, 8));
  CHECK(d.period_measure(4) == frac(4, 8));
}

TEST_CASE("uniform distance")
{
  Rng rng(13);
  auto t = gen::random_mpt(rng, 3);
  CHECK(delta_u(t, t) == 0);
  CHECK(delta_u(DyadicMPT::shift(2, 1), DyadicMPT::identity(2)) == 1);
  CHECK(delta_u(DyadicMPT(2, {1, 0, 2, 3}), DyadicMPT::identity(0)) == frac(1, 2));

  for (int c = 0; c < 40; ++c) {
    auto a = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto b = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto x = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto y = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    CHECK(delta_u(a, b) == count_displaced(a, b));
    CHECK(delta_u(mpt_compose(x, mpt_compose(a, y)), mpt_compose(x, mpt_compose(b, y))) ==
          delta_u(a, b));
    CHECK(delta_u(mpt_refine(a, 6), b) == delta_u(a, b));
  }
}

TEST_CASE("weak distance and the sup form")
{
  auto t = DyadicMPT::shift(2, 1);
  auto id = DyadicMPT::identity(2);
  Rational best = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    unsigned image = 0;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1)
        image |= 1u << t(i);
    best = max(best, frac(__builtin_popcount(image ^ mask), 4));
  }
  CHECK(delta_u_prime(t, id) == best);
  CHECK(delta_w(t, t) == 0);

  Rng rng(14);
  for (int c = 0; c < 100; ++c) {
    auto a = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    auto b = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)));
    CHECK(delta_w(a, b) <= delta_u(a, b));
    CHECK(delta_u_prime(mpt_refine(a, 5), b) == delta_u_prime(a, b));
  }
}

TEST_CASE("rokhlin towers")
{
  auto full = DyadicMPT::shift(4, 1);
  auto four = rokhlin_tower(full, 4, 0);
  CHECK(four.base.count() == 4);
  CHECK(four.leftover.measure() == 0);
  check_tower_by_enumeration(full, four);

  auto three = rokhlin_tower(full, 3, frac(1, 16));
  CHECK(three.base.count() == 5);
  CHECK(three.leftover.measure() == frac(1, 16));
  check_tower_by_enumeration(full, three);

  CHECK_THROWS_AS(rokhlin_tower(full, 3, frac(1, 32)), Error);
  try {
    rokhlin_tower(DyadicMPT::identity(3), 2, frac(1, 2));
    FAIL("identity has fixed points");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::NotAperiodic);
  }

  Rng rng(15);
  for (int c = 0; c < 30; ++c) {
    auto t = gen::aperiodic_mpt(rng, 8, 8, 6);
    auto tower = rokhlin_tower(t, 8, frac(1, 4));
    check_tower_by_enumeration(t, tower);
    CHECK(tower.leftover.measure() <= frac(1, 4));
  }
}

TEST_CASE("periodic approximation")
{
  auto full = DyadicMPT::shift(4, 1);
  auto pa = periodic_approximation(full, 4, 0);
  CHECK(mpt_cycles(pa.periodic_map).census == std::map<std::size_t, std::size_t>{{4, 4}});
  CHECK(pa.distance == frac(1, 4));
  CHECK(count_displaced(full, pa.periodic_map) == frac(1, 4));

  auto periodic = DyadicMPT::shift(4, 4);
  auto same = periodic_approximation(periodic, 4, 0);
  CHECK(same.periodic_map == periodic);
  CHECK(same.distance == 0);

  auto big = periodic_approximation(DyadicMPT::shift(10, 1), 32, 0);
  CHECK(count_displaced(DyadicMPT::shift(10, 1), big.periodic_map) == frac(1, 32));

  Rng rng(16);
  for (int c = 0; c < 20; ++c) {
    auto t = gen::aperiodic_mpt(rng, 8, 16, 10);
    Rational eps(1, 8);
    auto p = periodic_approximation(t, 16, eps);
    auto census = mpt_cycles(p.periodic_map).census;
    REQUIRE(census.size() == 1);
    CHECK(census.begin()->first == 16);
    CHECK(count_displaced(t, p.periodic_map) <= eps + frac(1, 16));
  }
}

TEST_CASE("conjugacy matching")
{
  Rng rng(17);
  auto t = gen::full_cycle(rng, 8);
  auto same = mpt_conjugate_match(t, t, frac(1, 8));
  CHECK(same.achieved == 0);

  auto s = gen::full_cycle(rng, 8);
  auto exact = mpt_conjugate_match(t, s, frac(1, 8));
  auto r = exact.conjugator;
  CHECK(count_displaced(mpt_compose(mpt_inverse(r), mpt_compose(t, r)), s) == 0);

  std::vector<Index> two(256);
  for (Index i = 0; i < 256; ++i)
    two[i] = (i % 128 == 127) ? i - 127 : i + 1;
  DyadicMPT halves(8, two);
  auto m = mpt_conjugate_match(t, halves, frac(1, 8));
  auto moved = mpt_compose(mpt_inverse(m.conjugator), mpt_compose(t, m.conjugator));
  Rational direct = count_displaced(moved, halves);
  CHECK(direct == m.achieved);
  CHECK(direct <= frac(1, 8));
}
