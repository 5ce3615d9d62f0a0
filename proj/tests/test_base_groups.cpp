#include <doctest.h>

#include <numeric>

#include "randiso/base_groups.hpp"
#include "randiso/error.hpp"
#include "randiso/generators.hpp"

using namespace randiso;

namespace
{

WindowPerm direct_power(WindowPerm const &a, std::size_t n)
{
  std::vector<Point> m(a.window());
  for (std::size_t p = 0; p < m.size(); ++p) {
    Point q = static_cast<Point>(p);
    for (std::size_t j = 0; j < n; ++j)
      q = a.map()[q];
    m[p] = q;
  }
  return WindowPerm(std::move(m));
}

Census census_by_walking(WindowPerm const &a)
{
  Census out;
  std::vector<bool> seen(a.window());
  for (std::size_t p = 0; p < a.window(); ++p) {
    if (seen[p])
      continue;
    std::size_t len = 0;
    for (Point q = static_cast<Point>(p); !seen[q]; q = a(q)) {
      seen[q] = true;
      ++len;
    }
    ++out[len];
  }
  return out;
}

} // namespace

TEST_CASE("permutation metrics")
{
  auto id = WindowPerm::identity();
  auto m = perm_metrics(id, id);
  CHECK(m.polish == 0);
  CHECK(m.uniform == 0);

  m = perm_metrics(WindowPerm::from_cycles({{0, 1}}), id);
  CHECK(m.polish == Rational(1, 2) + Rational(1, 4));
  CHECK(m.uniform == 1);

  m = perm_metrics(WindowPerm::from_cycles({{5, 6}}), id);
  CHECK(m.polish == Rational(1, 64) + Rational(1, 128));
  CHECK(m.uniform == 1);

  Rng rng(21);
  for (int c = 0; c < 100; ++c) {
    auto a = gen::random_perm(rng, gen::uniform(rng, 1, 8));
    auto b = gen::random_perm(rng, gen::uniform(rng, 1, 8));
    auto x = perm_metrics(a, b);
    CHECK(x.polish <= x.uniform);
    CHECK((x.uniform == 0) == (a * inverse(b)).is_identity());
  }
}

TEST_CASE("generic surrogates")
{
  auto one = generic_surrogate(1, 3);
  CHECK(one.realized.window() == 3);
  CHECK(one.realized.is_identity());

  auto small = generic_surrogate(3, 1);
  CHECK(small.realized.window() == 6);
  CHECK(census_by_walking(small.realized) == Census{{1, 1}, {2, 1}, {3, 1}});

  auto wide = generic_surrogate(4, 2);
  CHECK(wide.realized.window() == 20);
  CHECK(census_by_walking(wide.realized) == Census{{1, 2}, {2, 2}, {3, 2}, {4, 2}});
}

TEST_CASE("power cycle type")
{
  auto six = WindowPerm::from_cycles({{0, 1, 2, 3, 4, 5}});
  CHECK(power_cycle_type(six, 2) == Census{{3, 2}});
  CHECK(census_by_walking(direct_power(six, 2)) == Census{{3, 2}});

  auto five = WindowPerm::from_cycles({{0, 1, 2, 3, 4}});
  CHECK(power_cycle_type(five, 5) == Census{{1, 5}});

  auto g = generic_surrogate(6, 2).realized;
  CHECK(power_cycle_type(g, 3) == census_by_walking(direct_power(g, 3)));

  Rng rng(22);
  for (int c = 0; c < 200; ++c) {
    auto a = gen::random_perm(rng, gen::uniform(rng, 1, 64));
    std::size_t n = gen::uniform(rng, 1, 12);
    CHECK(power_cycle_type(a, n) == census_by_walking(direct_power(a, n)));
  }
}

TEST_CASE("matching on a window")
{
  // identity target onto fixed points
  auto sigma = generic_surrogate(1, 6).realized;
  PartialInjection ident{0, 1, 2, 3};
  auto rho = match_on_window(sigma, 1, ident);
  for (Point n = 0; n < 4; ++n)
    CHECK(sigma(rho(n)) == rho(n));

  // 3-cycle target against the explicit triple product
  auto g = generic_surrogate(4, 1).realized;
  PartialInjection three{1, 2, 0};
  rho = match_on_window(g, 1, three);
  auto rho_inv = inverse(rho);
  for (Point n = 0; n < 3; ++n)
    CHECK(rho_inv(g(rho(n))) == *three[n]);

  // open chain 0 -> 1 -> 2 -> ?
  PartialInjection chain{1, 2, std::nullopt};
  auto big = generic_surrogate(6, 1).realized;
  rho = match_on_window(big, 1, chain);
  rho_inv = inverse(rho);
  CHECK(rho_inv(big(rho(0))) == 1);
  CHECK(rho_inv(big(rho(1))) == 2);

  // through a power
  auto s = generic_surrogate(12, 2).realized;
  rho = match_on_window(s, 2, three);
  auto s2 = s * s;
  rho_inv = inverse(rho);
  for (Point n = 0; n < 3; ++n)
    CHECK(rho_inv(s2(rho(n))) == *three[n]);

  PartialInjection clash{1, 1};
  CHECK_THROWS_AS(match_on_window(g, 1, clash), Error);
  try {
    match_on_window(generic_surrogate(2, 1).realized, 1, PartialInjection{1, 2, 3, 0});
    FAIL("no 4-cycle available");
  } catch (InsufficientCyclesError const &e) {
    CHECK(e.needed.at(4) == 1);
  }
}

TEST_CASE("orbitals and signs")
{
  auto id = orbitals_and_signs(PLOrderAut::identity());
  CHECK(id.orbitals.empty());
  REQUIRE(id.fixed.size() == 1);
  CHECK_FALSE(id.fixed[0].lo.has_value());
  CHECK_FALSE(id.fixed[0].hi.has_value());

  auto shift = orbitals_and_signs(PLOrderAut({}, {{1, 1}}));
  REQUIRE(shift.orbitals.size() == 1);
  CHECK(shift.orbitals[0] == Orbital{std::nullopt, std::nullopt, 1});

  PLOrderAut doubling({}, {{2, 0}});
  auto rep = orbitals_and_signs(doubling);
  REQUIRE(rep.orbitals.size() == 2);
  CHECK(rep.orbitals[0] == Orbital{std::nullopt, Rational(0), -1});
  CHECK(rep.orbitals[1] == Orbital{Rational(0), std::nullopt, 1});
  REQUIRE(rep.fixed.size() == 1);
  CHECK(rep.fixed[0] == FixedComponent{Rational(0), Rational(0)});
  // sample each side
  CHECK(doubling(Rational(-3)) < Rational(-3));
  CHECK(doubling(Rational(1, 5)) > Rational(1, 5));
}

TEST_CASE("power invariance")
{
  auto step = power_invariance_check(PLOrderAut({}, {{1, 1}}), 3);
  CHECK(step.consistent);
  CHECK(step.power == step.base);

  auto sq = power_invariance_check(PLOrderAut({}, {{2, 0}}), 2);
  CHECK(sq.consistent);
  CHECK(sq.power == orbitals_and_signs(PLOrderAut({}, {{4, 0}})));

  auto mpt = power_invariance_check(DyadicMPT::shift(5, 1), 3);
  CHECK(mpt.power_census == std::map<std::size_t, std::size_t>{{32, 1}});
  CHECK(mpt.consistent);

  Rng rng(23);
  for (int c = 0; c < 60; ++c) {
    auto g = gen::random_pl(rng, 6);
    std::size_t n = gen::uniform(rng, 1, 5);
    auto r = power_invariance_check(g, n);
    CHECK(r.consistent);
    CHECK(r.base == orbitals_and_signs(g));
    CHECK(r.power == orbitals_and_signs(power(g, static_cast<std::int64_t>(n))));
  }
}

TEST_CASE("group laws for the base instances")
{
  Rng rng(24);
  SymmetricGroup sym;
  FiniteMetricSpace line({{0, Rational(1, 2), 1}, {Rational(1, 2), 0, Rational(1, 2)}, {1, Rational(1, 2), 0}});
  FiniteIsometryGroup iso(line);
  CHECK(iso.elements().size() == 2);
  for (int c = 0; c < 50; ++c) {
    auto a = sym.random_element(rng);
    auto b = sym.random_element(rng);
    CHECK(sym.multiply(a, sym.inverse(a)).is_identity());
    for (Point p = 0; p < 10; ++p)
      CHECK(sym.multiply(a, b)(p) == a(b(p)));
    CHECK(sym.uniform_distance(sym.multiply(a, b), sym.multiply(b, a)) == (a * b == b * a ? 0 : 1));
    auto x = iso.random_element(rng);
    for (Point p = 0; p < 3; ++p)
      for (Point q = 0; q < 3; ++q)
        CHECK(line(x(p), x(q)) == line(p, q));
  }
}
