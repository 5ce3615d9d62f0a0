#include <doctest.h>

#include "randiso/generators.hpp"
#include "randiso/l0_space.hpp"

using namespace randiso;

namespace
{

SymmetricGroup const sym;

WindowPerm const e = WindowPerm::identity();
WindowPerm const swap01 = WindowPerm::from_cycles({{0, 1}});

// d^_u by hand: measure of the intervals where the values differ
Rational displaced_mass(StepFn<WindowPerm> const &f, StepFn<WindowPerm> const &h)
{
  unsigned level = std::max(f.level(), h.level());
  std::size_t n = 0;
  for (std::size_t i = 0; i < interval_count(level); ++i)
    n += !(f.at(i, level) == h.at(i, level));
  return dyadic(n, level);
}

} // namespace

TEST_CASE("integrated metrics")
{
  auto discrete = [](Point x, Point y) { return Rational(x == y ? 0 : 1); };
  auto a = StepFn<Point>::constant(0);
  auto split = StepFn<Point>(1, {0, 1});
  CHECK(dhat(a, a, discrete) == 0);
  CHECK(dhat(a, split, discrete) == Rational(1, 2));

  auto f = StepFn<WindowPerm>::constant(e);
  auto h = StepFn<WindowPerm>(2, {swap01, e, e, e});
  CHECK(dhat_u(sym, f, h) == Rational(1, 4));
  CHECK(dhat_p(sym, f, h) == Rational(1, 4) * Rational(3, 4));

  Rng rng(31);
  for (int c = 0; c < 100; ++c) {
    auto x = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 4, true);
    auto y = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 4, true);
    auto z = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 4, true);
    CHECK(dhat_u(sym, x, y) == displaced_mass(x, y));
    CHECK(dhat_u(sym, x, y) == dhat_u(sym, y, x));
    CHECK(dhat_u(sym, x, z) <= dhat_u(sym, x, y) + dhat_u(sym, y, z));
    CHECK(dhat_p(sym, x, z) <= dhat_p(sym, x, y) + dhat_p(sym, y, z));
    CHECK(dhat_p(sym, x, y) <= dhat_u(sym, x, y));
    CHECK(dhat_u(sym, x.refine(5), y) == dhat_u(sym, x, y));
    // bi-invariance
    CHECK(dhat_u(sym, l0_product(sym, z, l0_product(sym, x, z)), l0_product(sym, z, l0_product(sym, y, z))) ==
          dhat_u(sym, x, y));
  }
}

TEST_CASE("pointwise group operations")
{
  Rng rng(32);
  auto f = gen::perm_step(rng, 2, 5);
  auto one = l0_product(sym, f, l0_inverse(sym, f));
  for (auto const &v : one.values())
    CHECK(v.is_identity());

  auto g = gen::random_perm(rng, 5);
  auto x = gen::random_perm(rng, 5);
  auto conj = l0_conjugate(sym, StepFn<WindowPerm>::constant(g), StepFn<WindowPerm>::constant(x));
  CHECK(conj.size() == 1);
  CHECK(conj[0] == inverse(x) * g * x);

  auto p = StepFn<WindowPerm>(1, {swap01, WindowPerm::from_cycles({{1, 2}})});
  auto q = StepFn<WindowPerm>(1, {WindowPerm::from_cycles({{1, 2}}), swap01});
  auto pq = l0_product(sym, p, q);
  for (Point n = 0; n < 3; ++n) {
    CHECK(pq[0](n) == p[0](q[0](n)));
    CHECK(pq[1](n) == p[1](q[1](n)));
  }
}

TEST_CASE("lower semicontinuity probe")
{
  auto f = StepFn<WindowPerm>(1, {swap01, e});
  auto h = StepFn<WindowPerm>::constant(e);

  auto flat = lsc_probe(sym, f, h, {f, f, f});
  CHECK(flat.holds);
  CHECK(flat.tail_min == flat.base);

  // seq_k differs from f on the first interval of level k by a far transposition
  std::vector<StepFn<WindowPerm>> seq;
  for (unsigned k = 1; k <= 8; ++k) {
    auto fine = f.refine(k);
    auto vals = fine.values();
    vals[0] = vals[0] * WindowPerm::from_cycles({{k + 3, k + 4}});
    seq.emplace_back(k, std::move(vals));
  }
  auto rep = lsc_probe(sym, f, h, seq);
  CHECK(rep.holds);
  for (std::size_t k = 0; k < seq.size(); ++k)
    CHECK(rep.uniform[k] == displaced_mass(seq[k], h));
  CHECK(rep.base <= rep.tail_min);

  // not converging to f: seq_k = h, so d^_u(seq_k, h) = 0 < d^_u(f, h)
  auto off = lsc_probe(sym, f, h, {h, h, h});
  CHECK_FALSE(off.holds);
  CHECK(off.base == Rational(1, 2));

  CHECK_THROWS_AS(lsc_probe(sym, f, h, {f, h}), Error);
}

TEST_CASE("constant generic conjugator")
{
  auto g = generic_surrogate(4, 2).realized;
  auto same = constant_generic_conjugator(g, StepFn<WindowPerm>::constant(g), 4, 0);
  CHECK(same.distance == 0);

  Rng rng(33);
  auto x = gen::random_perm(rng, g.window());
  auto moved = constant_generic_conjugator(g, StepFn<WindowPerm>::constant(inverse(x) * g * x), 4, 0);
  CHECK(moved.distance == 0);

  auto f = StepFn<WindowPerm>(1, {WindowPerm::from_cycles({{0, 1, 2}}), WindowPerm::from_cycles({{0, 3}})});
  auto res = constant_generic_conjugator(g, f, 4, 0);
  CHECK(res.distance == 0);
  for (std::size_t i = 0; i < 2; ++i) {
    auto rho = res.conjugator.at(i, 1);
    auto rho_inv = inverse(rho);
    for (Point n = 0; n < 4; ++n)
      CHECK(rho_inv(g(rho(n))) == f[i](n));
  }

  // a 5-cycle on the window cannot come from a surrogate with cycles up to 4
  auto bad = StepFn<WindowPerm>::constant(WindowPerm::from_cycles({{0, 1, 2, 3, 4}}));
  try {
    constant_generic_conjugator(g, bad, 5, 0);
    FAIL("expected Unmatchable");
  } catch (UnmatchableError const &err) {
    CHECK(err.interval == 0);
  }
}
