#include <doctest.h>

#include <numeric>

#include "randiso/generators.hpp"
#include "randiso/rokhlin_engine.hpp"

using namespace randiso;

namespace
{

SymTildeGroup const tg{SymmetricGroup{}};
WindowPerm const e = WindowPerm::identity();

std::vector<Index> inverse_of(DyadicMPT const &t)
{
  std::vector<Index> back(t.size());
  for (Index i = 0; i < t.size(); ++i)
    back[t(i)] = i;
  return back;
}

// (k,Q)^-1 (C_sigma, S) (k,Q) = (w -> k(Qw)^-1 sigma k(S^-1 Q w), Q^-1 S Q)
SymTilde conjugate_by_formula(WindowPerm const &sigma, DyadicMPT const &s, SymTilde const &c)
{
  unsigned lv = std::max({c.f.level(), c.t.level(), s.level()});
  auto q = mpt_refine(c.t, lv);
  auto ss = mpt_refine(s, lv);
  auto s_inv = inverse_of(ss);
  auto q_inv = inverse_of(q);
  std::vector<WindowPerm> fiber;
  std::vector<Index> base(interval_count(lv));
  for (Index w = 0; w < interval_count(lv); ++w) {
    Index qw = q(w);
    fiber.push_back(inverse(c.f.at(qw, lv)) * sigma * c.f.at(s_inv[qw], lv));
    base[w] = q_inv[ss(qw)];
  }
  return {StepFn<WindowPerm>(lv, fiber), DyadicMPT(lv, base)};
}

// product-form membership written out point by point
bool inside(SymProductNeighborhood const &nb, SymTilde const &x)
{
  for (std::size_t i = 0; i < nb.fiber_tests.size(); ++i) {
    auto const &beta = nb.fiber_tests[i];
    unsigned lv = std::max({x.f.level(), beta.level(), nb.fiber_center.level()});
    std::size_t off = 0;
    for (std::size_t w = 0; w < interval_count(lv); ++w) {
      Point b = beta.at(w, lv);
      off += nb.fiber_center.at(w, lv)(b) != x.f.at(w, lv)(b);
    }
    if (!(dyadic(off, lv) < nb.fiber_radii[i]))
      return false;
  }
  for (auto const &a : nb.aut_sets) {
    unsigned lv = std::max({x.t.level(), a.level(), nb.aut_center.level()});
    auto fine = a.refine(lv);
    auto c = mpt_refine(nb.aut_center, lv);
    auto t = mpt_refine(x.t, lv);
    std::vector<int> mark(interval_count(lv));
    for (Index i : fine.members()) {
      mark[c(i)] ^= 1;
      mark[t(i)] ^= 2;
    }
    std::size_t diff = 0;
    for (int m : mark)
      diff += m == 1 || m == 2;
    if (!(dyadic(diff, lv) < nb.aut_radius))
      return false;
  }
  return true;
}

bool all_identity(StepFn<WindowPerm> const &f)
{
  return std::all_of(f.values().begin(), f.values().end(), [](auto const &v) { return v.is_identity(); });
}

SymProductNeighborhood product_target(Rng &rng, unsigned level, std::size_t offset)
{
  SymProductNeighborhood nb;
  auto p = static_cast<Point>(offset);
  nb.fiber_center = StepFn<WindowPerm>::constant(WindowPerm::from_cycles({{p, p + 1, p + 2}}));
  nb.fiber_tests = {StepFn<Point>::constant(p), StepFn<Point>(1, {p + 1, p + 3})};
  nb.fiber_radii = {Rational(1, 8), Rational(1, 8)};
  nb.aut_center = gen::aperiodic_mpt(rng, level, 64, 0);
  nb.aut_sets = {DyadicSet(1, {0}), DyadicSet(3, {1, 4, 6})};
  nb.aut_radius = Rational(1, 8);
  return nb;
}

} // namespace

TEST_CASE("tower product order")
{
  auto s = DyadicMPT::shift(2, 1);
  auto tower = rokhlin_tower(s, 4, 0);
  SymmetricGroup sym;
  auto h_e = StepFn<WindowPerm>::constant(e);
  CHECK(tower_product(sym, h_e, s, tower, 0).is_identity());

  auto a = WindowPerm::from_cycles({{0, 1}});
  auto b = WindowPerm::from_cycles({{1, 2}});
  auto c = WindowPerm::from_cycles({{0, 2, 3}});
  auto d = WindowPerm::from_cycles({{2, 3}});
  StepFn<WindowPerm> h(2, {a, b, c, d});
  CHECK(tower_product(sym, h, s, tower, 0) == d * c * b * a);
  CHECK_FALSE(tower_product(sym, h, s, tower, 0) == a * b * c * d);

  auto one = rokhlin_tower(DyadicMPT::identity(1), 1, 0);
  CHECK(tower_product(sym, StepFn<WindowPerm>(1, {a, b}), DyadicMPT::identity(1), one, 1) == b);

  auto loose = rokhlin_tower(DyadicMPT::shift(4, 1), 3, Rational(1, 16));
  CHECK_THROWS_AS(tower_product(sym, h, DyadicMPT::shift(4, 1), loose, loose.columns.front().front()), Error);
}

TEST_CASE("synthesis on the tower")
{
  Rng rng(51);
  SUBCASE("trivial target")
  {
    SynthesisTask task;
    task.s = gen::full_cycle(rng, 8);
    task.h = StepFn<WindowPerm>::constant(e);
    task.window = 3;
    task.height = 8;
    task.eps = Rational(1, 4);
    auto res = synthesize_conjugator(task);
    CHECK(res.success);
    CHECK(res.equation_ok);
    unsigned lv = res.g.level();
    auto back = inverse_of(mpt_refine(res.approx.periodic_map, lv));
    for (std::size_t y = 0; y < res.g.size(); ++y)
      for (Point n = 0; n < 3; ++n)
        CHECK(res.g[y](n) == res.sigma(res.g[back[y]](n)));
  }
  SUBCASE("h constant sigma")
  {
    auto sigma = generic_surrogate(16, 2).realized;
    SynthesisTask task;
    task.sigma = sigma;
    task.s = gen::aperiodic_mpt(rng, 8, 8, 0);
    task.h = StepFn<WindowPerm>::constant(sigma);
    task.window = 4;
    task.height = 8;
    task.eps = Rational(1, 4);
    auto res = synthesize_conjugator(task);
    CHECK(res.equation_ok);
    unsigned lv = res.g.level();
    auto back = inverse_of(mpt_refine(res.approx.periodic_map, lv));
    for (std::size_t y = 0; y < res.g.size(); ++y)
      for (Point n = 0; n < 4; ++n)
        CHECK(res.g[y](sigma(n)) == sigma(res.g[back[y]](n)));
  }
  SUBCASE("window 4, height 8, level 10")
  {
    SynthesisTask task;
    task.sigma = generic_surrogate(64, 4).realized;
    task.s = gen::full_cycle(rng, 10);
    task.h = gen::perm_step(rng, 3, 8);
    task.window = 4;
    task.height = 8;
    task.eps = Rational(1, 8);
    auto res = synthesize_conjugator(task);
    unsigned lv = res.g.level();
    auto s0_back = inverse_of(mpt_refine(res.approx.periodic_map, lv));
    auto s_back = inverse_of(mpt_refine(task.s, lv));
    std::size_t good = 0;
    for (std::size_t y = 0; y < res.g.size(); ++y) {
      auto const &hy = task.h.at(y, lv);
      bool agrees = true;
      for (Point n = 0; n < 4; ++n) {
        CHECK(res.g[y](hy(n)) == res.sigma(res.g[s0_back[y]](n)));
        agrees = agrees && res.g[y](hy(n)) == res.sigma(res.g[s_back[y]](n));
      }
      good += agrees;
    }
    CHECK(dyadic(good, lv) == res.agreement);
    CHECK(res.agreement >= Rational(7, 8));
    CHECK(res.success);
    for (auto const &row : res.equation)
      CHECK(row.ok);
  }
  SUBCASE("tolerance too small for the height")
  {
    SynthesisTask task;
    task.s = gen::full_cycle(rng, 6);
    task.h = StepFn<WindowPerm>::constant(e);
    task.height = 4;
    task.eps = Rational(1, 8);
    CHECK_THROWS_AS(synthesize_conjugator(task), Error);
  }
}

TEST_CASE("synthesis over the automorphism group")
{
  Rng rng(52);
  AutGroup grp;
  auto sigma = gen::full_cycle(rng, 8);
  auto tau = gen::full_cycle(rng, 8);
  auto s = gen::aperiodic_mpt(rng, 6, 4, 4);
  auto h = StepFn<DyadicMPT>::constant(tau);
  // tau^4 and sigma^4 both have four 64-cycles, so the match is exact
  auto res = synthesize_conjugator_metric(grp, sigma, s, h, 4, Rational(1, 2), Rational(1, 8));
  unsigned lv = res.g.level();
  auto back = inverse_of(mpt_refine(res.approx.periodic_map, lv));
  for (std::size_t y = 0; y < res.g.size(); ++y) {
    auto lhs = mpt_compose(mpt_inverse(res.g[y]), mpt_compose(sigma, res.g[back[y]]));
    CHECK(delta_u(lhs, tau) == 0);
  }
  CHECK(res.max_deviation == 0);
  CHECK(res.success);

  auto loose = synthesize_conjugator_metric(grp, sigma, s, StepFn<DyadicMPT>::constant(gen::random_mpt(rng, 3)), 4,
                                            Rational(1, 2), Rational(1));
  CHECK(loose.max_deviation <= 1);
  CHECK(loose.success);
}

TEST_CASE("conjugation into a neighbourhood")
{
  Rng rng(53);
  auto sigma = generic_surrogate(32, 2).realized;
  auto s = gen::aperiodic_mpt(rng, 8, 64, 0);

  SUBCASE("centered at the source")
  {
    SymProductNeighborhood nb;
    nb.fiber_center = StepFn<WindowPerm>::constant(sigma);
    nb.fiber_tests = {StepFn<Point>::constant(1)};
    nb.fiber_radii = {Rational(1, 8)};
    nb.aut_center = s;
    nb.aut_sets = {DyadicSet(2, {1, 2})};
    nb.aut_radius = Rational(1, 8);
    auto res = conjugate_into_neighborhood(tg, sigma, s, nb);
    CHECK(all_identity(res.conjugator.f));
    CHECK(res.conjugator.t.is_identity());
    CHECK(res.membership.member);
  }
  SUBCASE("aut part only")
  {
    SymProductNeighborhood nb;
    nb.fiber_center = StepFn<WindowPerm>::constant(e);
    nb.aut_center = gen::aperiodic_mpt(rng, 8, 64, 0);
    nb.aut_sets = {DyadicSet(1, {1}), DyadicSet(2, {0, 3})};
    nb.aut_radius = Rational(1, 8);
    auto res = conjugate_into_neighborhood(tg, sigma, s, nb);
    CHECK(all_identity(res.conjugator.f));
    CHECK(inside(nb, conjugate_by_formula(sigma, s, res.conjugator)));
  }
  SUBCASE("full product target")
  {
    for (int c = 0; c < 5; ++c) {
      auto nb = product_target(rng, 8, 0);
      auto res = conjugate_into_neighborhood(tg, sigma, s, nb);
      auto expected = conjugate_by_formula(sigma, s, res.conjugator);
      CHECK(tg.equal(expected, res.conjugated));
      CHECK(inside(nb, expected));
      CHECK(res.membership.member);
    }
  }
}

TEST_CASE("constant-fiber conjugation")
{
  Rng rng(54);
  auto h = gen::random_perm(rng, 4);
  auto t = gen::full_cycle(rng, 8);
  auto same = approx_conjugate_constant(tg, h, t, t, Rational(1, 8));
  CHECK(same.conjugator.t.is_identity());
  CHECK(same.certified == 0);

  auto s = gen::full_cycle(rng, 8);
  auto exact = approx_conjugate_constant(tg, h, t, s, Rational(1, 8));
  CHECK(exact.certified == 0);
  CHECK(exact.ok);

  std::vector<Index> two(256);
  for (Index i = 0; i < 256; ++i)
    two[i] = (i % 128 == 127) ? i - 127 : i + 1;
  DyadicMPT halves(8, two);
  auto near = approx_conjugate_constant(tg, h, t, halves, Rational(1, 8));
  auto r = near.conjugator.t;
  auto moved = mpt_compose(mpt_inverse(r), mpt_compose(t, r));
  std::size_t off = 0;
  for (Index i = 0; i < 256; ++i)
    off += moved(i) != halves(i);
  // the fibers agree, so L_u is the measure where the maps differ
  CHECK(near.certified == dyadic(off, 8));
  CHECK(near.certified < Rational(1, 8));
  CHECK(near.ok);
}

TEST_CASE("diagonal conjugation")
{
  Rng rng(55);
  auto base = generic_surrogate(64, 1).realized;
  std::size_t block = base.window();
  auto s = gen::aperiodic_mpt(rng, 8, 64, 0);
  std::vector<std::pair<WindowPerm, DyadicMPT>> sources;
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<Point> m(block * (i + 1));
    std::iota(m.begin(), m.end(), Point{0});
    for (std::size_t p = 0; p < block; ++p)
      m[i * block + p] = static_cast<Point>(i * block + base.map()[p]);
    sources.emplace_back(WindowPerm(std::move(m)), s);
  }

  SUBCASE("one coordinate")
  {
    auto nb = product_target(rng, 8, 0);
    auto res = diagonal_experiment(tg, {sources[0]}, {nb}, {0, block});
    CHECK(res.success);
    CHECK(inside(nb, conjugate_by_formula(sources[0].first, s, res.conjugator)));
  }
  SUBCASE("targets at the sources")
  {
    std::vector<SymProductNeighborhood> targets;
    for (auto const &[sigma, t] : sources) {
      SymProductNeighborhood nb;
      nb.fiber_center = StepFn<WindowPerm>::constant(sigma);
      nb.fiber_tests = {StepFn<Point>::constant(2)};
      nb.fiber_radii = {Rational(1, 8)};
      nb.aut_center = t;
      nb.aut_sets = {DyadicSet(1, {0})};
      nb.aut_radius = Rational(1, 8);
      targets.push_back(nb);
    }
    auto res = diagonal_experiment(tg, sources, targets, {0, block, 2 * block});
    CHECK(res.success);
    CHECK(all_identity(res.conjugator.f));
    CHECK(res.conjugator.t.is_identity());
  }
  SUBCASE("disjoint blocks")
  {
    auto first = product_target(rng, 8, 0);
    auto second = product_target(rng, 8, block);
    second.aut_center = first.aut_center;
    second.aut_sets = first.aut_sets;
    auto res = diagonal_experiment(tg, sources, {first, second}, {0, block, 2 * block});
    CHECK(res.success);
    CHECK(inside(first, conjugate_by_formula(sources[0].first, s, res.conjugator)));
    CHECK(inside(second, conjugate_by_formula(sources[1].first, s, res.conjugator)));
  }
  SUBCASE("different maps per coordinate")
  {
    auto other = sources;
    other[1].second = gen::aperiodic_mpt(rng, 8, 64, 0);
    auto nb = product_target(rng, 8, 0);
    try {
      diagonal_experiment(tg, other, {nb, nb}, {0, block, 2 * block});
      FAIL("expected an unsupported simultaneous match");
    } catch (Error const &err) {
      CHECK(err.kind() == ErrorKind::SimultaneousMatchUnsupported);
    }
  }
}
