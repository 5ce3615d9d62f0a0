#include <doctest.h>

#include "randiso/generators.hpp"
#include "randiso/randomization_group.hpp"

using namespace randiso;

namespace
{

using Sym = TildeGroup<SymmetricGroup>;
using Elt = TildeElement<SymmetricGroup>;

Sym const tg{SymmetricGroup{}};
WindowPerm const e = WindowPerm::identity();
WindowPerm const swap01 = WindowPerm::from_cycles({{0, 1}});

Elt random_element(Rng &rng, unsigned max_level = 3)
{
  return {gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, max_level)), 4, true),
          gen::coin(rng) ? gen::sparse_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 2, max_level)))
                         : gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, max_level)))};
}

// the action written out: ((f,T) alpha)(w) = f(w)(alpha(T^-1 w))
StepFn<Point> act_by_hand(Elt const &a, StepFn<Point> const &alpha)
{
  unsigned level = std::max({a.f.level(), a.t.level(), alpha.level()});
  auto t = mpt_refine(a.t, level);
  std::vector<Index> back(t.size());
  for (Index i = 0; i < t.size(); ++i)
    back[t(i)] = i;
  std::vector<Point> out;
  for (std::size_t w = 0; w < interval_count(level); ++w)
    out.push_back(a.f.at(w, level)(alpha.at(back[w], level)));
  return {level, out};
}

bool same_field(StepFn<Point> const &a, StepFn<Point> const &b)
{
  unsigned level = std::max(a.level(), b.level());
  for (std::size_t i = 0; i < interval_count(level); ++i)
    if (a.at(i, level) != b.at(i, level))
      return false;
  return true;
}

// brute-force L_u over every field at the working level with values in a
// set large enough to separate any pair of values
Rational lu_brute(Elt const &a, Elt const &b, std::size_t points)
{
  unsigned level = std::max({a.f.level(), a.t.level(), b.f.level(), b.t.level()});
  std::size_t cells = interval_count(level);
  std::vector<Point> digits(cells, 0);
  Rational best = 0;
  while (true) {
    StepFn<Point> alpha(level, digits);
    best = max(best, dhat_x(SymmetricGroup{}, act_by_hand(a, alpha), act_by_hand(b, alpha)));
    std::size_t k = 0;
    while (k < cells && ++digits[k] == points)
      digits[k++] = 0;
    if (k == cells)
      break;
  }
  return best;
}

} // namespace

TEST_CASE("product, inverse and the action")
{
  Rng rng(41);
  auto t = gen::random_mpt(rng, 3);
  auto s = gen::random_mpt(rng, 3);
  auto ce = StepFn<WindowPerm>::constant(e);
  CHECK(tg.equal(tg.product(Elt{ce, t}, Elt{ce, s}), Elt{ce, mpt_compose(t, s)}));

  auto f = gen::perm_step(rng, 2, 4);
  auto g = gen::perm_step(rng, 1, 4);
  auto id0 = DyadicMPT::identity(0);
  CHECK(tg.equal(tg.product(Elt{f, id0}, Elt{g, id0}), Elt{l0_product(SymmetricGroup{}, f, g), id0}));

  for (int c = 0; c < 100; ++c) {
    auto a = random_element(rng);
    auto b = random_element(rng);
    auto alpha = gen::field(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 6);
    auto beta = gen::field(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 6);
    CHECK(tg.equal(tg.product(a, tg.inverse(a)), tg.identity()));
    CHECK(same_field(tg.act(a, alpha), act_by_hand(a, alpha)));
    CHECK(same_field(tg.act(tg.product(a, b), alpha), tg.act(a, tg.act(b, alpha))));
    CHECK(same_field(tg.act(tg.inverse(a), tg.act(a, alpha)), alpha));
    CHECK(tg.field_distance(tg.act(a, alpha), tg.act(a, beta)) == tg.field_distance(alpha, beta));
  }

  auto alpha = StepFn<Point>::constant(0);
  auto half = Elt{StepFn<WindowPerm>(1, {swap01, e}), id0};
  CHECK(same_field(tg.act(half, alpha), StepFn<Point>(1, {1, 0})));
  CHECK(same_field(tg.act(tg.identity(), StepFn<Point>(1, {3, 2})), StepFn<Point>(1, {3, 2})));
}

TEST_CASE("pointwise metric")
{
  Rng rng(42);
  auto a = random_element(rng);
  CHECK(pointwise_metric(tg, a, a, 16).value == 0);
  auto shifted = Elt{StepFn<WindowPerm>::constant(e), DyadicMPT::shift(2, 1)};
  auto v = pointwise_metric(tg, tg.identity(), shifted, 16).value;
  CHECK(v > 0);
  CHECK(v <= 1);
  for (int c = 0; c < 20; ++c) {
    auto x = random_element(rng);
    auto y = random_element(rng);
    auto lo = pointwise_metric(tg, x, y, 16);
    auto hi = pointwise_metric(tg, x, y, 32);
    CHECK(lo.value <= hi.value);
    CHECK(hi.value <= lo.value + lo.truncation_bound);
  }
}

TEST_CASE("neighbourhood translations")
{
  Rng rng(43);
  auto center = tg.identity();
  auto constant = nbhd_product_to_pointwise(tg, center, StepFn<Point>::constant(2), Rational(1, 4), 50, 1);
  CHECK(constant.pieces == 1);
  CHECK(constant.product.aut_radius == Rational(1, 8));
  CHECK(constant.certificate.passed());

  auto two = nbhd_product_to_pointwise(tg, center, StepFn<Point>(1, {0, 1}), Rational(1, 4), 100, 2);
  CHECK(two.pieces == 2);
  CHECK(two.product.aut_radius == Rational(1, 16));
  for (auto const &r : two.product.fiber_radii)
    CHECK(r == Rational(1, 16));
  CHECK(two.certificate.passed());

  auto whole = nbhd_product_to_pointwise(tg, random_element(rng), StepFn<Point>(1, {0, 3}), Rational(1), 50, 3);
  CHECK(whole.certificate.passed());

  auto empty = nbhd_pointwise_to_product(tg, center, DyadicSet::empty(2), StepFn<Point>::constant(1),
                                         Rational(1, 4), 0, 1, 50, 4);
  CHECK(empty.aut_certificate.passed());
  CHECK(empty.s == 1);

  auto b = DyadicSet(2, {0, 3});
  auto ab = nbhd_pointwise_to_product(tg, center, b, StepFn<Point>(1, {0, 1}), Rational(1, 4), 0, 1, 100, 5);
  CHECK(ab.v1.radii.front() == Rational(1, 16));
  CHECK(ab.aut_certificate.passed());
  CHECK(ab.fiber_certificate.passed());

  auto alpha = StepFn<Point>::constant(2);
  auto g = nbhd_pointwise_to_product(tg, center, b, alpha, Rational(1, 4), 0, 1, 20, 6);
  CHECK(same_field(g.v34.tests.front(), alpha));
  CHECK(g.v34.radii.front() == Rational(1, 8));

  CHECK_THROWS_AS(nbhd_pointwise_to_product(tg, center, b, alpha, Rational(1, 4), 1, 1, 1, 7), Error);
}

TEST_CASE("exact uniform distance on the discrete fiber")
{
  Rng rng(44);
  auto a = random_element(rng);
  CHECK(lu_exact_discrete(tg, a, a) == 0);

  // h != e on [3/4,1), R moves [0,1/2)
  Elt x{StepFn<WindowPerm>(2, {e, e, e, swap01}), DyadicMPT(2, {1, 0, 2, 3})};
  CHECK(lu_exact_discrete(tg, x, tg.identity()) == Rational(3, 4));
  auto est = lu_estimate(tg, Elt{x.f.refine(6), mpt_refine(x.t, 6)}, tg.identity(), 64, 9);
  CHECK(est.value <= Rational(3, 4));
  CHECK(est.value >= Rational(3, 4) - Rational(1, 64));

  Elt cyc{StepFn<WindowPerm>::constant(e), DyadicMPT::shift(3, 1)};
  CHECK(lu_exact_discrete(tg, cyc, tg.identity()) == 1);
  CHECK(lu_estimate(tg, cyc, tg.identity(), 64, 9).value == 1);

  // brute force over every field at levels <= 2
  for (int c = 0; c < 25; ++c) {
    auto p = random_element(rng, 2);
    auto q = random_element(rng, 2);
    Rational exact = lu_exact_discrete(tg, p, q);
    CHECK(lu_brute(p, q, 8) == exact);
    auto b = lu_bounds(tg, p, q);
    CHECK(b.lower <= exact);
    CHECK(exact <= b.upper);
    auto s = lu_estimate(tg, p, q, 32, static_cast<std::uint64_t>(c));
    CHECK(s.value <= exact);
    CHECK(s.value >= exact - Rational(1, 64));
    // bi-invariance and triangle
    auto r = random_element(rng, 2);
    auto d = random_element(rng, 2);
    CHECK(lu_exact_discrete(tg, tg.product(r, tg.product(p, d)), tg.product(r, tg.product(q, d))) == exact);
    CHECK(lu_exact_discrete(tg, p, d) <= exact + lu_exact_discrete(tg, q, d));
  }
}

TEST_CASE("two-sided bounds")
{
  auto id = tg.identity();
  auto same = lu_bounds(tg, id, id);
  CHECK(same.lower == 0);
  CHECK(same.upper == 0);

  Elt cyc{StepFn<WindowPerm>::constant(e), DyadicMPT::shift(3, 1)};
  auto full = lu_bounds(tg, cyc, id);
  CHECK(full.r == 1);
  CHECK(full.lower == Rational(1, 8));
  CHECK(full.upper == 1);

  Elt quarter{StepFn<WindowPerm>(2, {swap01, e, e, e}), DyadicMPT::identity(2)};
  auto q = lu_bounds(tg, quarter, id);
  CHECK(q.lower == Rational(1, 4));
  CHECK(q.upper == Rational(1, 4));
  CHECK(lu_exact_discrete(tg, quarter, id) == Rational(1, 4));

  // finite X: the estimate stays inside the bounds
  FiniteMetricSpace line({{0, Rational(1, 2), 1}, {Rational(1, 2), 0, Rational(1, 2)}, {1, Rational(1, 2), 0}});
  TildeGroup<FiniteIsometryGroup> fg{FiniteIsometryGroup(line)};
  Rng rng(45);
  auto const &flip = fg.base().elements().back();
  for (int c = 0; c < 50; ++c) {
    unsigned level = static_cast<unsigned>(gen::uniform(rng, 0, 4));
    std::vector<WindowPerm> vals;
    for (std::size_t i = 0; i < interval_count(level); ++i)
      vals.push_back(gen::coin(rng) ? flip : fg.base().identity());
    TildeElement<FiniteIsometryGroup> a{StepFn<WindowPerm>(level, vals), gen::random_mpt(rng, level)};
    auto b = lu_bounds(fg, a, fg.identity());
    auto est = lu_estimate(fg, a, fg.identity(), 32, static_cast<std::uint64_t>(c));
    CHECK(b.lower <= est.value);
    CHECK(est.value <= b.upper);
    CHECK_THROWS_AS(lu_exact_discrete(fg, a, fg.identity()), Error);
  }
}
