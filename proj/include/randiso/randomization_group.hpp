#ifndef RANDISO_RANDOMIZATION_GROUP_HPP
#define RANDISO_RANDOMIZATION_GROUP_HPP

#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "randiso/base_groups.hpp"
#include "randiso/l0_space.hpp"

/**
 * @file randomization_group.hpp
 * @brief The semidirect product L0([0,1],G) x| Aut([0,1]) acting on
 *        L0([0,1],X), with its pointwise and uniform metrics.
 *
 * An element (f,T) acts by ((f,T) a)(w) = f(w)(a(T^-1 w)). Products and
 * inverses are the ones this action forces:
 *   (f,T)(g,S) = (f . (g o T^-1), T S),   (f,T)^-1 = (w -> f(T w)^-1, T^-1).
 */

namespace randiso
{

template <ActingGroup G>
struct TildeElement
{
  StepFn<typename G::element_type> f;
  DyadicMPT t;
};

template <ActingGroup G>
class TildeGroup
{
public:
  using element_type = typename G::element_type;
  using point_type = typename G::point_type;
  using Fiber = StepFn<element_type>;
  using Field = StepFn<point_type>;
  using Tilde = TildeElement<G>;

  explicit TildeGroup(G base) : _base(std::move(base)) {}

  G const &base() const { return _base; }

  Tilde identity() const { return {Fiber::constant(_base.identity()), DyadicMPT::identity(0)}; }

  /// (C_g, T)
  Tilde constant(element_type const &g, DyadicMPT t) const
  {
    return {Fiber::constant(g), std::move(t)};
  }

  Tilde product(Tilde const &a, Tilde const &b) const
  {
    Fiber shifted = compose_map(b.f, mpt_inverse(a.t));
    return {l0_product(_base, a.f, shifted), mpt_compose(a.t, b.t)};
  }

  Tilde inverse(Tilde const &a) const
  {
    return {l0_inverse(_base, compose_map(a.f, a.t)), mpt_inverse(a.t)};
  }

  /// x^c = c^-1 x c
  Tilde conjugate(Tilde const &x, Tilde const &c) const
  {
    return product(inverse(c), product(x, c));
  }

  Field act(Tilde const &a, Field const &alpha) const
  {
    unsigned level = std::max({a.f.level(), a.t.level(), alpha.level()});
    DyadicMPT inv = mpt_inverse(mpt_refine(a.t, level));
    std::vector<point_type> out;
    out.reserve(interval_count(level));
    for (std::size_t i = 0; i < interval_count(level); ++i)
      out.push_back(_base.apply(a.f.at(i, level), alpha.at(inv(static_cast<Index>(i)), level)));
    return Field(level, std::move(out));
  }

  bool equal(Tilde const &a, Tilde const &b) const
  {
    if (!(a.t == b.t))
      return false;
    unsigned level = std::max(a.f.level(), b.f.level());
    for (std::size_t i = 0; i < interval_count(level); ++i)
      if (!_base.equal(a.f.at(i, level), b.f.at(i, level)))
        return false;
    return true;
  }

  /// d^ between two fields over X.
  Rational field_distance(Field const &a, Field const &b) const { return dhat_x(_base, a, b); }

private:
  G _base;
};

// Pointwise metric ------------------------------------------------------------

/// The m-th test function of the canonical family: level-0 functions first,
/// then level 1, 2, 3, each level in base-k counting order over the marked
/// points (interval 0 is the least significant digit).
template <ActingGroup G>
std::optional<StepFn<typename G::point_type>> test_function(G const &grp, std::size_t m)
{
  auto marked = grp.marked_points();
  std::size_t k = marked.size();
  for (unsigned level = 0; level <= 3; ++level) {
    std::size_t cells = interval_count(level);
    std::size_t count = 1;
    for (std::size_t c = 0; c < cells; ++c)
      count *= k;
    if (m < count) {
      std::vector<typename G::point_type> values;
      for (std::size_t c = 0; c < cells; ++c) {
        values.push_back(marked[m % k]);
        m /= k;
      }
      return StepFn<typename G::point_type>(level, std::move(values));
    }
    m -= count;
  }
  return std::nullopt;
}

struct PointwiseValue
{
  Rational value;
  /// The omitted tail is at most this (distances are bounded by the
  /// diameter, at most 1).
  Rational truncation_bound;
};

/// sum_m 2^-(m+1) d^(a alpha_m, b alpha_m) over the first `budget` test
/// functions.
template <ActingGroup G>
PointwiseValue pointwise_metric(TildeGroup<G> const &tg, TildeElement<G> const &a,
                                TildeElement<G> const &b, std::size_t budget)
{
  PointwiseValue out{0, pow2_inverse(static_cast<unsigned>(budget)) * tg.base().diameter()};
  for (std::size_t m = 0; m < budget; ++m) {
    auto alpha = test_function(tg.base(), m);
    if (!alpha) {
      out.truncation_bound = 0;
      break;
    }
    out.value += pow2_inverse(static_cast<unsigned>(m + 1)) *
                 tg.field_distance(tg.act(a, *alpha), tg.act(b, *alpha));
  }
  return out;
}

// Uniform metric L_u ------------------------------------------------------------

/// b^-1 a at a single level: L_u(a,b) = L_u(b^-1 a, identity).
template <ActingGroup G>
struct ReducedPair
{
  unsigned level = 0;
  StepFn<typename G::element_type> h;
  DyadicMPT r;
};

template <ActingGroup G>
ReducedPair<G> reduce_pair(TildeGroup<G> const &tg, TildeElement<G> const &a,
                           TildeElement<G> const &b)
{
  auto c = tg.product(tg.inverse(b), a);
  unsigned level = std::max(c.f.level(), c.t.level());
  return {level, c.f.refine(level), mpt_refine(c.t, level)};
}

/// mu({h != e} u {R != id}) for (h,R) = b^-1 a; needs a discrete base metric.
template <ActingGroup G>
Rational lu_exact_discrete(TildeGroup<G> const &tg, TildeElement<G> const &a,
                           TildeElement<G> const &b)
{
  auto const &grp = tg.base();
  if (!grp.is_discrete())
    throw Error(ErrorKind::NotDiscrete, "the base metric is not discrete; use lu_bounds");
  auto red = reduce_pair(tg, a, b);
  auto e = grp.identity();
  std::size_t count = 0;
  for (std::size_t i = 0; i < interval_count(red.level); ++i)
    if (!grp.equal(red.h[i], e) || red.r(static_cast<Index>(i)) != i)
      ++count;
  return dyadic(count, red.level);
}

struct LuBounds
{
  Rational r;
  /// (r/8) mu(B) + int_A d_u(h, e)
  Rational lower;
  /// mu(B) + int_A d_u(h, e)
  Rational upper;
  /// (r/8) max(mu(B), d^_u(h, C_e))
  Rational max_lower;
  /// d^_u(h, C_e) + Delta_u(R, Id)
  Rational sum_upper;
  Rational fiber_distance;  // d^_u(h, C_e)
  Rational aut_distance;    // Delta_u(R, Id) = mu(B)
  Rational fixed_integral;  // int_A d_u(h, e)
};

/// Anchor pair at maximal distance among the marked points.
template <ActingGroup G>
std::pair<typename G::point_type, typename G::point_type> default_anchor(G const &grp)
{
  auto marked = grp.marked_points();
  std::pair<typename G::point_type, typename G::point_type> best{marked.front(), marked.front()};
  Rational dist = 0;
  for (auto const &x : marked)
    for (auto const &y : marked)
      if (grp.point_distance(x, y) > dist) {
        dist = grp.point_distance(x, y);
        best = {x, y};
      }
  return best;
}

/**
 * Two-sided bounds for L_u(a,b) with A = {h != e and R w = w} and
 * B = {R w != w}, (h,R) = b^-1 a. Requires a metric bounded by one and an
 * anchor pair at positive distance r.
 */
template <ActingGroup G>
LuBounds lu_bounds(TildeGroup<G> const &tg, TildeElement<G> const &a, TildeElement<G> const &b,
                   std::optional<std::pair<typename G::point_type, typename G::point_type>> anchor =
                     std::nullopt)
{
  auto const &grp = tg.base();
  if (grp.diameter() > 1)
    throw Error(ErrorKind::InvalidArgument, "the bounds assume a metric bounded by 1");
  auto [x1, x2] = anchor ? *anchor : default_anchor(grp);
  LuBounds out;
  out.r = grp.point_distance(x1, x2);
  if (out.r == 0)
    throw Error(ErrorKind::DegenerateSpace, "anchor points are at distance 0");

  auto red = reduce_pair(tg, a, b);
  auto e = grp.identity();
  std::size_t moved = 0;
  Rational fixed_sum = 0;
  Rational fiber_sum = 0;
  for (std::size_t i = 0; i < interval_count(red.level); ++i) {
    Rational du = grp.uniform_distance(red.h[i], e);
    fiber_sum += du;
    if (red.r(static_cast<Index>(i)) != i)
      ++moved;
    else
      fixed_sum += du;
  }
  Rational scale = pow2_inverse(red.level);
  out.aut_distance = dyadic(moved, red.level);
  out.fixed_integral = fixed_sum * scale;
  out.fiber_distance = fiber_sum * scale;
  out.lower = out.r / 8 * out.aut_distance + out.fixed_integral;
  out.upper = out.aut_distance + out.fixed_integral;
  out.max_lower = out.r / 8 * max(out.aut_distance, out.fiber_distance);
  out.sum_upper = out.fiber_distance + out.aut_distance;
  return out;
}

struct LuEstimate
{
  /// max of d^(a alpha, b alpha) over every witness tried
  Rational value;
  /// Name of the witness that attained the value.
  std::string best;
  /// d^ for each seeded random alpha, in sampling order.
  std::vector<Rational> sampled;
  std::size_t witnesses = 0;
};

namespace detail
{

/// Cycles of R at its own level, each in mapping order from its smallest index.
inline std::vector<std::vector<Index>> orbit_cycles(DyadicMPT const &r)
{
  return mpt_cycles(r).cycles;
}

/// Best assignment of finite X along one cycle: maximizes
/// sum_j d(h_{c_{j+1}}(alpha(c_j)), alpha(c_{j+1})) exactly.
template <ActingGroup G>
std::vector<typename G::point_type>
best_cycle_assignment(G const &grp, std::vector<typename G::element_type> const &h_on_cycle,
                      std::vector<typename G::point_type> const &pts)
{
  std::size_t len = h_on_cycle.size();
  std::size_t p = pts.size();
  auto weight = [&](std::size_t j, std::size_t x, std::size_t y) {
    // contribution at c_j when alpha(c_{j-1}) = pts[x], alpha(c_j) = pts[y]
    return grp.point_distance(grp.apply(h_on_cycle[j], pts[x]), pts[y]);
  };

  Rational best_total = -1;
  std::vector<std::size_t> best_path;
  for (std::size_t s = 0; s < p; ++s) {
    std::vector<Rational> score(p, Rational(-1));
    score[s] = 0;
    std::vector<std::vector<std::size_t>> parent(len, std::vector<std::size_t>(p, s));
    for (std::size_t j = 1; j < len; ++j) {
      std::vector<Rational> next(p, Rational(-1));
      for (std::size_t x = 0; x < p; ++x) {
        if (score[x] < 0)
          continue;
        for (std::size_t y = 0; y < p; ++y) {
          Rational v = score[x] + weight(j, x, y);
          if (v > next[y]) {
            next[y] = v;
            parent[j][y] = x;
          }
        }
      }
      score = std::move(next);
    }
    for (std::size_t last = 0; last < p; ++last) {
      if (score[last] < 0)
        continue;
      Rational total = score[last] + weight(0, last, s);
      if (total > best_total) {
        best_total = total;
        best_path.assign(len, s);
        std::size_t cur = last;
        for (std::size_t j = len; j-- > 1;) {
          best_path[j] = cur;
          cur = parent[j][cur];
        }
        best_path[0] = s;
      }
    }
  }
  std::vector<typename G::point_type> out;
  for (auto idx : best_path)
    out.push_back(pts[idx]);
  return out;
}

} // namespace detail

/**
 * Lower estimate of L_u(a,b) = sup over fields alpha of d^(a alpha, b alpha).
 * Witnesses: constant fields on the marked points; fields alternating between
 * the anchor pair along the cycles of R; for S_infinity, fields taking fresh
 * values along each cycle and a moved point on the fixed part; for a finite X,
 * the exact per-cycle optimum; then `budget` seeded random fields.
 */
template <ActingGroup G>
LuEstimate lu_estimate(TildeGroup<G> const &tg, TildeElement<G> const &a, TildeElement<G> const &b,
                       std::size_t budget, std::uint64_t seed)
{
  using P = typename G::point_type;
  auto const &grp = tg.base();
  auto red = reduce_pair(tg, a, b);
  unsigned level = red.level;
  std::size_t cells = interval_count(level);
  auto cycles = detail::orbit_cycles(red.r);
  auto marked = grp.marked_points();

  LuEstimate out;
  out.value = 0;
  out.best = "none";
  auto consider = [&](std::string const &name, std::vector<P> values) {
    StepFn<P> alpha(level, std::move(values));
    Rational d = tg.field_distance(tg.act(a, alpha), tg.act(b, alpha));
    ++out.witnesses;
    if (d > out.value) {
      out.value = d;
      out.best = name;
    }
    return d;
  };

  for (auto const &x : marked)
    consider("constant " + grp.format_point(x), std::vector<P>(cells, x));

  auto [x1, x2] = default_anchor(grp);
  {
    std::vector<P> alt(cells, x1);
    for (auto const &c : cycles)
      for (std::size_t j = 0; j < c.size(); ++j)
        alt[c[j]] = j % 2 == 0 ? x1 : x2;
    consider("alternating", std::move(alt));
  }

  if constexpr (std::same_as<typename G::element_type, WindowPerm> &&
                std::same_as<P, Point>) {
    if (grp.is_discrete()) {
      std::size_t step = 1;
      for (auto const &v : red.h.values())
        step = std::max(step, v.support_bound());
      std::vector<P> fresh(cells, 0);
      for (auto const &c : cycles) {
        if (c.size() == 1) {
          auto const &v = red.h[c.front()];
          Point p = 0;
          while (p < v.window() && v(p) == p)
            ++p;
          fresh[c.front()] = p < v.window() ? p : 0;
          continue;
        }
        for (std::size_t j = 0; j < c.size(); ++j)
          fresh[c[j]] = static_cast<P>(j * step);
      }
      consider("fresh values", std::move(fresh));
    }
  }

  if constexpr (requires { grp.finite_points(); }) {
    if (auto pts = grp.finite_points()) {
      std::vector<P> exact(cells, pts->front());
      for (auto const &c : cycles) {
        std::vector<typename G::element_type> hs;
        for (Index i : c)
          hs.push_back(red.h[i]);
        auto assign = detail::best_cycle_assignment(grp, hs, *pts);
        for (std::size_t j = 0; j < c.size(); ++j)
          exact[c[j]] = assign[j];
      }
      consider("cycle optimum", std::move(exact));
    }
  }

  Rng rng(seed);
  std::vector<P> pool = marked;
  if (auto pts = [&]() -> std::optional<std::vector<P>> {
        if constexpr (requires { grp.finite_points(); })
          return grp.finite_points();
        return std::nullopt;
      }())
    pool = *pts;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t s = 0; s < budget; ++s) {
    std::vector<P> values(cells);
    for (auto &v : values)
      v = pool[pick(rng)];
    out.sampled.push_back(consider("random " + std::to_string(s), std::move(values)));
  }
  return out;
}

// Neighbourhoods -----------------------------------------------------------------

/// {(g,R) : d^((center) beta_i, (g,R) beta_i) < radius_i for every i}
template <ActingGroup G>
struct PointwiseNeighborhood
{
  TildeElement<G> center;
  std::vector<StepFn<typename G::point_type>> tests;
  std::vector<Rational> radii;
};

/**
 * U x W with U = {g : int d(c(w) beta_i(w), g(w) beta_i(w)) < fiber_radii[i]}
 * and W = {R : mu(T*(A_j) triangle R(A_j)) < aut_radius for every A_j}.
 * An empty list of conditions leaves that factor unconstrained.
 */
template <ActingGroup G>
struct ProductNeighborhood
{
  StepFn<typename G::element_type> fiber_center;
  std::vector<StepFn<typename G::point_type>> fiber_tests;
  std::vector<Rational> fiber_radii;
  DyadicMPT aut_center;
  std::vector<DyadicSet> aut_sets;
  Rational aut_radius = 1;
};

struct MembershipReport
{
  bool member = true;
  /// Measured value of each condition, in order: fiber then aut (product
  /// form) or one per test function (pointwise form).
  std::vector<Rational> residuals;
  std::vector<Rational> bounds;
};

template <ActingGroup G>
MembershipReport evaluate(TildeGroup<G> const &tg, PointwiseNeighborhood<G> const &nb,
                          TildeElement<G> const &x)
{
  MembershipReport rep;
  for (std::size_t i = 0; i < nb.tests.size(); ++i) {
    Rational d = tg.field_distance(tg.act(nb.center, nb.tests[i]), tg.act(x, nb.tests[i]));
    rep.residuals.push_back(d);
    rep.bounds.push_back(nb.radii[i]);
    rep.member = rep.member && d < nb.radii[i];
  }
  return rep;
}

template <ActingGroup G>
MembershipReport evaluate(TildeGroup<G> const &tg, ProductNeighborhood<G> const &nb,
                          TildeElement<G> const &x)
{
  MembershipReport rep;
  DyadicMPT id = DyadicMPT::identity(0);
  TildeElement<G> c{nb.fiber_center, id};
  TildeElement<G> g{x.f, id};
  for (std::size_t i = 0; i < nb.fiber_tests.size(); ++i) {
    Rational d = tg.field_distance(tg.act(c, nb.fiber_tests[i]), tg.act(g, nb.fiber_tests[i]));
    rep.residuals.push_back(d);
    rep.bounds.push_back(nb.fiber_radii[i]);
    rep.member = rep.member && d < nb.fiber_radii[i];
  }
  for (auto const &a : nb.aut_sets) {
    Rational d = symmetric_difference(nb.aut_center.image(a), x.t.image(a)).measure();
    rep.residuals.push_back(d);
    rep.bounds.push_back(nb.aut_radius);
    rep.member = rep.member && d < nb.aut_radius;
  }
  return rep;
}

struct SamplingCertificate
{
  std::size_t sampled = 0;
  std::size_t members = 0;
  std::size_t violations = 0;
  bool passed() const { return violations == 0; }
};

/// Random element near `center`: the fiber is changed on up to two intervals
/// and T is followed by up to two interval transpositions, both at a level
/// three steps finer than the center.
template <ActingGroup G>
TildeElement<G> perturb(TildeGroup<G> const &tg, TildeElement<G> const &center, Rng &rng,
                        unsigned extra = 3)
{
  unsigned level = std::max(center.f.level(), center.t.level()) + extra;
  std::size_t cells = interval_count(level);
  std::uniform_int_distribution<std::size_t> cell(0, cells - 1);
  std::uniform_int_distribution<int> howmany(0, 2);

  auto values = center.f.refine(level).values();
  for (int j = howmany(rng); j > 0; --j)
    values[cell(rng)] = tg.base().random_element(rng);

  std::vector<Index> swap(cells);
  std::iota(swap.begin(), swap.end(), Index{0});
  for (int j = howmany(rng); j > 0; --j)
    std::swap(swap[cell(rng)], swap[cell(rng)]);
  DyadicMPT tau(level, std::move(swap));
  return {StepFn<typename G::element_type>(level, std::move(values)),
          mpt_compose(mpt_refine(center.t, level), tau)};
}

/// Level sets of a field, as (value, set) in order of first appearance.
template <class P>
std::vector<std::pair<P, DyadicSet>> pieces(StepFn<P> const &alpha)
{
  std::vector<std::pair<P, std::vector<Index>>> acc;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](auto const &p) { return p.first == alpha[i]; });
    if (it == acc.end()) {
      acc.push_back({alpha[i], {}});
      it = acc.end() - 1;
    }
    it->second.push_back(static_cast<Index>(i));
  }
  std::vector<std::pair<P, DyadicSet>> out;
  for (auto &[v, members] : acc)
    out.emplace_back(v, DyadicSet(alpha.level(), std::move(members)));
  return out;
}

template <ActingGroup G>
struct ProductToPointwise
{
  /// The pointwise ball at alpha that has to be covered.
  PointwiseNeighborhood<G> ball;
  /// U x W with every radius eps/(2k).
  ProductNeighborhood<G> product;
  std::size_t pieces = 0;
  SamplingCertificate certificate;
};

/**
 * For alpha = sum a_i chi_{A_i} with k pieces: W = {R : mu(T(A_i) triangle
 * R(A_i)) < eps/(2k)} and U = {g : int d(f a_i, g a_i) < eps/(2k)}. Sampled
 * members of U x W are checked against the pointwise eps-ball at alpha.
 */
template <ActingGroup G>
ProductToPointwise<G> nbhd_product_to_pointwise(TildeGroup<G> const &tg,
                                                TildeElement<G> const &center,
                                                StepFn<typename G::point_type> const &alpha,
                                                Rational const &eps, std::size_t samples,
                                                std::uint64_t seed)
{
  using P = typename G::point_type;
  ProductToPointwise<G> out;
  out.ball = {center, {alpha}, {eps}};
  auto ps = pieces(alpha);
  out.pieces = ps.size();
  Rational radius = eps / Rational(static_cast<unsigned long>(2 * ps.size()));
  out.product.fiber_center = center.f;
  out.product.aut_center = center.t;
  out.product.aut_radius = radius;
  for (auto const &[value, set] : ps) {
    out.product.fiber_tests.push_back(StepFn<P>::constant(value));
    out.product.fiber_radii.push_back(radius);
    out.product.aut_sets.push_back(set);
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = perturb(tg, center, rng);
    ++out.certificate.sampled;
    if (!evaluate(tg, out.product, x).member)
      continue;
    ++out.certificate.members;
    if (!evaluate(tg, out.ball, x).member)
      ++out.certificate.violations;
  }
  return out;
}

template <ActingGroup G>
struct PointwiseToProduct
{
  Rational s;
  /// beta_1 = c1, beta_2 = c1 on B and c2 off B, radius eps s/4; inside it
  /// mu(T(B) triangle R(B)) < eps.
  PointwiseNeighborhood<G> v1;
  /// gamma = alpha o T with radius eps/2, plus the beta pairs for every piece
  /// of gamma with radius (eps/(2k)) s/4; inside it the fiber condition holds.
  PointwiseNeighborhood<G> v34;
  /// W = {R : mu(T(B) triangle R(B)) < eps}
  ProductNeighborhood<G> w;
  /// U = {g : int d(f alpha, g alpha) < eps}
  ProductNeighborhood<G> u;
  SamplingCertificate aut_certificate;
  SamplingCertificate fiber_certificate;
};

/**
 * Pointwise neighbourhoods inside L0 x W and U x Aut. The pieces used for the
 * second family are those of gamma = alpha o T, i.e. the sets T^-1(A_i): these
 * are the sets whose images under T and R have to be close for
 * (g,R) gamma to agree with g alpha.
 */
template <ActingGroup G>
PointwiseToProduct<G> nbhd_pointwise_to_product(TildeGroup<G> const &tg,
                                                TildeElement<G> const &center, DyadicSet const &b,
                                                StepFn<typename G::point_type> const &alpha,
                                                Rational const &eps,
                                                typename G::point_type const &c1,
                                                typename G::point_type const &c2,
                                                std::size_t samples, std::uint64_t seed)
{
  using P = typename G::point_type;
  auto const &grp = tg.base();
  PointwiseToProduct<G> out;
  out.s = grp.point_distance(c1, c2);
  if (out.s == 0)
    throw Error(ErrorKind::DegenerateSpace, "c1 and c2 are at distance 0");

  auto beta1 = StepFn<P>::constant(c1);
  out.v1 = {center, {beta1, StepFn<P>::indicator(b, c1, c2)}, {eps * out.s / 4, eps * out.s / 4}};

  auto gamma = compose_map(alpha, center.t);
  auto ps = pieces(gamma);
  Rational piece_radius = eps / Rational(static_cast<unsigned long>(2 * ps.size())) * out.s / 4;
  out.v34 = {center, {gamma, beta1}, {eps / 2, piece_radius}};
  for (auto const &[value, set] : ps) {
    out.v34.tests.push_back(StepFn<P>::indicator(set, c1, c2));
    out.v34.radii.push_back(piece_radius);
  }

  out.w.fiber_center = center.f;
  out.w.aut_center = center.t;
  out.w.aut_sets = {b};
  out.w.aut_radius = eps;
  out.u.fiber_center = center.f;
  out.u.aut_center = center.t;
  out.u.fiber_tests = {alpha};
  out.u.fiber_radii = {eps};

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = perturb(tg, center, rng);
    ++out.aut_certificate.sampled;
    ++out.fiber_certificate.sampled;
    if (evaluate(tg, out.v1, x).member) {
      ++out.aut_certificate.members;
      if (!evaluate(tg, out.w, x).member)
        ++out.aut_certificate.violations;
    }
    if (evaluate(tg, out.v34, x).member) {
      ++out.fiber_certificate.members;
      if (!evaluate(tg, out.u, x).member)
        ++out.fiber_certificate.violations;
    }
  }
  return out;
}

} // namespace randiso

#endif
