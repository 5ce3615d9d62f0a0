#ifndef RANDISO_BASE_GROUPS_HPP
#define RANDISO_BASE_GROUPS_HPP

#include <concepts>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "randiso/dyadic_measure.hpp"
#include "randiso/pl_order_aut.hpp"
#include "randiso/rational.hpp"
#include "randiso/window_perm.hpp"

/**
 * @file base_groups.hpp
 * @brief Base groups G acting by isometries on a metric space X, given as
 *        policy objects so the fibre constructions can be written once.
 */

namespace randiso
{

using Rng = std::mt19937_64;

/// A group with a bi-invariant uniform metric and a compatible Polish metric.
template <class G>
concept MetricGroup = requires(G const &g, typename G::element_type const &a, Rng &rng) {
  typename G::element_type;
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.multiply(a, a) } -> std::convertible_to<typename G::element_type>;
  { g.inverse(a) } -> std::convertible_to<typename G::element_type>;
  { g.uniform_distance(a, a) } -> std::convertible_to<Rational>;
  { g.polish_distance(a, a) } -> std::convertible_to<Rational>;
  { g.random_element(rng) } -> std::convertible_to<typename G::element_type>;
  { g.format(a) } -> std::convertible_to<std::string>;
};

/// A metric group acting by isometries on a metric space of points.
template <class G>
concept ActingGroup = MetricGroup<G> &&
  requires(G const &g, typename G::element_type const &a, typename G::point_type const &x) {
    typename G::point_type;
    { g.apply(a, x) } -> std::convertible_to<typename G::point_type>;
    { g.point_distance(x, x) } -> std::convertible_to<Rational>;
    { g.diameter() } -> std::convertible_to<Rational>;
    { g.is_discrete() } -> std::convertible_to<bool>;
    { g.marked_points() } -> std::convertible_to<std::vector<typename G::point_type>>;
    { g.format_point(x) } -> std::convertible_to<std::string>;
  };

/**
 * S_infinity acting on the naturals with the discrete metric. Elements are
 * window permutations; d_u is discrete and d_p(a,b) sums 2^-(n+1) over the
 * points where a and b differ.
 */
class SymmetricGroup
{
public:
  using element_type = WindowPerm;
  using point_type = Point;

  explicit SymmetricGroup(std::size_t sample_window = 8) : _sample_window(sample_window) {}

  WindowPerm identity() const { return WindowPerm::identity(); }
  WindowPerm multiply(WindowPerm const &a, WindowPerm const &b) const { return a * b; }
  WindowPerm inverse(WindowPerm const &a) const { return randiso::inverse(a); }
  bool equal(WindowPerm const &a, WindowPerm const &b) const { return a == b; }

  Point apply(WindowPerm const &a, Point x) const { return a(x); }
  Rational point_distance(Point x, Point y) const { return x == y ? 0 : 1; }
  Rational diameter() const { return 1; }

  Rational uniform_distance(WindowPerm const &a, WindowPerm const &b) const;
  Rational polish_distance(WindowPerm const &a, WindowPerm const &b) const;

  /// X is infinite with the discrete metric, so fresh points always exist.
  bool is_discrete() const { return true; }
  std::optional<std::vector<Point>> finite_points() const { return std::nullopt; }
  std::vector<Point> marked_points() const { return {0, 1, 2, 3}; }

  /// Uniform permutation of {0,...,sample_window-1}.
  WindowPerm random_element(Rng &rng) const;

  std::size_t sample_window() const { return _sample_window; }

  std::string format(WindowPerm const &a) const;
  std::string format_point(Point x) const { return std::to_string(x); }

private:
  std::size_t _sample_window;
};

/// A finite metric space on {0,...,n-1} with rational distances.
class FiniteMetricSpace
{
public:
  /// Throws InvalidArgument unless `d` is a square matrix satisfying the
  /// metric axioms.
  explicit FiniteMetricSpace(std::vector<std::vector<Rational>> d);

  std::size_t size() const { return _d.size(); }
  Rational const &operator()(Point x, Point y) const { return _d[x][y]; }
  Rational diameter() const;

  /// A pair at maximal distance (the default anchor pair).
  std::pair<Point, Point> widest_pair() const;

  /// Every distance-preserving permutation, identity first.
  std::vector<WindowPerm> isometries() const;

private:
  std::vector<std::vector<Rational>> _d;
};

/**
 * The full isometry group of a finite metric space. d_u(a,b) is
 * max_x d(a x, b x); d_p(a,b) is sum_m 2^-(m+1) d(a x_m, b x_m).
 */
class FiniteIsometryGroup
{
public:
  using element_type = WindowPerm;
  using point_type = Point;

  explicit FiniteIsometryGroup(FiniteMetricSpace space);

  FiniteMetricSpace const &space() const { return _space; }
  std::vector<WindowPerm> const &elements() const { return _elements; }

  WindowPerm identity() const { return WindowPerm::identity(_space.size()); }
  WindowPerm multiply(WindowPerm const &a, WindowPerm const &b) const { return a * b; }
  WindowPerm inverse(WindowPerm const &a) const { return randiso::inverse(a); }
  bool equal(WindowPerm const &a, WindowPerm const &b) const { return a == b; }

  Point apply(WindowPerm const &a, Point x) const { return a(x); }
  Rational point_distance(Point x, Point y) const { return _space(x, y); }
  Rational diameter() const { return _space.diameter(); }

  Rational uniform_distance(WindowPerm const &a, WindowPerm const &b) const;
  Rational polish_distance(WindowPerm const &a, WindowPerm const &b) const;

  bool is_discrete() const { return false; }
  std::optional<std::vector<Point>> finite_points() const;
  std::vector<Point> marked_points() const;

  WindowPerm random_element(Rng &rng) const;

  std::string format(WindowPerm const &a) const;
  std::string format_point(Point x) const { return std::to_string(x); }

private:
  FiniteMetricSpace _space;
  std::vector<WindowPerm> _elements;
};

/**
 * Aut([0,1]) surrogate as a metric group: d_u is Delta_u and the Polish
 * metric is the weak distance. It has no point action here; it is used as
 * the base group of the metric synthesis.
 */
class AutGroup
{
public:
  using element_type = DyadicMPT;

  explicit AutGroup(unsigned sample_level = 4) : _sample_level(sample_level) {}

  DyadicMPT identity() const { return DyadicMPT::identity(0); }
  DyadicMPT multiply(DyadicMPT const &a, DyadicMPT const &b) const { return mpt_compose(a, b); }
  DyadicMPT inverse(DyadicMPT const &a) const { return mpt_inverse(a); }
  bool equal(DyadicMPT const &a, DyadicMPT const &b) const { return a == b; }

  Rational uniform_distance(DyadicMPT const &a, DyadicMPT const &b) const
  {
    return delta_u(a, b);
  }
  Rational polish_distance(DyadicMPT const &a, DyadicMPT const &b) const
  {
    return delta_w(a, b);
  }

  DyadicMPT random_element(Rng &rng) const;

  /// rho with Delta_u(rho^-1 sigma^N rho, target) <= eps; throws OracleFailure.
  DyadicMPT match_power(DyadicMPT const &sigma, std::size_t n, DyadicMPT const &target,
                        Rational const &eps) const;

  std::string format(DyadicMPT const &a) const;

private:
  unsigned _sample_level;
};

/// A metric group that can conjugate sigma^N close to any target.
template <class G>
concept PowerMatchingGroup =
  MetricGroup<G> && requires(G const &g, typename G::element_type const &a, Rational const &q) {
    { g.match_power(a, std::size_t{1}, a, q) } -> std::convertible_to<typename G::element_type>;
  };

// Power behaviour -------------------------------------------------------------

struct MptPowerReport
{
  std::size_t min_cycle = 0;
  std::size_t power_min_cycle = 0;
  /// Smallest cycle of T^N predicted from T's census by the gcd rule.
  std::size_t predicted_min_cycle = 0;
  std::map<std::size_t, std::size_t> power_census;
  bool consistent = false;
};

struct PermPowerReport
{
  Census rule;
  Census direct;
  bool consistent = false;
};

struct OrderPowerReport
{
  OrbitalReport base;
  OrbitalReport power;
  bool consistent = false;
};

MptPowerReport power_invariance_check(DyadicMPT const &t, std::size_t n);
PermPowerReport power_invariance_check(WindowPerm const &a, std::size_t n);
OrderPowerReport power_invariance_check(PLOrderAut const &g, std::size_t n);

} // namespace randiso

#endif
