#ifndef RANDISO_DYADIC_MEASURE_HPP
#define RANDISO_DYADIC_MEASURE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "randiso/rational.hpp"

/**
 * @file dyadic_measure.hpp
 * @brief Finite-resolution model of the Lebesgue space [0,1) and of its
 *        measure-preserving automorphisms.
 *
 * At level n the unit interval is cut into 2^n half-open intervals of
 * measure 2^-n. Interval i is [i 2^-n, (i+1) 2^-n). A transformation at level
 * n permutes these intervals, moving each one by translation, so the point
 * map is measure preserving and every point of interval i has exactly the
 * period of i's cycle.
 */

namespace randiso
{

using Index = std::uint32_t;

/// Number of intervals at a level.
inline std::size_t interval_count(unsigned level) { return std::size_t{1} << level; }

/// A finite union of level-n dyadic intervals.
class DyadicSet
{
public:
  DyadicSet() = default;

  /// `members` need not be sorted; duplicates and out-of-range indices throw.
  DyadicSet(unsigned level, std::vector<Index> members);

  static DyadicSet empty(unsigned level) { return DyadicSet(level, {}); }
  static DyadicSet full(unsigned level);

  unsigned level() const { return _level; }
  std::vector<Index> const &members() const { return _members; }
  std::size_t count() const { return _members.size(); }
  bool contains(Index i) const;

  Rational measure() const { return dyadic(_members.size(), _level); }

  /// Same point set at a finer level.
  DyadicSet refine(unsigned level) const;

  /// Membership mask of length 2^level.
  std::vector<bool> mask() const;

  /// Equality of point sets (levels may differ).
  friend bool operator==(DyadicSet const &a, DyadicSet const &b);

private:
  unsigned _level = 0;
  std::vector<Index> _members;
};

DyadicSet set_union(DyadicSet const &a, DyadicSet const &b);
DyadicSet set_intersection(DyadicSet const &a, DyadicSet const &b);
DyadicSet set_difference(DyadicSet const &a, DyadicSet const &b);
DyadicSet symmetric_difference(DyadicSet const &a, DyadicSet const &b);
DyadicSet complement(DyadicSet const &a);

/// A measure-preserving transformation given by a permutation of the level-n
/// dyadic intervals. Composition follows function notation: (T R)(w) = T(R(w)).
class DyadicMPT
{
public:
  DyadicMPT() : DyadicMPT(0, {0}) {}

  /// Throws InvalidArgument unless `perm` is a bijection of {0,...,2^level-1}.
  DyadicMPT(unsigned level, std::vector<Index> perm);

  static DyadicMPT identity(unsigned level);

  /// Rotation i -> i + k mod 2^level.
  static DyadicMPT shift(unsigned level, std::int64_t k);

  unsigned level() const { return _level; }
  std::size_t size() const { return _perm.size(); }
  std::vector<Index> const &perm() const { return _perm; }
  Index operator()(Index i) const { return _perm[i]; }

  bool is_identity() const;

  /// Image T(A) of a set; the set is refined to the transformation's level
  /// first if it is coarser, and the transformation refined otherwise.
  DyadicSet image(DyadicSet const &a) const;

  /// Equality of point maps (levels may differ).
  friend bool operator==(DyadicMPT const &a, DyadicMPT const &b);

private:
  unsigned _level;
  std::vector<Index> _perm;
};

DyadicMPT mpt_compose(DyadicMPT const &t, DyadicMPT const &r);
DyadicMPT mpt_inverse(DyadicMPT const &t);
DyadicMPT mpt_refine(DyadicMPT const &t, unsigned level);
DyadicMPT mpt_power(DyadicMPT const &t, std::int64_t exponent);

struct CycleDecomposition
{
  unsigned level = 0;
  /// Each cycle starts at its smallest index and follows T; cycles are ordered
  /// by start.
  std::vector<std::vector<Index>> cycles;
  /// cycle length -> number of cycles
  std::map<std::size_t, std::size_t> census;

  std::size_t min_length() const;

  /// True when every cycle has length at least n.
  bool is_aperiodic_up_to(std::size_t n) const { return min_length() >= n; }

  /// Measure of the union of the k-cycles (the period-k part of the map).
  Rational period_measure(std::size_t k) const;
};

CycleDecomposition mpt_cycles(DyadicMPT const &t);

/// mu{w : T(w) != R(w)}.
Rational delta_u(DyadicMPT const &t, DyadicMPT const &r);

/// Weak-topology distance: sum over the canonical enumeration B_0 = [0,1),
/// B_1, B_2 = level-1 intervals, ... of 2^-(m+1) mu(T(B_m) triangle R(B_m)),
/// taken over every dyadic interval up to the common level.
Rational delta_w(DyadicMPT const &t, DyadicMPT const &r);

/// sup_A mu(T(A) triangle R(A)). Computed from the cycles of T^-1 R: a cycle of
/// length L contributes L rounded down to an even number. The supremum over
/// all measurable A equals the supremum over unions of intervals.
Rational delta_u_prime(DyadicMPT const &t, DyadicMPT const &r);

/// A Rokhlin tower: columns[c] lists the intervals x, T x, ..., T^{N-1} x of
/// one column; levels[k] is the union of the k-th entries.
struct TowerData
{
  unsigned level = 0;
  std::size_t height = 0;
  DyadicSet base;
  std::vector<DyadicSet> levels;
  DyadicSet leftover;
  std::vector<std::vector<Index>> columns;

  Rational covered_measure() const { return Rational(1) - leftover.measure(); }

  /// Same tower at a finer level; each column splits into 2^(m-n) columns.
  TowerData refine(unsigned level) const;

  /// Column and height of every covered interval; nullopt on the leftover.
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> locate() const;
};

/// Height-N tower for an N-aperiodic T. Each cycle is cut from its smallest
/// index into floor(L/N) columns; the remaining L mod N intervals of the cycle
/// go to the leftover set. Throws NotAperiodic if a cycle is shorter than N
/// and TowerTooCoarse if the leftover measure exceeds eps.
TowerData rokhlin_tower(DyadicMPT const &t, std::size_t height, Rational const &eps);

struct PeriodicApproximation
{
  /// S0: every cycle has length exactly N.
  DyadicMPT periodic_map;
  /// The tower T was cut into, at the working level.
  TowerData source_tower;
  /// Exact tower of S0 covering all of [0,1): the source columns plus the
  /// leftover grouped into N-cycles.
  TowerData exact_tower;
  /// Delta_u(T, S0).
  Rational distance;
};

/// Uniform approximation of T by a map of period exactly N. S0 agrees
/// with T below the top of each column, sends the top back to the column
/// base, and cycles the leftover intervals through N-cycles in index order.
/// When the leftover count is not a multiple of N the map is refined, up to
/// `max_refinement` extra levels, before LeftoverIndivisible is thrown.
PeriodicApproximation periodic_approximation(DyadicMPT const &t, std::size_t height,
                                             Rational const &eps,
                                             unsigned max_refinement = 10);

struct ConjugateMatch
{
  /// R with R^-1 T R close to S.
  DyadicMPT conjugator;
  /// Delta_u(R^-1 T R, S), exact.
  Rational achieved;
  /// Tower height used; 0 when T and S had the same cycle type.
  std::size_t height = 0;
};

/// Find R with Delta_u(R^-1 T R, S) < eps. Equal cycle types are matched
/// exactly; otherwise both maps are replaced by period-N approximations for
/// powers of two N > 1/eps and the approximations' towers are matched column
/// to column, top to top.
ConjugateMatch mpt_conjugate_match(DyadicMPT const &t, DyadicMPT const &s,
                                   Rational const &eps);

} // namespace randiso

#endif
