#ifndef RANDISO_WINDOW_PERM_HPP
#define RANDISO_WINDOW_PERM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "randiso/rational.hpp"

namespace randiso
{

using Point = std::uint32_t;

/// Cycle length -> number of cycles.
using Census = std::map<std::size_t, std::size_t>;

/**
 * A permutation of the naturals that is the identity outside the window
 * {0,...,M-1}. Stands in for an element of S_infinity.
 *
 * Equality is equality of maps on the naturals; the window is only a
 * storage bound and trailing fixed points inside it are allowed.
 */
class WindowPerm
{
public:
  WindowPerm() = default;

  /// Throws InvalidArgument unless `map` is a bijection of {0,...,size-1}.
  explicit WindowPerm(std::vector<Point> map);

  static WindowPerm identity(std::size_t window = 0);

  /// Disjoint cycles, each listed in mapping order; (a b c) sends a->b->c->a.
  static WindowPerm from_cycles(std::vector<std::vector<Point>> const &cycles,
                                std::size_t window = 0);

  std::size_t window() const { return _map.size(); }
  std::vector<Point> const &map() const { return _map; }

  Point operator()(Point n) const { return n < _map.size() ? _map[n] : n; }

  /// One past the largest moved point (0 for the identity).
  std::size_t support_bound() const;

  bool is_identity() const { return support_bound() == 0; }

  /// Same map stored over a larger window.
  WindowPerm extended(std::size_t window) const;

  friend bool operator==(WindowPerm const &a, WindowPerm const &b);

private:
  std::vector<Point> _map;
};

/// (a * b)(n) = a(b(n)).
WindowPerm operator*(WindowPerm const &a, WindowPerm const &b);
WindowPerm inverse(WindowPerm const &a);
WindowPerm power(WindowPerm const &a, std::int64_t exponent);

/// All cycles inside the window, fixed points included, each starting at its
/// smallest point; ordered by start.
std::vector<std::vector<Point>> cycles(WindowPerm const &a);

/// Census of the cycles inside the window (fixed points of the window count
/// as 1-cycles).
Census cycle_census(WindowPerm const &a);

struct PermMetrics
{
  /// sum over n with a(n) != b(n) of 2^-(n+1)
  Rational polish;
  /// discrete: 1 when a != b
  Rational uniform;
};

PermMetrics perm_metrics(WindowPerm const &a, WindowPerm const &b);

/// Finite stand-in for a generic element of S_infinity: `copies` disjoint
/// cycles of every length 1..max_length, packed in ascending length order.
struct GenericSurrogate
{
  std::size_t max_length = 0;
  std::size_t copies = 0;
  WindowPerm realized;
};

GenericSurrogate generic_surrogate(std::size_t max_length, std::size_t copies);

/// Census of a^N over a's window by the cycle-power rule: a k-cycle splits
/// into gcd(k,N) cycles of length k/gcd(k,N).
Census power_cycle_type(WindowPerm const &a, std::size_t n);

/// Partial injection on {0,...,K-1}: target[n] is the required image of n.
using PartialInjection = std::vector<std::optional<Point>>;

struct MatchOptions
{
  /// When set, every point the matcher uses (cycle points and fixed points)
  /// must lie below this bound. Otherwise points beyond sigma's window serve
  /// as an unlimited supply of fixed points.
  std::optional<std::size_t> codomain_limit;
};

/**
 * Find rho with rho^-1 sigma^N rho (n) = target(n) wherever target is defined.
 *
 * The target graph n -> target(n) splits into closed cycles and open chains.
 * A cycle of length l is laid onto an unused l-cycle of sigma^N; a chain of m
 * points onto an unused cycle of length at least m. Cycles are placed first,
 * then chains from longest to shortest; each takes the unused cycle of sigma^N
 * with the lowest start among those that fit. The partial assignment is then
 * completed to a bijection by pairing the remaining points in increasing
 * order. The defining identity is re-checked on the result.
 *
 * Throws NotInjective, or InsufficientCyclesError with the needed census.
 */
WindowPerm match_on_window(WindowPerm const &sigma, std::size_t n,
                           PartialInjection const &target, MatchOptions const &options = {});

/// Restriction of a permutation to {0,...,K-1} as a partial injection.
PartialInjection restrict_to_window(WindowPerm const &a, std::size_t k);

} // namespace randiso

#endif
