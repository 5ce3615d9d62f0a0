#ifndef RANDISO_PL_ORDER_AUT_HPP
#define RANDISO_PL_ORDER_AUT_HPP

#include <optional>
#include <vector>

#include "randiso/rational.hpp"

namespace randiso
{

/// x -> slope * x + offset
struct AffinePiece
{
  Rational slope;
  Rational offset;

  Rational operator()(Rational const &x) const { return slope * x + offset; }
  friend bool operator==(AffinePiece const &, AffinePiece const &) = default;
};

/**
 * Piecewise-linear order automorphism of the rationals with finitely many
 * rational breakpoints. Piece i applies on [breakpoints[i-1], breakpoints[i]);
 * the first piece extends to -infinity and the last to +infinity.
 *
 * Slopes are positive and adjacent pieces agree at their shared breakpoint,
 * so the map is an increasing bijection of Q. Redundant breakpoints (equal
 * pieces on both sides) are removed, which makes == structural.
 */
class PLOrderAut
{
public:
  PLOrderAut() : PLOrderAut({}, {{1, 0}}) {}

  /// Throws InvalidArgument on non-positive slopes, unsorted breakpoints or a
  /// discontinuity.
  PLOrderAut(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces);

  /// Interpolating map through increasing knots (x_i, y_i), extended by the
  /// given end slopes.
  static PLOrderAut from_knots(std::vector<std::pair<Rational, Rational>> const &knots,
                               Rational const &left_slope, Rational const &right_slope);

  static PLOrderAut identity() { return {}; }

  std::vector<Rational> const &breakpoints() const { return _breakpoints; }
  std::vector<AffinePiece> const &pieces() const { return _pieces; }

  std::size_t piece_index(Rational const &x) const;

  Rational operator()(Rational const &x) const;
  Rational preimage(Rational const &y) const;

  friend bool operator==(PLOrderAut const &, PLOrderAut const &) = default;

private:
  std::vector<Rational> _breakpoints;
  std::vector<AffinePiece> _pieces;
};

/// (g * h)(x) = g(h(x))
PLOrderAut compose(PLOrderAut const &g, PLOrderAut const &h);
PLOrderAut inverse(PLOrderAut const &g);
PLOrderAut power(PLOrderAut const &g, std::int64_t exponent);

/// Endpoint of an interval of the extended line; nullopt is -inf on the left
/// and +inf on the right.
using ExtendedRational = std::optional<Rational>;

/// Closed component of the fixed set; lo == hi for an isolated fixed point.
struct FixedComponent
{
  ExtendedRational lo;
  ExtendedRational hi;
  friend bool operator==(FixedComponent const &, FixedComponent const &) = default;
};

/// A maximal open interval moved in one direction; sign is +1 when
/// x < g(x) there and -1 when x > g(x).
struct Orbital
{
  ExtendedRational lo;
  ExtendedRational hi;
  int sign = 0;
  friend bool operator==(Orbital const &, Orbital const &) = default;
};

struct OrbitalReport
{
  std::vector<FixedComponent> fixed;
  std::vector<Orbital> orbitals;
  friend bool operator==(OrbitalReport const &, OrbitalReport const &) = default;
};

/// Fixed points are solved piece by piece (slope*x + offset = x); the
/// components of the complement are the orbitals, each with the sign of
/// g(x) - x at an interior sample.
OrbitalReport orbitals_and_signs(PLOrderAut const &g);

} // namespace randiso

#endif
