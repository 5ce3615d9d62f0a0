#include "randiso/pl_order_aut.hpp"

#include <algorithm>

#include "randiso/error.hpp"

namespace randiso
{

namespace
{

void simplify(std::vector<Rational> &bps, std::vector<AffinePiece> &pieces)
{
  std::vector<Rational> b;
  std::vector<AffinePiece> p{pieces.front()};
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (pieces[i + 1] == p.back())
      continue;
    b.push_back(bps[i]);
    p.push_back(pieces[i + 1]);
  }
  bps = std::move(b);
  pieces = std::move(p);
}

/// A point strictly inside the region between `lo` and `hi`.
Rational interior(ExtendedRational const &lo, ExtendedRational const &hi)
{
  if (lo && hi)
    return (*lo + *hi) / 2;
  if (lo)
    return *lo + 1;
  if (hi)
    return *hi - 1;
  return 0;
}

} // namespace

PLOrderAut::PLOrderAut(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces)
: _breakpoints(std::move(breakpoints)), _pieces(std::move(pieces))
{
  if (_pieces.size() != _breakpoints.size() + 1)
    throw Error(ErrorKind::InvalidArgument, "need exactly one more piece than breakpoints");
  for (auto const &p : _pieces)
    if (p.slope <= 0)
      throw Error(ErrorKind::InvalidArgument, "slopes must be positive");
  for (std::size_t i = 0; i < _breakpoints.size(); ++i) {
    if (i > 0 && _breakpoints[i] <= _breakpoints[i - 1])
      throw Error(ErrorKind::InvalidArgument, "breakpoints must increase strictly");
    if (_pieces[i](_breakpoints[i]) != _pieces[i + 1](_breakpoints[i]))
      throw Error(ErrorKind::InvalidArgument,
                  "discontinuity at " + to_string(_breakpoints[i]));
  }
  simplify(_breakpoints, _pieces);
}

PLOrderAut PLOrderAut::from_knots(std::vector<std::pair<Rational, Rational>> const &knots,
                                  Rational const &left_slope, Rational const &right_slope)
{
  if (knots.empty())
    throw Error(ErrorKind::InvalidArgument, "need at least one knot");
  std::vector<Rational> bps;
  std::vector<AffinePiece> pieces;
  auto const &[x0, y0] = knots.front();
  pieces.push_back({left_slope, y0 - left_slope * x0});
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    auto const &[xa, ya] = knots[i];
    auto const &[xb, yb] = knots[i + 1];
    if (xb <= xa || yb <= ya)
      throw Error(ErrorKind::InvalidArgument, "knots must increase in both coordinates");
    Rational slope = (yb - ya) / (xb - xa);
    bps.push_back(xa);
    pieces.push_back({slope, ya - slope * xa});
  }
  auto const &[xn, yn] = knots.back();
  bps.push_back(xn);
  pieces.push_back({right_slope, yn - right_slope * xn});
  return PLOrderAut(std::move(bps), std::move(pieces));
}

std::size_t PLOrderAut::piece_index(Rational const &x) const
{
  return static_cast<std::size_t>(std::upper_bound(_breakpoints.begin(), _breakpoints.end(), x) -
                                  _breakpoints.begin());
}

Rational PLOrderAut::operator()(Rational const &x) const
{
  return _pieces[piece_index(x)](x);
}

Rational PLOrderAut::preimage(Rational const &y) const
{
  // g is increasing, so the piece is found by comparing with breakpoint values.
  std::size_t i = 0;
  while (i < _breakpoints.size() && _pieces[i + 1](_breakpoints[i]) <= y)
    ++i;
  return (y - _pieces[i].offset) / _pieces[i].slope;
}

PLOrderAut compose(PLOrderAut const &g, PLOrderAut const &h)
{
  std::vector<Rational> bps = h.breakpoints();
  for (auto const &b : g.breakpoints())
    bps.push_back(h.preimage(b));
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i <= bps.size(); ++i) {
    ExtendedRational lo = i == 0 ? ExtendedRational{} : ExtendedRational{bps[i - 1]};
    ExtendedRational hi = i == bps.size() ? ExtendedRational{} : ExtendedRational{bps[i]};
    Rational x = interior(lo, hi);
    auto const &inner = h.pieces()[h.piece_index(x)];
    auto const &outer = g.pieces()[g.piece_index(inner(x))];
    pieces.push_back({outer.slope * inner.slope, outer.slope * inner.offset + outer.offset});
  }
  return PLOrderAut(std::move(bps), std::move(pieces));
}

PLOrderAut inverse(PLOrderAut const &g)
{
  std::vector<Rational> bps;
  std::vector<AffinePiece> pieces;
  for (auto const &b : g.breakpoints())
    bps.push_back(g(b));
  for (auto const &p : g.pieces())
    pieces.push_back({1 / p.slope, -p.offset / p.slope});
  return PLOrderAut(std::move(bps), std::move(pieces));
}

PLOrderAut power(PLOrderAut const &g, std::int64_t exponent)
{
  PLOrderAut base = exponent < 0 ? inverse(g) : g;
  PLOrderAut result;
  for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
    result = compose(result, base);
  return result;
}

OrbitalReport orbitals_and_signs(PLOrderAut const &g)
{
  auto const &bps = g.breakpoints();
  auto const &pieces = g.pieces();

  std::vector<FixedComponent> raw;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    ExtendedRational lo = i == 0 ? ExtendedRational{} : ExtendedRational{bps[i - 1]};
    ExtendedRational hi = i == bps.size() ? ExtendedRational{} : ExtendedRational{bps[i]};
    auto const &p = pieces[i];
    if (p.slope == 1) {
      if (p.offset == 0)
        raw.push_back({lo, hi});
      continue;
    }
    Rational x = p.offset / (1 - p.slope);
    if ((!lo || *lo <= x) && (!hi || x <= *hi))
      raw.push_back({x, x});
  }

  // Merge touching components; raw is already ordered left to right.
  OrbitalReport report;
  for (auto const &c : raw) {
    if (!report.fixed.empty()) {
      auto &last = report.fixed.back();
      if (!last.hi || (c.lo && *c.lo <= *last.hi)) {
        if (last.hi && (!c.hi || *c.hi > *last.hi))
          last.hi = c.hi;
        continue;
      }
    }
    report.fixed.push_back(c);
  }

  auto add_orbital = [&](ExtendedRational lo, ExtendedRational hi) {
    Rational x = interior(lo, hi);
    Rational gx = g(x);
    report.orbitals.push_back({lo, hi, gx > x ? 1 : -1});
  };

  ExtendedRational cursor;
  bool open_left = true;
  for (auto const &c : report.fixed) {
    if (c.lo && (open_left || *c.lo > *cursor))
      add_orbital(open_left ? ExtendedRational{} : cursor, c.lo);
    open_left = false;
    cursor = c.hi;
    if (!cursor)
      return report;
  }
  add_orbital(open_left ? ExtendedRational{} : cursor, {});
  return report;
}

} // namespace randiso
