#include "randiso/generators.hpp"

#include <algorithm>
#include <numeric>

namespace randiso::gen
{

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng &rng)
{
  return uniform(rng, 0, 1) == 1;
}

WindowPerm random_perm(Rng &rng, std::size_t window)
{
  std::vector<Point> m(window);
  std::iota(m.begin(), m.end(), Point{0});
  std::shuffle(m.begin(), m.end(), rng);
  return WindowPerm(std::move(m));
}

WindowPerm sparse_perm(Rng &rng, std::size_t window)
{
  return coin(rng) ? WindowPerm::identity(window) : random_perm(rng, window);
}

StepFn<WindowPerm> perm_step(Rng &rng, unsigned level, std::size_t window, bool sparse)
{
  std::vector<WindowPerm> values;
  for (std::size_t i = 0; i < interval_count(level); ++i)
    values.push_back(sparse ? sparse_perm(rng, window) : random_perm(rng, window));
  return StepFn<WindowPerm>(level, std::move(values));
}

StepFn<Point> field(Rng &rng, unsigned level, std::size_t points)
{
  std::vector<Point> values;
  for (std::size_t i = 0; i < interval_count(level); ++i)
    values.push_back(static_cast<Point>(uniform(rng, 0, points - 1)));
  return StepFn<Point>(level, std::move(values));
}

DyadicMPT random_mpt(Rng &rng, unsigned level)
{
  std::vector<Index> m(interval_count(level));
  std::iota(m.begin(), m.end(), Index{0});
  std::shuffle(m.begin(), m.end(), rng);
  return DyadicMPT(level, std::move(m));
}

namespace
{

/// Lay the shuffled intervals onto cycles of the given lengths.
DyadicMPT from_lengths(Rng &rng, unsigned level, std::vector<std::size_t> const &lengths)
{
  std::vector<Index> order(interval_count(level));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Index> m(order.size());
  std::iota(m.begin(), m.end(), Index{0});
  std::size_t at = 0;
  for (auto len : lengths) {
    for (std::size_t j = 0; j < len; ++j)
      m[order[at + j]] = order[at + (j + 1) % len];
    at += len;
  }
  return DyadicMPT(level, std::move(m));
}

} // namespace

DyadicMPT full_cycle(Rng &rng, unsigned level)
{
  return from_lengths(rng, level, {interval_count(level)});
}

DyadicMPT sparse_mpt(Rng &rng, unsigned level)
{
  std::size_t cells = interval_count(level);
  std::vector<std::size_t> lengths;
  std::size_t used = 0;
  for (std::size_t c = uniform(rng, 0, 3); c > 0; --c) {
    std::size_t len = uniform(rng, 2, 5);
    if (used + len > cells)
      break;
    lengths.push_back(len);
    used += len;
  }
  return from_lengths(rng, level, lengths);
}

DyadicMPT aperiodic_mpt(Rng &rng, unsigned level, std::size_t min_cycle, std::size_t spare)
{
  std::size_t cells = interval_count(level);
  if (min_cycle == 0 || min_cycle > cells)
    throw Error(ErrorKind::InvalidArgument, "cycle bound does not fit the level");
  std::vector<std::size_t> lengths;
  std::size_t left = cells;
  while (left > 0) {
    std::size_t len = min_cycle * uniform(rng, 1, 4);
    if (spare > 0 && coin(rng)) {
      std::size_t extra = uniform(rng, 0, std::min(spare, min_cycle - 1));
      len += extra;
      spare -= extra;
    }
    if (len > left || left - len < min_cycle)
      len = left;
    lengths.push_back(len);
    left -= len;
  }
  return from_lengths(rng, level, lengths);
}

PLOrderAut random_pl(Rng &rng, std::size_t max_breaks)
{
  static Rational const slopes[] = {Rational(1, 4), Rational(1, 2), Rational(2, 3), Rational(1),
                                    Rational(3, 2), Rational(2),    Rational(3)};
  std::size_t breaks = uniform(rng, 0, max_breaks);
  std::vector<Rational> bps;
  while (bps.size() < breaks) {
    Rational b(static_cast<long>(uniform(rng, 0, 40)) - 20, static_cast<unsigned long>(uniform(rng, 1, 4)));
    b.canonicalize();
    if (std::find(bps.begin(), bps.end(), b) == bps.end())
      bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<AffinePiece> pieces;
  Rational off0(static_cast<long>(uniform(rng, 0, 8)) - 4, static_cast<unsigned long>(uniform(rng, 1, 3)));
  off0.canonicalize();
  pieces.push_back({slopes[uniform(rng, 0, 6)], off0});
  for (auto const &b : bps) {
    auto const &prev = pieces.back();
    Rational slope = slopes[uniform(rng, 0, 6)];
    pieces.push_back({slope, prev.slope * b + prev.offset - slope * b});
  }
  return PLOrderAut(std::move(bps), std::move(pieces));
}

} // namespace randiso::gen
