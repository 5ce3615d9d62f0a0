#include "randiso/base_groups.hpp"

#include <algorithm>
#include <numeric>

#include "randiso/error.hpp"
#include "randiso/text_format.hpp"

namespace randiso
{

namespace
{

WindowPerm random_perm(std::size_t window, Rng &rng)
{
  std::vector<Point> m(window);
  std::iota(m.begin(), m.end(), Point{0});
  std::shuffle(m.begin(), m.end(), rng);
  return WindowPerm(std::move(m));
}

} // namespace

Rational SymmetricGroup::uniform_distance(WindowPerm const &a, WindowPerm const &b) const
{
  return perm_metrics(a, b).uniform;
}

Rational SymmetricGroup::polish_distance(WindowPerm const &a, WindowPerm const &b) const
{
  return perm_metrics(a, b).polish;
}

WindowPerm SymmetricGroup::random_element(Rng &rng) const
{
  return random_perm(_sample_window, rng);
}

std::string SymmetricGroup::format(WindowPerm const &a) const
{
  return format_cycles(a);
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<Rational>> d)
: _d(std::move(d))
{
  std::size_t n = _d.size();
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "empty metric space");
  for (auto const &row : _d)
    if (row.size() != n)
      throw Error(ErrorKind::InvalidArgument, "distance matrix is not square");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if ((_d[x][y] == 0) != (x == y) || _d[x][y] < 0)
        throw Error(ErrorKind::InvalidArgument, "distance must vanish exactly on the diagonal");
      if (_d[x][y] != _d[y][x])
        throw Error(ErrorKind::InvalidArgument, "distance is not symmetric");
      for (std::size_t z = 0; z < n; ++z)
        if (_d[x][z] > _d[x][y] + _d[y][z])
          throw Error(ErrorKind::InvalidArgument, "triangle inequality fails");
    }
}

Rational FiniteMetricSpace::diameter() const
{
  Rational best = 0;
  for (auto const &row : _d)
    for (auto const &v : row)
      best = max(best, v);
  return best;
}

std::pair<Point, Point> FiniteMetricSpace::widest_pair() const
{
  std::pair<Point, Point> best{0, 0};
  for (Point x = 0; x < size(); ++x)
    for (Point y = x + 1; y < size(); ++y)
      if (_d[x][y] > _d[best.first][best.second])
        best = {x, y};
  return best;
}

std::vector<WindowPerm> FiniteMetricSpace::isometries() const
{
  if (size() > 10)
    throw Error(ErrorKind::InvalidArgument, "isometry enumeration is limited to 10 points");
  std::vector<Point> m(size());
  std::iota(m.begin(), m.end(), Point{0});
  std::vector<WindowPerm> out;
  do {
    bool ok = true;
    for (std::size_t x = 0; ok && x < size(); ++x)
      for (std::size_t y = x + 1; ok && y < size(); ++y)
        ok = _d[m[x]][m[y]] == _d[x][y];
    if (ok)
      out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

FiniteIsometryGroup::FiniteIsometryGroup(FiniteMetricSpace space)
: _space(std::move(space)), _elements(_space.isometries())
{}

Rational FiniteIsometryGroup::uniform_distance(WindowPerm const &a, WindowPerm const &b) const
{
  Rational best = 0;
  for (Point x = 0; x < _space.size(); ++x)
    best = max(best, _space(a(x), b(x)));
  return best;
}

Rational FiniteIsometryGroup::polish_distance(WindowPerm const &a, WindowPerm const &b) const
{
  Rational total = 0;
  for (Point x = 0; x < _space.size(); ++x)
    total += pow2_inverse(x + 1) * _space(a(x), b(x));
  return total;
}

std::optional<std::vector<Point>> FiniteIsometryGroup::finite_points() const
{
  std::vector<Point> pts(_space.size());
  std::iota(pts.begin(), pts.end(), Point{0});
  return pts;
}

std::vector<Point> FiniteIsometryGroup::marked_points() const
{
  std::vector<Point> pts(std::min<std::size_t>(4, _space.size()));
  std::iota(pts.begin(), pts.end(), Point{0});
  return pts;
}

WindowPerm FiniteIsometryGroup::random_element(Rng &rng) const
{
  std::uniform_int_distribution<std::size_t> pick(0, _elements.size() - 1);
  return _elements[pick(rng)];
}

std::string FiniteIsometryGroup::format(WindowPerm const &a) const
{
  return format_cycles(a);
}

DyadicMPT AutGroup::random_element(Rng &rng) const
{
  std::vector<Index> m(interval_count(_sample_level));
  std::iota(m.begin(), m.end(), Index{0});
  std::shuffle(m.begin(), m.end(), rng);
  return DyadicMPT(_sample_level, std::move(m));
}

DyadicMPT AutGroup::match_power(DyadicMPT const &sigma, std::size_t n, DyadicMPT const &target,
                                Rational const &eps) const
{
  DyadicMPT sn = mpt_power(sigma, static_cast<std::int64_t>(n));
  if (delta_u(sn, target) <= eps)
    return DyadicMPT::identity(sn.level());
  try {
    return mpt_conjugate_match(sn, target, eps).conjugator;
  } catch (Error const &e) {
    throw Error(ErrorKind::OracleFailure,
                "cannot conjugate sigma^" + std::to_string(n) + " within " + to_string(eps) +
                  " of the target: " + e.what());
  }
}

std::string AutGroup::format(DyadicMPT const &a) const
{
  return format_mpt(a);
}

MptPowerReport power_invariance_check(DyadicMPT const &t, std::size_t n)
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "power must be positive");
  MptPowerReport r;
  auto base = mpt_cycles(t);
  auto pow = mpt_cycles(mpt_power(t, static_cast<std::int64_t>(n)));
  r.min_cycle = base.min_length();
  r.power_min_cycle = pow.min_length();
  r.power_census = pow.census;
  std::map<std::size_t, std::size_t> predicted;
  for (auto const &[len, count] : base.census) {
    std::size_t g = std::gcd(len, n);
    predicted[len / g] += count * g;
  }
  r.predicted_min_cycle = predicted.begin()->first;
  r.consistent = predicted == pow.census;
  return r;
}

PermPowerReport power_invariance_check(WindowPerm const &a, std::size_t n)
{
  PermPowerReport r;
  r.rule = power_cycle_type(a, n);
  r.direct = cycle_census(power(a, static_cast<std::int64_t>(n)).extended(a.window()));
  r.consistent = r.rule == r.direct;
  return r;
}

OrderPowerReport power_invariance_check(PLOrderAut const &g, std::size_t n)
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "power must be positive");
  OrderPowerReport r;
  r.base = orbitals_and_signs(g);
  r.power = orbitals_and_signs(power(g, static_cast<std::int64_t>(n)));
  r.consistent = r.base == r.power;
  return r;
}

} // namespace randiso
