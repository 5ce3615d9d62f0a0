#include "randiso/dyadic_measure.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "randiso/error.hpp"

namespace randiso
{

namespace
{

DyadicSet from_mask(unsigned level, std::vector<bool> const &mask)
{
  std::vector<Index> members;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i])
      members.push_back(static_cast<Index>(i));
  return DyadicSet(level, std::move(members));
}

template <class Op>
DyadicSet combine(DyadicSet const &a, DyadicSet const &b, Op op)
{
  unsigned level = std::max(a.level(), b.level());
  auto ma = a.refine(level).mask();
  auto mb = b.refine(level).mask();
  std::vector<bool> out(ma.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = op(ma[i], mb[i]);
  return from_mask(level, out);
}

std::size_t count_differences(DyadicMPT const &t, DyadicMPT const &r)
{
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t(static_cast<Index>(i)) != r(static_cast<Index>(i)))
      ++n;
  return n;
}

} // namespace

DyadicSet::DyadicSet(unsigned level, std::vector<Index> members)
: _level(level), _members(std::move(members))
{
  std::sort(_members.begin(), _members.end());
  if (std::adjacent_find(_members.begin(), _members.end()) != _members.end())
    throw Error(ErrorKind::InvalidArgument, "duplicate interval in dyadic set");
  if (!_members.empty() && _members.back() >= interval_count(level))
    throw Error(ErrorKind::InvalidArgument,
                "interval " + std::to_string(_members.back()) + " out of range at level " +
                  std::to_string(level));
}

DyadicSet DyadicSet::full(unsigned level)
{
  std::vector<Index> all(interval_count(level));
  std::iota(all.begin(), all.end(), Index{0});
  return DyadicSet(level, std::move(all));
}

bool DyadicSet::contains(Index i) const
{
  return std::binary_search(_members.begin(), _members.end(), i);
}

DyadicSet DyadicSet::refine(unsigned level) const
{
  if (level < _level)
    throw Error(ErrorKind::InvalidArgument, "cannot refine a set to a coarser level");
  if (level == _level)
    return *this;

  Index factor = Index{1} << (level - _level);
  std::vector<Index> out;
  out.reserve(_members.size() * factor);
  for (Index i : _members)
    for (Index j = 0; j < factor; ++j)
      out.push_back(i * factor + j);
  DyadicSet s;
  s._level = level;
  s._members = std::move(out);
  return s;
}

std::vector<bool> DyadicSet::mask() const
{
  std::vector<bool> m(interval_count(_level), false);
  for (Index i : _members)
    m[i] = true;
  return m;
}

bool operator==(DyadicSet const &a, DyadicSet const &b)
{
  unsigned level = std::max(a._level, b._level);
  return a.refine(level)._members == b.refine(level)._members;
}

DyadicSet set_union(DyadicSet const &a, DyadicSet const &b)
{
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

DyadicSet set_intersection(DyadicSet const &a, DyadicSet const &b)
{
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

DyadicSet set_difference(DyadicSet const &a, DyadicSet const &b)
{
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

DyadicSet symmetric_difference(DyadicSet const &a, DyadicSet const &b)
{
  return combine(a, b, [](bool x, bool y) { return x != y; });
}

DyadicSet complement(DyadicSet const &a)
{
  auto m = a.mask();
  m.flip();
  return from_mask(a.level(), m);
}

DyadicMPT::DyadicMPT(unsigned level, std::vector<Index> perm)
: _level(level), _perm(std::move(perm))
{
  if (_perm.size() != interval_count(level))
    throw Error(ErrorKind::InvalidArgument,
                "permutation has " + std::to_string(_perm.size()) + " entries, level " +
                  std::to_string(level) + " needs " + std::to_string(interval_count(level)));
  std::vector<bool> seen(_perm.size(), false);
  for (Index v : _perm) {
    if (v >= _perm.size() || seen[v])
      throw Error(ErrorKind::InvalidArgument, "not a bijection of the dyadic intervals");
    seen[v] = true;
  }
}

DyadicMPT DyadicMPT::identity(unsigned level)
{
  std::vector<Index> p(interval_count(level));
  std::iota(p.begin(), p.end(), Index{0});
  return DyadicMPT(level, std::move(p));
}

DyadicMPT DyadicMPT::shift(unsigned level, std::int64_t k)
{
  auto n = static_cast<std::int64_t>(interval_count(level));
  std::vector<Index> p(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    p[static_cast<std::size_t>(i)] = static_cast<Index>((((i + k) % n) + n) % n);
  return DyadicMPT(level, std::move(p));
}

bool DyadicMPT::is_identity() const
{
  for (std::size_t i = 0; i < _perm.size(); ++i)
    if (_perm[i] != i)
      return false;
  return true;
}

DyadicSet DyadicMPT::image(DyadicSet const &a) const
{
  unsigned level = std::max(_level, a.level());
  DyadicMPT t = mpt_refine(*this, level);
  std::vector<Index> out;
  out.reserve(a.count() << (level - a.level()));
  DyadicSet fine = a.refine(level);
  for (Index i : fine.members())
    out.push_back(t(i));
  return DyadicSet(level, std::move(out));
}

bool operator==(DyadicMPT const &a, DyadicMPT const &b)
{
  unsigned level = std::max(a._level, b._level);
  return mpt_refine(a, level)._perm == mpt_refine(b, level)._perm;
}

DyadicMPT mpt_refine(DyadicMPT const &t, unsigned level)
{
  if (level < t.level())
    throw Error(ErrorKind::InvalidArgument, "cannot refine a transformation to a coarser level");
  if (level == t.level())
    return t;

  Index factor = Index{1} << (level - t.level());
  std::vector<Index> p(interval_count(level));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (Index j = 0; j < factor; ++j)
      p[i * factor + j] = t(static_cast<Index>(i)) * factor + j;
  return DyadicMPT(level, std::move(p));
}

DyadicMPT mpt_compose(DyadicMPT const &t, DyadicMPT const &r)
{
  unsigned level = std::max(t.level(), r.level());
  auto tt = mpt_refine(t, level);
  auto rr = mpt_refine(r, level);
  std::vector<Index> p(tt.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = tt(rr(static_cast<Index>(i)));
  return DyadicMPT(level, std::move(p));
}

DyadicMPT mpt_inverse(DyadicMPT const &t)
{
  std::vector<Index> p(t.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[t(static_cast<Index>(i))] = static_cast<Index>(i);
  return DyadicMPT(t.level(), std::move(p));
}

DyadicMPT mpt_power(DyadicMPT const &t, std::int64_t exponent)
{
  DyadicMPT base = exponent < 0 ? mpt_inverse(t) : t;
  auto e = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  DyadicMPT result = DyadicMPT::identity(t.level());
  while (e) {
    if (e & 1u)
      result = mpt_compose(result, base);
    base = mpt_compose(base, base);
    e >>= 1u;
  }
  return result;
}

std::size_t CycleDecomposition::min_length() const
{
  return census.empty() ? 0 : census.begin()->first;
}

Rational CycleDecomposition::period_measure(std::size_t k) const
{
  auto it = census.find(k);
  return it == census.end() ? Rational(0) : dyadic(it->second * k, level);
}

CycleDecomposition mpt_cycles(DyadicMPT const &t)
{
  CycleDecomposition d;
  d.level = t.level();
  std::vector<bool> seen(t.size(), false);
  for (std::size_t start = 0; start < t.size(); ++start) {
    if (seen[start])
      continue;
    std::vector<Index> cycle;
    auto i = static_cast<Index>(start);
    while (!seen[i]) {
      seen[i] = true;
      cycle.push_back(i);
      i = t(i);
    }
    ++d.census[cycle.size()];
    d.cycles.push_back(std::move(cycle));
  }
  return d;
}

Rational delta_u(DyadicMPT const &t, DyadicMPT const &r)
{
  unsigned level = std::max(t.level(), r.level());
  return dyadic(count_differences(mpt_refine(t, level), mpt_refine(r, level)), level);
}

Rational delta_w(DyadicMPT const &t, DyadicMPT const &r)
{
  unsigned level = std::max(t.level(), r.level());
  auto tt = mpt_refine(t, level);
  auto rr = mpt_refine(r, level);

  // Interval B at level j covers the level-n block [b 2^(n-j), (b+1) 2^(n-j)).
  // mu(T(B) triangle R(B)) = 2 (|B| - |T(B) and R(B)|) / 2^n.
  Rational total = 0;
  std::vector<int> mark(tt.size(), 0);
  int stamp = 0;
  std::size_t m = 0;
  for (unsigned j = 0; j <= level; ++j) {
    std::size_t width = std::size_t{1} << (level - j);
    for (std::size_t b = 0; b < interval_count(j); ++b, ++m) {
      ++stamp;
      for (std::size_t i = b * width; i < (b + 1) * width; ++i)
        mark[tt(static_cast<Index>(i))] = stamp;
      std::size_t common = 0;
      for (std::size_t i = b * width; i < (b + 1) * width; ++i)
        if (mark[rr(static_cast<Index>(i))] == stamp)
          ++common;
      std::size_t sym = 2 * (width - common);
      if (sym)
        total += dyadic(sym, level) * pow2_inverse(static_cast<unsigned>(m + 1));
    }
  }
  return total;
}

Rational delta_u_prime(DyadicMPT const &t, DyadicMPT const &r)
{
  unsigned level = std::max(t.level(), r.level());
  auto p = mpt_compose(mpt_inverse(mpt_refine(t, level)), mpt_refine(r, level));
  std::size_t boundary = 0;
  for (auto const &[len, count] : mpt_cycles(p).census)
    if (len >= 2)
      boundary += count * (len - len % 2);
  return dyadic(boundary, level);
}

TowerData TowerData::refine(unsigned target) const
{
  if (target < level)
    throw Error(ErrorKind::InvalidArgument, "cannot refine a tower to a coarser level");
  TowerData out;
  out.level = target;
  out.height = height;
  Index factor = Index{1} << (target - level);
  for (auto const &col : columns)
    for (Index j = 0; j < factor; ++j) {
      std::vector<Index> c;
      c.reserve(col.size());
      for (Index x : col)
        c.push_back(x * factor + j);
      out.columns.push_back(std::move(c));
    }
  out.base = base.refine(target);
  for (auto const &l : levels)
    out.levels.push_back(l.refine(target));
  out.leftover = leftover.refine(target);
  return out;
}

std::vector<std::optional<std::pair<std::size_t, std::size_t>>> TowerData::locate() const
{
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> where(interval_count(level));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t k = 0; k < columns[c].size(); ++k)
      where[columns[c][k]] = std::make_pair(c, k);
  return where;
}

TowerData rokhlin_tower(DyadicMPT const &t, std::size_t height, Rational const &eps)
{
  if (height == 0)
    throw Error(ErrorKind::InvalidArgument, "tower height must be positive");
  if (eps < 0)
    throw Error(ErrorKind::InvalidArgument, "tower tolerance must not be negative");

  auto cycles = mpt_cycles(t);
  if (!cycles.is_aperiodic_up_to(height))
    throw Error(ErrorKind::NotAperiodic,
                "cycle of length " + std::to_string(cycles.min_length()) +
                  " is shorter than the tower height " + std::to_string(height));

  TowerData tower;
  tower.level = t.level();
  tower.height = height;
  std::vector<std::vector<Index>> levels(height);
  std::vector<Index> leftover;
  for (auto const &cycle : cycles.cycles) {
    std::size_t full = cycle.size() / height;
    for (std::size_t c = 0; c < full; ++c) {
      std::vector<Index> col(cycle.begin() + static_cast<std::ptrdiff_t>(c * height),
                             cycle.begin() + static_cast<std::ptrdiff_t>((c + 1) * height));
      for (std::size_t k = 0; k < height; ++k)
        levels[k].push_back(col[k]);
      tower.columns.push_back(std::move(col));
    }
    leftover.insert(leftover.end(), cycle.begin() + static_cast<std::ptrdiff_t>(full * height),
                    cycle.end());
  }
  for (auto &l : levels)
    tower.levels.emplace_back(t.level(), std::move(l));
  tower.base = tower.levels.front();
  tower.leftover = DyadicSet(t.level(), std::move(leftover));

  if (tower.leftover.measure() > eps)
    throw Error(ErrorKind::TowerTooCoarse,
                "leftover measure " + to_string(tower.leftover.measure()) + " exceeds " +
                  to_string(eps));
  return tower;
}

PeriodicApproximation periodic_approximation(DyadicMPT const &t, std::size_t height,
                                             Rational const &eps, unsigned max_refinement)
{
  TowerData tower = rokhlin_tower(t, height, eps);
  DyadicMPT work = t;
  unsigned extra = 0;
  while (tower.leftover.count() % height != 0) {
    if (extra == max_refinement)
      throw Error(ErrorKind::LeftoverIndivisible,
                  std::to_string(tower.leftover.count()) + " leftover intervals at level " +
                    std::to_string(tower.level) + " do not split into " +
                    std::to_string(height) + "-cycles");
    ++extra;
    tower = tower.refine(tower.level + 1);
    work = mpt_refine(work, tower.level);
  }

  std::vector<Index> s0 = work.perm();
  TowerData exact = tower;
  for (auto const &col : tower.columns)
    s0[col.back()] = col.front();

  auto const &rest = tower.leftover.members();
  for (std::size_t g = 0; g < rest.size(); g += height) {
    std::vector<Index> col(rest.begin() + static_cast<std::ptrdiff_t>(g),
                           rest.begin() + static_cast<std::ptrdiff_t>(g + height));
    for (std::size_t k = 0; k < height; ++k)
      s0[col[k]] = col[(k + 1) % height];
    exact.columns.push_back(std::move(col));
  }

  std::vector<std::vector<Index>> levels(height);
  for (auto const &col : exact.columns)
    for (std::size_t k = 0; k < height; ++k)
      levels[k].push_back(col[k]);
  exact.levels.clear();
  for (auto &l : levels)
    exact.levels.emplace_back(tower.level, std::move(l));
  exact.base = exact.levels.front();
  exact.leftover = DyadicSet::empty(tower.level);

  PeriodicApproximation out{DyadicMPT(tower.level, std::move(s0)), std::move(tower),
                            std::move(exact), Rational(0)};
  out.distance = delta_u(work, out.periodic_map);
  return out;
}

namespace
{

DyadicMPT conjugator_from_columns(std::vector<std::vector<Index>> const &t_cols,
                                  std::vector<std::vector<Index>> const &s_cols, unsigned level)
{
  // R^-1 T R = S  <=>  R(S x) = T(R x): send the k-th entry of an S column
  // to the k-th entry of the paired T column.
  std::vector<Index> r(interval_count(level));
  for (std::size_t c = 0; c < s_cols.size(); ++c)
    for (std::size_t k = 0; k < s_cols[c].size(); ++k)
      r[s_cols[c][k]] = t_cols[c][k];
  return DyadicMPT(level, std::move(r));
}

} // namespace

ConjugateMatch mpt_conjugate_match(DyadicMPT const &t, DyadicMPT const &s, Rational const &eps)
{
  unsigned level = std::max(t.level(), s.level());
  auto tt = mpt_refine(t, level);
  auto ss = mpt_refine(s, level);

  auto conjugate_distance = [&](DyadicMPT const &r) {
    return delta_u(mpt_compose(mpt_inverse(r), mpt_compose(tt, r)), ss);
  };

  if (tt == ss)
    return {DyadicMPT::identity(level), Rational(0), 0};

  auto ct = mpt_cycles(tt);
  auto cs = mpt_cycles(ss);
  if (ct.census == cs.census) {
    auto by_length = [](std::vector<Index> const &a, std::vector<Index> const &b) {
      return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    };
    std::sort(ct.cycles.begin(), ct.cycles.end(), by_length);
    std::sort(cs.cycles.begin(), cs.cycles.end(), by_length);
    auto r = conjugator_from_columns(ct.cycles, cs.cycles, level);
    return {r, conjugate_distance(r), 0};
  }

  std::size_t longest = std::min(ct.min_length(), cs.min_length());
  std::string last_failure = "no admissible tower height";
  std::optional<Error> last_error;
  for (std::size_t n = 1; n <= longest; n *= 2) {
    if (Rational(static_cast<long>(n)) * eps <= 1)
      continue;
    try {
      auto pt = periodic_approximation(tt, n, eps);
      auto ps = periodic_approximation(ss, n, eps);
      unsigned common = std::max(pt.exact_tower.level, ps.exact_tower.level);
      auto tower_t = pt.exact_tower.refine(common);
      auto tower_s = ps.exact_tower.refine(common);
      auto r = conjugator_from_columns(tower_t.columns, tower_s.columns, common);
      ConjugateMatch m{r, conjugate_distance(r), n};
      if (m.achieved < eps)
        return m;
      last_failure = "height " + std::to_string(n) + " achieved " + to_string(m.achieved);
      last_error.reset();
    } catch (Error const &e) {
      last_failure = e.what();
      last_error = e;
    }
  }
  if (last_error)
    throw *last_error;
  throw Error(ErrorKind::OracleFailure,
              "no conjugator within " + to_string(eps) + " (" + last_failure + ")");
}

} // namespace randiso
