#include "randiso/window_perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "randiso/error.hpp"

namespace randiso
{

WindowPerm::WindowPerm(std::vector<Point> map)
: _map(std::move(map))
{
  std::vector<bool> seen(_map.size(), false);
  for (Point v : _map) {
    if (v >= _map.size() || seen[v])
      throw Error(ErrorKind::InvalidArgument, "not a bijection of its window");
    seen[v] = true;
  }
}

WindowPerm WindowPerm::identity(std::size_t window)
{
  std::vector<Point> m(window);
  std::iota(m.begin(), m.end(), Point{0});
  return WindowPerm(std::move(m));
}

WindowPerm WindowPerm::from_cycles(std::vector<std::vector<Point>> const &cs, std::size_t window)
{
  std::size_t w = window;
  for (auto const &c : cs)
    for (Point p : c)
      w = std::max<std::size_t>(w, std::size_t{p} + 1);

  std::vector<Point> m(w);
  std::iota(m.begin(), m.end(), Point{0});
  std::vector<bool> used(w, false);
  for (auto const &c : cs)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (used[c[i]])
        throw Error(ErrorKind::InvalidArgument, "cycles are not disjoint");
      used[c[i]] = true;
      m[c[i]] = c[(i + 1) % c.size()];
    }
  return WindowPerm(std::move(m));
}

std::size_t WindowPerm::support_bound() const
{
  for (std::size_t i = _map.size(); i > 0; --i)
    if (_map[i - 1] != i - 1)
      return i;
  return 0;
}

WindowPerm WindowPerm::extended(std::size_t window) const
{
  if (window <= _map.size())
    return *this;
  WindowPerm out = *this;
  out._map.reserve(window);
  for (std::size_t i = _map.size(); i < window; ++i)
    out._map.push_back(static_cast<Point>(i));
  return out;
}

bool operator==(WindowPerm const &a, WindowPerm const &b)
{
  std::size_t w = std::max(a.window(), b.window());
  for (std::size_t i = 0; i < w; ++i)
    if (a(static_cast<Point>(i)) != b(static_cast<Point>(i)))
      return false;
  return true;
}

WindowPerm operator*(WindowPerm const &a, WindowPerm const &b)
{
  std::size_t w = std::max(a.window(), b.window());
  std::vector<Point> m(w);
  for (std::size_t i = 0; i < w; ++i)
    m[i] = a(b(static_cast<Point>(i)));
  return WindowPerm(std::move(m));
}

WindowPerm inverse(WindowPerm const &a)
{
  std::vector<Point> m(a.window());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[a.map()[i]] = static_cast<Point>(i);
  return WindowPerm(std::move(m));
}

WindowPerm power(WindowPerm const &a, std::int64_t exponent)
{
  WindowPerm base = exponent < 0 ? inverse(a) : a;
  auto e = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  WindowPerm result = WindowPerm::identity(a.window());
  while (e) {
    if (e & 1u)
      result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

std::vector<std::vector<Point>> cycles(WindowPerm const &a)
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(a.window(), false);
  for (std::size_t s = 0; s < a.window(); ++s) {
    if (seen[s])
      continue;
    std::vector<Point> c;
    auto p = static_cast<Point>(s);
    while (!seen[p]) {
      seen[p] = true;
      c.push_back(p);
      p = a(p);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Census cycle_census(WindowPerm const &a)
{
  Census c;
  for (auto const &cy : cycles(a))
    ++c[cy.size()];
  return c;
}

PermMetrics perm_metrics(WindowPerm const &a, WindowPerm const &b)
{
  PermMetrics m{0, 0};
  std::size_t w = std::max(a.window(), b.window());
  for (std::size_t i = 0; i < w; ++i)
    if (a(static_cast<Point>(i)) != b(static_cast<Point>(i)))
      m.polish += pow2_inverse(static_cast<unsigned>(i + 1));
  m.uniform = m.polish == 0 ? 0 : 1;
  return m;
}

GenericSurrogate generic_surrogate(std::size_t max_length, std::size_t copies)
{
  if (max_length == 0 || copies == 0)
    throw Error(ErrorKind::InvalidArgument, "generic surrogate needs L, C >= 1");

  std::vector<std::vector<Point>> cs;
  Point next = 0;
  for (std::size_t len = 1; len <= max_length; ++len)
    for (std::size_t c = 0; c < copies; ++c) {
      std::vector<Point> cy(len);
      std::iota(cy.begin(), cy.end(), next);
      next += static_cast<Point>(len);
      cs.push_back(std::move(cy));
    }
  return {max_length, copies, WindowPerm::from_cycles(cs, next)};
}

Census power_cycle_type(WindowPerm const &a, std::size_t n)
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "power must be positive");
  Census out;
  for (auto const &[len, count] : cycle_census(a)) {
    std::size_t g = std::gcd(len, n);
    out[len / g] += count * g;
  }
  return out;
}

PartialInjection restrict_to_window(WindowPerm const &a, std::size_t k)
{
  PartialInjection t(k);
  for (std::size_t i = 0; i < k; ++i)
    t[i] = a(static_cast<Point>(i));
  return t;
}

namespace
{

struct Slot
{
  std::vector<Point> points;
  bool used = false;
};

} // namespace

WindowPerm match_on_window(WindowPerm const &sigma, std::size_t n, PartialInjection const &target,
                           MatchOptions const &options)
{
  std::map<Point, Point> next;
  std::map<Point, Point> prev;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!target[i])
      continue;
    auto from = static_cast<Point>(i);
    Point to = *target[i];
    if (!prev.emplace(to, from).second)
      throw Error(ErrorKind::NotInjective,
                  "two points map to " + std::to_string(to) + " in the target");
    next.emplace(from, to);
  }

  // Split the target graph into chains (open paths) and closed cycles.
  std::vector<std::vector<Point>> chains, loops;
  std::set<Point> visited;
  for (auto const &[from, to] : next) {
    if (prev.count(from) || visited.count(from))
      continue;
    std::vector<Point> path{from};
    visited.insert(from);
    for (auto it = next.find(from); it != next.end(); it = next.find(it->second)) {
      path.push_back(it->second);
      visited.insert(it->second);
    }
    chains.push_back(std::move(path));
  }
  for (auto const &[from, to] : next) {
    if (visited.count(from))
      continue;
    std::vector<Point> loop{from};
    visited.insert(from);
    for (Point p = to; p != from; p = next.at(p)) {
      loop.push_back(p);
      visited.insert(p);
    }
    loops.push_back(std::move(loop));
  }
  std::stable_sort(chains.begin(), chains.end(),
                   [](auto const &a, auto const &b) { return a.size() > b.size(); });

  // Cycles of sigma^N available for the embedding.
  WindowPerm sn = power(sigma, static_cast<std::int64_t>(n));
  std::size_t limit = options.codomain_limit.value_or(SIZE_MAX);
  std::vector<Slot> slots;
  std::vector<Point> window_fixed;
  Census available;
  for (auto &cy : cycles(sn)) {
    if (*std::max_element(cy.begin(), cy.end()) >= limit)
      continue;
    ++available[cy.size()];
    if (cy.size() == 1)
      window_fixed.push_back(cy.front());
    else
      slots.push_back({std::move(cy), false});
  }
  std::size_t fixed_taken = 0;
  Point fresh = static_cast<Point>(sn.window());
  auto take_fixed = [&]() -> std::optional<Point> {
    if (fixed_taken < window_fixed.size())
      return window_fixed[fixed_taken++];
    if (fresh >= limit)
      return std::nullopt;
    return fresh++;
  };

  Census needed;
  for (auto const &l : loops)
    ++needed[l.size()];
  for (auto const &c : chains)
    ++needed[c.size()];
  auto fail = [&](std::string const &what) {
    if (!options.codomain_limit)
      available[1] = SIZE_MAX;
    throw InsufficientCyclesError(needed, available, what);
  };

  std::map<Point, Point> assign;
  auto lay = [&](std::vector<Point> const &nodes, std::vector<Point> const &onto) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      assign[nodes[i]] = onto[i];
  };

  for (auto const &loop : loops) {
    if (loop.size() == 1) {
      auto p = take_fixed();
      if (!p)
        fail("no fixed point of sigma^N left for " + std::to_string(loop.front()));
      assign[loop.front()] = *p;
      continue;
    }
    auto it = std::find_if(slots.begin(), slots.end(), [&](Slot const &s) {
      return !s.used && s.points.size() == loop.size();
    });
    if (it == slots.end())
      fail("no unused " + std::to_string(loop.size()) + "-cycle in sigma^N");
    it->used = true;
    lay(loop, it->points);
  }
  for (auto const &chain : chains) {
    auto it = std::find_if(slots.begin(), slots.end(), [&](Slot const &s) {
      return !s.used && s.points.size() >= chain.size();
    });
    if (it == slots.end())
      fail("no unused cycle of length >= " + std::to_string(chain.size()) + " in sigma^N");
    it->used = true;
    lay(chain, it->points);
  }

  // Complete to a bijection: free sources to free targets in increasing order.
  std::size_t w = 0;
  std::set<Point> images;
  for (auto const &[from, to] : assign) {
    w = std::max<std::size_t>(w, std::max(from, to) + std::size_t{1});
    images.insert(to);
  }
  std::vector<Point> rho(w);
  std::vector<Point> free_targets;
  for (Point p = 0; p < w; ++p)
    if (!images.count(p))
      free_targets.push_back(p);
  std::size_t ft = 0;
  for (Point p = 0; p < w; ++p) {
    auto it = assign.find(p);
    rho[p] = it != assign.end() ? it->second : free_targets[ft++];
  }
  WindowPerm result(std::move(rho));

  for (auto const &[from, to] : next)
    if (sn(result(from)) != result(to))
      throw std::logic_error("match_on_window: conjugation identity failed at " +
                             std::to_string(from));
  return result;
}

} // namespace randiso
