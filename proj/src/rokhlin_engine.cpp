#include "randiso/rokhlin_engine.hpp"

#include <map>

namespace randiso
{

namespace
{

struct Attempt
{
  WindowPerm sigma;
  std::size_t max_length = 0;
  std::size_t copies = 0;
};

/// Synthesis with a fixed sigma; InsufficientCyclesError escapes.
SynthesisResult run_synthesis(SynthesisTask const &task, Attempt const &att)
{
  SymmetricGroup grp;
  std::size_t n_height = task.height;
  std::size_t k_window = task.window;

  SynthesisResult out;
  out.sigma = att.sigma;
  out.max_length = att.max_length;
  out.copies = att.copies;
  out.approx = periodic_approximation(task.s, n_height,
                                      task.eps - Rational(1, static_cast<unsigned long>(n_height)));

  unsigned level = std::max(out.approx.exact_tower.level, task.h.level());
  TowerData tower = out.approx.exact_tower.refine(level);
  DyadicMPT s0 = mpt_refine(out.approx.periodic_map, level);
  DyadicMPT s = mpt_refine(task.s, level);
  auto h = task.h.refine(level);
  auto const &sigma = att.sigma;
  WindowPerm sigma_n = power(sigma, static_cast<std::int64_t>(n_height));

  MatchOptions options{task.codomain_limit};
  std::map<PartialInjection, WindowPerm> matched;
  std::vector<WindowPerm> g(interval_count(level));
  std::vector<WindowPerm> column_products;
  for (auto const &col : tower.columns) {
    auto product = tower_product(grp, h, s0, tower, col.front());
    auto target = restrict_to_window(product, k_window);
    auto it = matched.find(target);
    if (it == matched.end())
      it = matched.emplace(target, match_on_window(sigma, n_height, target, options)).first;
    // g(x) = rho h(S0^{N-1} x) ... h(S0 x)
    WindowPerm base = it->second;
    for (std::size_t k = col.size(); k-- > 1;)
      base = base * h[col[k]];
    g[col.front()] = std::move(base);
    for (std::size_t k = 1; k < col.size(); ++k)
      g[col[k]] = sigma * g[col[k - 1]] * inverse(h[col[k]]);
    column_products.push_back(std::move(product));
  }

  auto s0_inv = mpt_inverse(s0);
  auto s_inv = mpt_inverse(s);
  auto where = tower.locate();
  out.equation_ok = true;
  std::size_t good = 0;
  for (std::size_t y = 0; y < g.size(); ++y) {
    auto [c, lv] = *where[y];
    Index prev0 = s0_inv(static_cast<Index>(y));
    Index prev = s_inv(static_cast<Index>(y));
    bool agrees = true;
    for (Point n = 0; n < k_window; ++n) {
      Point lhs = g[y](h[y](n));
      Point rhs = sigma(g[prev0](n));
      out.equation.push_back({c, lv, static_cast<Index>(y), n, lhs, rhs, lhs == rhs});
      out.equation_ok = out.equation_ok && lhs == rhs;
      agrees = agrees && lhs == sigma(g[prev](n));
    }
    if (agrees)
      ++good;
  }
  out.agreement = dyadic(good, level);

  out.telescoping_ok = true;
  for (std::size_t c = 0; c < tower.columns.size(); ++c) {
    Index top = tower.columns[c].back();
    WindowPerm top_inv = inverse(g[top]);
    for (Point n = 0; n < k_window; ++n) {
      Point lhs = top_inv(sigma_n(g[top](n)));
      Point rhs = column_products[c](n);
      out.telescoping.push_back({c, n_height - 1, top, n, lhs, rhs, lhs == rhs});
      out.telescoping_ok = out.telescoping_ok && lhs == rhs;
    }
  }

  out.g = StepFn<WindowPerm>(level, std::move(g));
  out.success = out.equation_ok && out.telescoping_ok && out.agreement >= 1 - task.eps;
  return out;
}

WindowPerm relabel_down(WindowPerm const &p, std::size_t lo, std::size_t size)
{
  std::vector<Point> m(size);
  for (std::size_t i = 0; i < size; ++i) {
    Point v = p(static_cast<Point>(lo + i));
    if (v < lo || v >= lo + size)
      throw Error(ErrorKind::SimultaneousMatchUnsupported,
                  "permutation leaves its block [" + std::to_string(lo) + ", " +
                    std::to_string(lo + size) + ")");
    m[i] = static_cast<Point>(v - lo);
  }
  for (std::size_t i = 0; i < p.window(); ++i)
    if ((i < lo || i >= lo + size) && p(static_cast<Point>(i)) != i)
      throw Error(ErrorKind::SimultaneousMatchUnsupported,
                  "permutation moves " + std::to_string(i) + " outside its block");
  return WindowPerm(std::move(m));
}

WindowPerm relabel_up(WindowPerm const &p, std::size_t lo)
{
  std::vector<Point> m(lo + p.window());
  for (std::size_t i = 0; i < lo; ++i)
    m[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < p.window(); ++i)
    m[lo + i] = static_cast<Point>(p.map()[i] + lo);
  return WindowPerm(std::move(m));
}

struct FiberSearch
{
  StepFn<WindowPerm> k;
  std::size_t height = 0;
};

/// k~ with (C_sigma, R)^(k~, Id) inside the fiber part of `target`. Tries
/// powers of two N with 1/N below the smallest radius.
FiberSearch search_fiber(SymTildeGroup const &tg, WindowPerm const &sigma, DyadicMPT const &r,
                         StepFn<WindowPerm> const &center,
                         std::vector<StepFn<Point>> const &tests,
                         std::vector<Rational> const &radii,
                         std::optional<std::size_t> codomain_limit)
{
  Rational radius = *std::min_element(radii.begin(), radii.end());
  std::size_t k_window = 1;
  for (auto const &t : tests)
    for (Point p : t.values())
      k_window = std::max<std::size_t>(k_window, std::size_t{p} + 1);

  SymProductNeighborhood fiber_only;
  fiber_only.fiber_center = center;
  fiber_only.fiber_tests = tests;
  fiber_only.fiber_radii = radii;
  fiber_only.aut_center = r;

  std::size_t longest = mpt_cycles(r).min_length();
  std::string last = "no tower height N with 1/N < " + to_string(radius) + " fits the cycles";
  for (std::size_t n = 2; n <= longest; n *= 2) {
    if (Rational(static_cast<unsigned long>(n)) * radius <= 1)
      continue;
    SynthesisTask task;
    task.sigma = sigma;
    task.s = r;
    task.h = center;
    task.window = k_window;
    task.height = n;
    task.eps = radius;
    task.codomain_limit = codomain_limit;
    try {
      auto res = synthesize_conjugator(task);
      auto moved = tg.conjugate(tg.constant(sigma, r), SymTilde{res.g, DyadicMPT::identity(0)});
      if (evaluate(tg, fiber_only, moved).member)
        return {res.g, n};
      last = "height " + std::to_string(n) + " left the fiber condition unmet";
    } catch (Error const &e) {
      last = e.what();
    }
  }
  throw Error(ErrorKind::OracleFailure, "fiber component: " + last);
}

bool same_aut_part(SymProductNeighborhood const &a, SymProductNeighborhood const &b)
{
  return a.aut_center == b.aut_center && a.aut_sets == b.aut_sets && a.aut_radius == b.aut_radius;
}

/// Q with mu(T*(A) triangle Q^-1 S Q (A)) < delta for every A: Delta_u below delta/2.
std::pair<DyadicMPT, Rational> aut_step(DyadicMPT const &s, SymProductNeighborhood const &target)
{
  try {
    auto m = mpt_conjugate_match(s, target.aut_center, target.aut_radius / 2);
    return {m.conjugator, m.achieved};
  } catch (Error const &e) {
    throw Error(ErrorKind::OracleFailure, std::string("aut component: ") + e.what());
  }
}

} // namespace

SynthesisResult synthesize_conjugator(SynthesisTask const &task)
{
  std::size_t n = task.height;
  if (n == 0 || task.window == 0)
    throw Error(ErrorKind::InvalidArgument, "height and window must be positive");
  if (Rational(static_cast<unsigned long>(n)) * task.eps < 1)
    throw Error(ErrorKind::InvalidArgument, "need 1/N <= eps");

  if (task.sigma)
    return run_synthesis(task, {*task.sigma, 0, 0});

  std::size_t length = n * (task.window + 1);
  std::size_t copies = (task.window + n - 1) / n;
  for (unsigned growth = 0;; ++growth) {
    auto surrogate = generic_surrogate(length, copies);
    try {
      return run_synthesis(task, {surrogate.realized, length, copies});
    } catch (InsufficientCyclesError const &) {
      if (growth == task.max_growth)
        throw;
      copies *= 2;
    }
  }
}

DensityResult conjugate_into_neighborhood(SymTildeGroup const &tg, WindowPerm const &sigma,
                                          DyadicMPT const &s, SymProductNeighborhood const &target)
{
  DensityResult out;
  SymTilde source = tg.constant(sigma, s);
  auto direct = evaluate(tg, target, source);
  if (direct.member) {
    out.conjugator = tg.identity();
    out.conjugated = source;
    out.membership = direct;
    return out;
  }

  DyadicMPT q = DyadicMPT::identity(0);
  if (!target.aut_sets.empty()) {
    auto [conj, achieved] = aut_step(s, target);
    q = conj;
    out.aut_distance = achieved;
  }
  DyadicMPT r = mpt_compose(mpt_inverse(q), mpt_compose(s, q));

  StepFn<WindowPerm> k_tilde = StepFn<WindowPerm>::constant(WindowPerm::identity());
  if (!target.fiber_tests.empty()) {
    auto found = search_fiber(tg, sigma, r, target.fiber_center, target.fiber_tests,
                              target.fiber_radii, std::nullopt);
    k_tilde = found.k;
    out.height = found.height;
  }

  out.conjugator = {compose_map(k_tilde, mpt_inverse(q)), q};
  out.conjugated = tg.conjugate(source, out.conjugator);
  out.membership = evaluate(tg, target, out.conjugated);
  if (!out.membership.member)
    throw Error(ErrorKind::OracleFailure, "conjugate misses the target after both steps");
  return out;
}

ConstantConjugation approx_conjugate_constant(SymTildeGroup const &tg, WindowPerm const &h,
                                              DyadicMPT const &t, DyadicMPT const &s,
                                              Rational const &eps)
{
  auto m = mpt_conjugate_match(t, s, eps);
  ConstantConjugation out;
  out.conjugator = {StepFn<WindowPerm>::constant(WindowPerm::identity()), m.conjugator};
  out.delta = m.achieved;
  auto moved = tg.conjugate(tg.constant(h, t), out.conjugator);
  out.certified = lu_exact_discrete(tg, moved, tg.constant(h, s));
  out.ok = out.certified < eps;
  return out;
}

DiagonalReport diagonal_experiment(SymTildeGroup const &tg,
                                   std::vector<std::pair<WindowPerm, DyadicMPT>> const &sources,
                                   std::vector<SymProductNeighborhood> const &targets,
                                   std::vector<std::size_t> const &blocks)
{
  std::size_t n = sources.size();
  if (n == 0 || targets.size() != n)
    throw Error(ErrorKind::InvalidArgument, "need one target per coordinate");
  if (blocks.size() != n + 1 || !std::is_sorted(blocks.begin(), blocks.end()))
    throw Error(ErrorKind::InvalidArgument, "need n+1 increasing block boundaries");

  auto const &t = sources.front().second;
  SymProductNeighborhood const *aut_target = nullptr;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sources[i].second == t))
      throw Error(ErrorKind::SimultaneousMatchUnsupported,
                  "coordinates carry different transformations");
    if (targets[i].aut_sets.empty())
      continue;
    if (aut_target && !same_aut_part(*aut_target, targets[i]))
      throw Error(ErrorKind::SimultaneousMatchUnsupported, "coordinates ask for different Aut parts");
    aut_target = &targets[i];
  }

  DiagonalReport out;
  std::vector<SymTilde> src;
  for (auto const &[sigma, tt] : sources)
    src.push_back(tg.constant(sigma, tt));

  bool all_in = true;
  for (std::size_t i = 0; i < n; ++i)
    all_in = all_in && evaluate(tg, targets[i], src[i]).member;
  if (all_in) {
    out.conjugator = tg.identity();
  } else {
    DyadicMPT q = DyadicMPT::identity(0);
    if (aut_target)
      q = aut_step(t, *aut_target).first;
    DyadicMPT r = mpt_compose(mpt_inverse(q), mpt_compose(t, q));

    StepFn<WindowPerm> k_tilde = StepFn<WindowPerm>::constant(WindowPerm::identity());
    for (std::size_t i = 0; i < n; ++i) {
      if (targets[i].fiber_tests.empty())
        continue;
      std::size_t lo = blocks[i];
      std::size_t size = blocks[i + 1] - lo;
      auto sigma = relabel_down(sources[i].first, lo, size);
      auto center = map(targets[i].fiber_center, [&](WindowPerm const &v) {
        return relabel_down(v, lo, size);
      });
      std::vector<StepFn<Point>> tests;
      for (auto const &test : targets[i].fiber_tests)
        tests.push_back(map(test, [&](Point p) {
          if (p < lo || p >= lo + size)
            throw Error(ErrorKind::SimultaneousMatchUnsupported, "test point outside its block");
          return static_cast<Point>(p - lo);
        }));
      auto found = search_fiber(tg, sigma, r, center, tests, targets[i].fiber_radii, size);
      auto lifted = map(found.k, [&](WindowPerm const &v) { return relabel_up(v, lo); });
      k_tilde = l0_product(tg.base(), k_tilde, lifted);
    }
    out.conjugator = {compose_map(k_tilde, mpt_inverse(q)), q};
  }

  out.success = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto moved = tg.conjugate(src[i], out.conjugator);
    auto rep = evaluate(tg, targets[i], moved);
    out.success = out.success && rep.member;
    out.coordinates.push_back({std::move(moved), std::move(rep)});
  }
  return out;
}

} // namespace randiso
