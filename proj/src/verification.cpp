#include "randiso/verification.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "randiso/generators.hpp"
#include "randiso/rokhlin_engine.hpp"
#include "randiso/text_format.hpp"

namespace randiso
{

namespace
{

/// Collects the first failure; later checks still run but are not reported.
struct Run
{
  std::size_t cases = 0;
  std::string failure;
  std::string summary;

  template <class Msg>
  bool check(bool ok, Msg msg)
  {
    if (!ok && failure.empty())
      failure = "case " + std::to_string(cases) + ": " + msg();
    return ok;
  }
};

template <class P>
bool same_field(StepFn<P> const &a, StepFn<P> const &b)
{
  unsigned level = std::max(a.level(), b.level());
  for (std::size_t i = 0; i < interval_count(level); ++i)
    if (!(a.at(i, level) == b.at(i, level)))
      return false;
  return true;
}

std::vector<Index> inverse_table(DyadicMPT const &t)
{
  std::vector<Index> inv(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    inv[t(static_cast<Index>(i))] = static_cast<Index>(i);
  return inv;
}

/// Count of intervals where the maps differ, over 2^level.
Rational disagreement(DyadicMPT const &t, DyadicMPT const &r)
{
  unsigned level = std::max(t.level(), r.level());
  auto a = mpt_refine(t, level);
  auto b = mpt_refine(r, level);
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a(static_cast<Index>(i)) != b(static_cast<Index>(i)))
      ++count;
  return dyadic(count, level);
}

/// Equal as maps, whatever the levels they are stored at.
template <class E>
bool same_element(E const &a, E const &b)
{
  return same_field(a.f, b.f) && disagreement(a.t, b.t) == 0;
}

/// Lengths of the cycles, by walking the map.
std::vector<std::size_t> cycle_lengths(DyadicMPT const &t)
{
  std::vector<bool> seen(t.size());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (Index j = static_cast<Index>(i); !seen[j]; j = t(j)) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

DyadicSet random_set(Rng &rng, unsigned level)
{
  std::vector<Index> members;
  for (std::size_t i = 0; i < interval_count(level); ++i)
    if (gen::coin(rng))
      members.push_back(static_cast<Index>(i));
  return DyadicSet(level, std::move(members));
}

FiniteMetricSpace three_point_space()
{
  return FiniteMetricSpace({{0, 1, 1}, {1, 0, Rational(1, 2)}, {1, Rational(1, 2), 0}});
}

// 1 -------------------------------------------------------------------------------

void metric_axioms(Run &run, Rng &rng)
{
  SymmetricGroup grp;
  auto perm_eq = [](StepFn<WindowPerm> const &a, StepFn<WindowPerm> const &b) { return same_field(a, b); };
  using Metric = std::function<Rational(StepFn<WindowPerm> const &, StepFn<WindowPerm> const &)>;
  std::vector<std::pair<std::string, Metric>> metrics = {
    {"d^", [&](auto const &a, auto const &b) { return dhat_p(grp, a, b); }},
    {"d^_u", [&](auto const &a, auto const &b) { return dhat_u(grp, a, b); }}};

  for (; run.cases < 500; ++run.cases) {
    auto level = [&] { return static_cast<unsigned>(gen::uniform(rng, 0, 8)); };
    auto f = gen::perm_step(rng, level(), gen::uniform(rng, 1, 16), gen::coin(rng));
    StepFn<WindowPerm> g;
    if (gen::coin(rng)) {
      // a copy of f at a finer level, changed on at most two intervals
      unsigned lv = std::max(f.level(), level());
      auto values = f.refine(lv).values();
      for (std::size_t j = gen::uniform(rng, 0, 2); j > 0; --j)
        values[gen::uniform(rng, 0, values.size() - 1)] = gen::random_perm(rng, gen::uniform(rng, 1, 16));
      g = StepFn<WindowPerm>(lv, std::move(values));
    } else {
      g = gen::perm_step(rng, level(), gen::uniform(rng, 1, 16), gen::coin(rng));
    }
    auto h = gen::perm_step(rng, level(), gen::uniform(rng, 1, 16), gen::coin(rng));

    for (auto const &[name, d] : metrics) {
      auto fg = d(f, g), gf = d(g, f), gh = d(g, h), fh = d(f, h);
      run.check(d(f, f) == 0 && d(g, g) == 0, [&] { return name + "(f,f) != 0"; });
      run.check(fg == gf, [&] { return name + " not symmetric: " + to_string(fg) + " vs " + to_string(gf); });
      run.check(fg >= 0 && fh >= 0 && gh >= 0, [&] { return name + " negative"; });
      run.check(fh <= fg + gh, [&] {
        return name + " triangle: " + to_string(fh) + " > " + to_string(fg) + " + " + to_string(gh);
      });
      run.check((fg == 0) == perm_eq(f, g), [&] { return name + " zero iff equal fails"; });
    }
    for (auto const &[a, b] : {std::pair{&f, &g}, std::pair{&g, &h}, std::pair{&f, &h}}) {
      auto p = dhat_p(grp, *a, *b);
      auto u = dhat_u(grp, *a, *b);
      run.check(p <= u, [&] { return "d^ = " + to_string(p) + " exceeds d^_u = " + to_string(u); });
    }
  }
}

// 2 -------------------------------------------------------------------------------

void lower_semicontinuity(Run &run, Rng &rng)
{
  SymmetricGroup grp;
  std::size_t witnessed = 0;
  for (; run.cases < 100; ++run.cases) {
    std::size_t w = gen::uniform(rng, 1, 16);
    auto f = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 5)), w, gen::coin(rng));
    auto h = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 5)), w, gen::coin(rng));
    // seq_k agrees with f off a shrinking set S_k; on S_k it is f o (k k+1),
    // which agrees with f below k. The sets are nested, so d^(seq_k, f)
    // decreases strictly and seq_k -> f.
    unsigned lv = f.level() + static_cast<unsigned>(gen::uniform(rng, 0, 2));
    auto base = f.refine(lv);
    std::vector<bool> in(base.size(), true);
    std::vector<StepFn<WindowPerm>> seq;
    std::size_t length = 2 * w + 2;
    for (std::size_t k = 1; k <= length; ++k) {
      auto tau = WindowPerm::from_cycles({{static_cast<Point>(k), static_cast<Point>(k + 1)}});
      std::vector<WindowPerm> values = base.values();
      for (std::size_t i = 0; i < values.size(); ++i)
        if (in[i])
          values[i] = values[i] * tau;
      seq.emplace_back(lv, std::move(values));
      for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i] && gen::uniform(rng, 0, 3) == 0)
          in[i] = false;
    }
    auto base_u = dhat_u(grp, f, h);
    std::optional<Rational> r;
    if (base_u > 0)
      r = base_u / 2;
    auto rep = lsc_probe(grp, f, h, seq, r);
    Rational tail = rep.uniform.back();
    for (std::size_t k = seq.size() / 2; k < seq.size(); ++k)
      tail = min(tail, dhat_u(grp, seq[k], h));
    run.check(rep.base == base_u && rep.tail_min == tail, [&] { return std::string("probe disagrees with direct evaluation"); });
    run.check(base_u <= tail, [&] {
      return "d^_u(f,h) = " + to_string(base_u) + " above tail minimum " + to_string(tail);
    });
    run.check(rep.holds, [&] { return std::string("probe reports failure"); });
    if (rep.witness) {
      ++witnessed;
      run.check(rep.witness->inside == rep.witness->inside_above, [&] {
        return "a sequence member within eps/(4N) has d^_u <= r";
      });
    }
  }
  run.summary = std::to_string(witnessed) + " witnesses checked";
}

// 3 -------------------------------------------------------------------------------

void exact_discrete(Run &run, Rng &rng)
{
  SymTildeGroup tg{SymmetricGroup{}};
  Rational worst_gap = 0;
  for (; run.cases < 200; ++run.cases) {
    unsigned level = static_cast<unsigned>(gen::uniform(rng, 6, 8));
    SymTilde x{gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 6, level)), gen::uniform(rng, 2, 6), true),
               gen::coin(rng) ? gen::sparse_mpt(rng, level) : gen::random_mpt(rng, level)};
    // b = identity, or a = b x with b random: either way b^-1 a = x
    SymTilde b = tg.identity();
    if (gen::coin(rng))
      b = {gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)), 4), gen::random_mpt(rng, 4)};
    SymTilde a = tg.product(b, x);

    unsigned lv = std::max(x.f.level(), x.t.level());
    auto t = mpt_refine(x.t, lv);
    std::size_t moved = 0;
    for (std::size_t i = 0; i < interval_count(lv); ++i)
      if (!x.f.at(i, lv).is_identity() || t(static_cast<Index>(i)) != i)
        ++moved;
    Rational oracle = dyadic(moved, lv);

    Rational exact = lu_exact_discrete(tg, a, b);
    run.check(exact == oracle, [&] { return "exact " + to_string(exact) + " != " + to_string(oracle); });
    auto est = lu_estimate(tg, a, b, 8, rng());
    run.check(est.value >= exact - Rational(1, 64), [&] {
      return "estimate " + to_string(est.value) + " below exact " + to_string(exact) + " - 1/64";
    });
    run.check(est.value <= exact, [&] { return "a witness exceeds the supremum"; });
    for (auto const &s : est.sampled)
      run.check(s <= exact, [&] { return "sampled " + to_string(s) + " > " + to_string(exact); });
    worst_gap = max(worst_gap, exact - est.value);
  }
  run.summary = "largest exact - estimate gap " + to_string(worst_gap);
}

// 4 -------------------------------------------------------------------------------

template <ActingGroup G>
Rational brute_force_lu(TildeGroup<G> const &tg, TildeElement<G> const &a, TildeElement<G> const &b,
                        std::size_t points)
{
  unsigned level = std::max({a.f.level(), a.t.level(), b.f.level(), b.t.level()});
  std::size_t cells = interval_count(level);
  std::vector<Point> values(cells, 0);
  Rational best = 0;
  while (true) {
    StepFn<Point> alpha(level, values);
    best = max(best, tg.field_distance(tg.act(a, alpha), tg.act(b, alpha)));
    std::size_t i = 0;
    while (i < cells && ++values[i] == points)
      values[i++] = 0;
    if (i == cells)
      return best;
  }
}

void sandwich(Run &run, Rng &rng)
{
  FiniteIsometryGroup grp(three_point_space());
  TildeGroup<FiniteIsometryGroup> tg(grp);
  using T = TildeElement<FiniteIsometryGroup>;
  std::size_t brute = 0;
  auto fiber = [&](unsigned level) {
    std::vector<WindowPerm> v;
    for (std::size_t i = 0; i < interval_count(level); ++i)
      v.push_back(grp.random_element(rng));
    return StepFn<WindowPerm>(level, std::move(v));
  };
  auto element = [&] {
    unsigned lf = static_cast<unsigned>(gen::uniform(rng, 0, 5));
    unsigned lt = static_cast<unsigned>(gen::uniform(rng, 0, 5));
    return T{fiber(lf), gen::coin(rng) ? gen::sparse_mpt(rng, lt) : gen::random_mpt(rng, lt)};
  };
  for (; run.cases < 200; ++run.cases) {
    T a = element();
    T b = gen::coin(rng) ? element() : T{a.f, gen::sparse_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 1, 5)))};
    auto bounds = lu_bounds(tg, a, b);
    auto est = lu_estimate(tg, a, b, 8, rng());
    auto du = dhat_u(grp, a.f, b.f);
    auto dt = disagreement(a.t, b.t);
    run.check(bounds.r == 1, [&] { return "anchor distance " + to_string(bounds.r); });
    run.check(bounds.fiber_distance == du && bounds.aut_distance == dt, [&] {
      return "product coordinates " + to_string(bounds.fiber_distance) + ", " + to_string(bounds.aut_distance) +
             " differ from d^_u = " + to_string(du) + ", Delta_u = " + to_string(dt);
    });
    run.check(bounds.lower <= est.value && est.value <= bounds.upper, [&] {
      return to_string(bounds.lower) + " <= " + to_string(est.value) + " <= " + to_string(bounds.upper) + " fails";
    });
    run.check(bounds.max_lower <= est.value && est.value <= bounds.sum_upper, [&] {
      return "product bounds " + to_string(bounds.max_lower) + " <= " + to_string(est.value) +
             " <= " + to_string(bounds.sum_upper) + " fail";
    });
    unsigned level = std::max({a.f.level(), a.t.level(), b.f.level(), b.t.level()});
    if (level <= 3) {
      ++brute;
      auto exact = brute_force_lu(tg, a, b, 3);
      run.check(exact == est.value, [&] {
        return "estimate " + to_string(est.value) + " differs from exhaustive " + to_string(exact);
      });
    }
  }
  run.summary = std::to_string(brute) + " cases also exhaustive";
}

// 5 -------------------------------------------------------------------------------

void periodic(Run &run, Rng &rng)
{
  for (unsigned level = 8; level <= 12; ++level)
    for (std::size_t n : {4, 8, 16, 32})
      for (int rep = 0; rep < 2; ++rep, ++run.cases) {
        auto t = gen::full_cycle(rng, level);
        Rational bound(1, static_cast<unsigned long>(n));
        auto pa = periodic_approximation(t, n, bound);
        Rational d = disagreement(t, pa.periodic_map);
        run.check(d <= bound && d == pa.distance, [&] {
          return "level " + std::to_string(level) + " N " + std::to_string(n) + ": Delta_u " + to_string(d);
        });
        for (auto len : cycle_lengths(pa.periodic_map))
          run.check(len == n, [&] { return "S0 has a cycle of length " + std::to_string(len); });
      }
}

// 6 -------------------------------------------------------------------------------

void synthesis(Run &run, Rng &rng)
{
  Rational worst = 1;
  for (; run.cases < 50; ++run.cases) {
    std::size_t n = std::size_t{4} << gen::uniform(rng, 0, 2);
    std::size_t k = gen::uniform(rng, 1, 8);
    // keep sigma's window times the interval count modest
    unsigned level = static_cast<unsigned>(gen::uniform(rng, 8, n == 16 ? 10 : 12));
    std::size_t cells = interval_count(level);
    std::size_t spare = cells / n > n - 1 ? cells / n - (n - 1) : 0;
    SynthesisTask task;
    task.s = gen::aperiodic_mpt(rng, level, n, spare);
    task.h = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), k + gen::uniform(rng, 0, 2));
    task.window = k;
    task.height = n;
    task.eps = Rational(2, static_cast<unsigned long>(n));
    auto res = synthesize_conjugator(task);

    auto const &g = res.g;
    unsigned lv = g.level();
    auto s0 = mpt_refine(res.approx.periodic_map, lv);
    auto s0_inv = inverse_table(s0);
    auto s_inv = inverse_table(mpt_refine(task.s, lv));
    auto const &sigma = res.sigma;
    std::size_t good = 0;
    std::size_t rows = 0;
    for (std::size_t y = 0; y < g.size(); ++y) {
      auto const &hy = task.h.at(y, lv);
      bool agrees = true;
      for (Point p = 0; p < k; ++p) {
        ++rows;
        run.check(g[y](hy(p)) == sigma(g[s0_inv[y]](p)), [&] {
          return "equation fails at interval " + std::to_string(y) + ", n = " + std::to_string(p);
        });
        agrees = agrees && g[y](hy(p)) == sigma(g[s_inv[y]](p));
      }
      if (agrees)
        ++good;
    }
    auto tower = res.approx.exact_tower.refine(lv);
    auto sigma_n = [&](Point p) {
      for (std::size_t j = 0; j < n; ++j)
        p = sigma(p);
      return p;
    };
    for (auto const &col : tower.columns) {
      Index top = col.back();
      auto top_inv = inverse(g[top]);
      for (Point p = 0; p < k; ++p) {
        Point q = p;
        for (Index x : col)
          q = task.h.at(x, lv)(q);
        run.check(top_inv(sigma_n(g[top](p))) == q, [&] {
          return "telescoping fails on the column through " + std::to_string(col.front());
        });
      }
    }
    Rational agreement = dyadic(good, lv);
    run.check(agreement == res.agreement && agreement >= 1 - task.eps, [&] {
      return "agreement " + to_string(agreement) + " (reported " + to_string(res.agreement) + ") with eps " +
             to_string(task.eps);
    });
    run.check(res.success && res.equation_ok && res.telescoping_ok && res.equation.size() == rows,
              [&] { return std::string("synthesis reports failure"); });
    worst = min(worst, agreement - (1 - task.eps));
  }
  run.summary = "smallest margin over 1 - eps: " + to_string(worst);
}

// 7 -------------------------------------------------------------------------------

void metric_synthesis(Run &run, Rng &rng)
{
  AutGroup grp;
  Rational eps_g(1, 8);
  Rational worst = 0;
  for (; run.cases < 20; ++run.cases) {
    std::size_t n = gen::coin(rng) ? 4 : 8;
    auto tau = gen::full_cycle(rng, 8);
    // exponents 1 mod 32: a column product is tau^J with J = N mod 32, so
    // tau^J has N cycles of length 256/N
    std::vector<DyadicMPT> hv;
    unsigned hl = static_cast<unsigned>(gen::uniform(rng, 0, 2));
    for (std::size_t i = 0; i < interval_count(hl); ++i)
      hv.push_back(mpt_power(tau, static_cast<std::int64_t>(1 + 32 * gen::uniform(rng, 0, 3))));
    StepFn<DyadicMPT> h(hl, std::move(hv));
    auto sigma = gen::full_cycle(rng, gen::coin(rng) ? 8 : 9);
    unsigned level = static_cast<unsigned>(gen::uniform(rng, 5, 7));
    std::size_t cells = interval_count(level);
    auto s = gen::aperiodic_mpt(rng, level, n, cells / n > n - 1 ? cells / n - (n - 1) : 0);
    Rational eps(2, static_cast<unsigned long>(n));
    auto res = synthesize_conjugator_metric(grp, sigma, s, h, n, eps, eps_g);

    unsigned lv = res.g.level();
    auto s0_inv = inverse_table(mpt_refine(res.approx.periodic_map, lv));
    Rational largest = 0;
    for (std::size_t y = 0; y < res.g.size(); ++y) {
      auto lhs = mpt_compose(mpt_inverse(res.g[y]), mpt_compose(sigma, res.g[s0_inv[y]]));
      Rational d = disagreement(lhs, h.at(y, lv));
      largest = max(largest, d);
      run.check(d <= eps_g, [&] { return "deviation " + to_string(d) + " at interval " + std::to_string(y); });
    }
    run.check(largest == res.max_deviation && res.success, [&] {
      return "reported deviation " + to_string(res.max_deviation) + " vs " + to_string(largest);
    });
    worst = max(worst, largest);
  }
  run.summary = "largest deviation " + to_string(worst);
}

// 8 -------------------------------------------------------------------------------

void density(Run &run, Rng &rng)
{
  SymTildeGroup tg{SymmetricGroup{}};
  // sigma^N has k-cycles for even k only from cycles of length k N, so the
  // surrogate must reach K N for the first admissible height N
  std::map<std::size_t, WindowPerm> surrogates;
  std::size_t constrained = 0;
  for (; run.cases < 50; ++run.cases) {
    Rational eps(1, static_cast<unsigned long>(std::size_t{4} << gen::uniform(rng, 0, 2)));
    unsigned level = static_cast<unsigned>(gen::uniform(rng, 8, 10));
    auto s = gen::aperiodic_mpt(rng, level, 64, 0);

    SymProductNeighborhood target;
    int shape = static_cast<int>(gen::uniform(rng, 0, 3)); // 0,1 full, 2 fiber only, 3 aut only
    target.aut_center = gen::aperiodic_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 7, level)), 64, 0);
    target.aut_radius = eps;
    if (shape != 2)
      for (std::size_t j = gen::uniform(rng, 1, 2); j > 0; --j)
        target.aut_sets.push_back(random_set(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3))));
    target.fiber_center = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), gen::uniform(rng, 1, 4));
    if (shape != 3)
      for (std::size_t j = gen::uniform(rng, 1, 2); j > 0; --j) {
        target.fiber_tests.push_back(gen::field(rng, static_cast<unsigned>(gen::uniform(rng, 0, 2)), 4));
        target.fiber_radii.push_back(eps);
      }
    if (shape != 3 && shape != 2)
      ++constrained;

    std::size_t height = 2;
    while (Rational(static_cast<unsigned long>(height)) * eps <= 1)
      height *= 2;
    auto it = surrogates.find(height);
    if (it == surrogates.end())
      it = surrogates.emplace(height, generic_surrogate(4 * height, 1).realized).first;
    auto const &sigma = it->second;
    auto res = conjugate_into_neighborhood(tg, sigma, s, target);
    auto const &k = res.conjugator.f;
    auto const &q = res.conjugator.t;
    // (k,Q)^-1 (C_sigma, S) (k,Q) = (w -> k(Qw)^-1 sigma k(S^-1 Q w), Q^-1 S Q)
    unsigned lv = std::max({k.level(), q.level(), s.level()});
    auto qq = mpt_refine(q, lv);
    auto s_inv = inverse_table(mpt_refine(s, lv));
    auto q_inv = inverse_table(qq);
    std::vector<WindowPerm> fiber;
    std::vector<Index> base(interval_count(lv));
    auto ss = mpt_refine(s, lv);
    for (std::size_t w = 0; w < interval_count(lv); ++w) {
      Index qw = qq(static_cast<Index>(w));
      fiber.push_back(inverse(k.at(qw, lv)) * sigma * k.at(s_inv[qw], lv));
      base[w] = q_inv[ss(qw)];
    }
    SymTilde expected{StepFn<WindowPerm>(lv, fiber), DyadicMPT(lv, base)};
    run.check(same_element(expected, res.conjugated),
              [&] { return std::string("conjugated element differs from the explicit formula"); });

    bool member = true;
    for (std::size_t i = 0; i < target.fiber_tests.size(); ++i) {
      auto const &beta = target.fiber_tests[i];
      unsigned l2 = std::max({lv, beta.level(), target.fiber_center.level()});
      std::size_t off = 0;
      for (std::size_t w = 0; w < interval_count(l2); ++w) {
        Point b = beta.at(w, l2);
        if (target.fiber_center.at(w, l2)(b) != expected.f.at(w, l2)(b))
          ++off;
      }
      member = member && dyadic(off, l2) < target.fiber_radii[i];
    }
    for (auto const &a : target.aut_sets) {
      unsigned l2 = std::max({lv, a.level(), target.aut_center.level()});
      auto image = [&](DyadicMPT const &t) {
        auto tt = mpt_refine(t, l2);
        std::vector<bool> in(interval_count(l2));
        auto fine = a.refine(l2);
        for (Index i : fine.members())
          in[tt(i)] = true;
        return in;
      };
      auto x = image(target.aut_center);
      auto y = image(expected.t);
      std::size_t diff = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        diff += x[i] != y[i];
      member = member && dyadic(diff, l2) < target.aut_radius;
    }
    run.check(member && res.membership.member, [&] { return std::string("conjugate is not in the target"); });

    // constant conjugation
    auto h = gen::random_perm(rng, 4);
    auto t1 = gen::aperiodic_mpt(rng, level, 64, 0);
    auto t2 = gen::aperiodic_mpt(rng, level, 64, 0);
    auto cc = approx_conjugate_constant(tg, h, t1, t2, eps);
    auto r = cc.conjugator.t;
    auto moved = mpt_compose(mpt_inverse(r), mpt_compose(t1, r));
    // b^-1 a = (C_e, S^-1 T'), so L_u is the measure where T' and S differ
    Rational oracle = disagreement(moved, t2);
    run.check(cc.ok && cc.certified == oracle && oracle < eps, [&] {
      return "constant conjugation certified " + to_string(cc.certified) + ", direct " + to_string(oracle) +
             ", eps " + to_string(eps);
    });
  }
  run.summary = std::to_string(constrained) + " targets constrained both factors";
}

// 9 -------------------------------------------------------------------------------

Census direct_power_census(WindowPerm const &a, std::size_t n)
{
  std::size_t w = a.window();
  std::vector<Point> pw(w);
  for (std::size_t p = 0; p < w; ++p) {
    Point q = static_cast<Point>(p);
    for (std::size_t j = 0; j < n; ++j)
      q = a(q);
    pw[p] = q;
  }
  Census out;
  std::vector<bool> seen(w);
  for (std::size_t p = 0; p < w; ++p) {
    if (seen[p])
      continue;
    std::size_t len = 0;
    for (Point q = static_cast<Point>(p); !seen[q]; q = pw[q]) {
      seen[q] = true;
      ++len;
    }
    ++out[len];
  }
  return out;
}

int sign_of(Rational const &q)
{
  return q > 0 ? 1 : q < 0 ? -1 : 0;
}

void power_invariants(Run &run, Rng &rng)
{
  std::size_t perms = 0;
  auto check_perm = [&](WindowPerm const &a, std::size_t n) {
    ++perms;
    auto rule = power_cycle_type(a, n);
    auto direct = direct_power_census(a, n);
    run.check(rule == direct, [&] {
      return "cycle type of a^" + std::to_string(n) + " wrong for " + format_cycles(a);
    });
  };
  for (std::size_t w = 1; w <= 64; ++w)
    for (std::size_t n = 1; n <= 12; ++n) {
      if (w <= 6) {
        std::vector<Point> m(w);
        std::iota(m.begin(), m.end(), Point{0});
        do
          check_perm(WindowPerm(m), n);
        while (std::next_permutation(m.begin(), m.end()));
      } else {
        for (int r = 0; r < 4; ++r)
          check_perm(gen::random_perm(rng, w), n);
      }
    }
  for (std::size_t l = 1; l <= 10; ++l) {
    auto g = generic_surrogate(l, 1).realized;
    for (std::size_t n = 1; n <= 12; ++n)
      check_perm(g, n);
  }
  run.cases = perms;

  for (int c = 0; c < 100; ++c, ++run.cases) {
    auto g = gen::random_pl(rng);
    std::size_t n = gen::uniform(rng, 1, 5);
    auto rep = power_invariance_check(g, n);
    auto gn = power(g, static_cast<std::int64_t>(n));
    run.check(rep.consistent && rep.base == rep.power && rep.base == orbitals_and_signs(g), [&] {
      return "orbitals of g and g^" + std::to_string(n) + " differ for " + format_pl(g);
    });
    // sample each orbital and compare with n-fold evaluation
    for (auto const &o : rep.base.orbitals) {
      Rational x = o.lo && o.hi ? (*o.lo + *o.hi) / 2 : o.lo ? *o.lo + 1 : o.hi ? *o.hi - 1 : Rational(0);
      Rational y = x;
      for (std::size_t j = 0; j < n; ++j)
        y = g(y);
      run.check(y == gn(x) && sign_of(y - x) == o.sign && sign_of(g(x) - x) == o.sign, [&] {
        return "sign of g^" + std::to_string(n) + " wrong at " + to_string(x) + " for " + format_pl(g);
      });
    }
    for (auto const &f : rep.base.fixed) {
      Rational x = f.lo ? *f.lo : f.hi ? *f.hi : Rational(0);
      run.check(gn(x) == x, [&] { return "fixed point " + to_string(x) + " moved by g^" + std::to_string(n); });
    }
  }
  for (int c = 0; c < 20; ++c, ++run.cases) {
    auto t = gen::aperiodic_mpt(rng, 8, 8, 16);
    auto rep = power_invariance_check(t, gen::uniform(rng, 1, 5));
    run.check(rep.consistent, [&] { return std::string("aperiodic power report inconsistent"); });
  }
  run.summary = std::to_string(perms) + " permutation powers";
}

// 10 ------------------------------------------------------------------------------

template <ActingGroup G, class Make>
void group_laws(Run &run, TildeGroup<G> const &tg, Rng &rng, Make make, std::size_t points, bool discrete)
{
  using T = TildeElement<G>;
  auto lu = [&](T const &a, T const &b) {
    if (discrete)
      return lu_exact_discrete(tg, a, b);
    return lu_estimate(tg, a, b, 0, 0).value;
  };
  for (int c = 0; c < 150; ++c, ++run.cases) {
    T a = make(), b = make(), x = make();
    auto alpha = gen::field(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)), points);
    auto beta = gen::field(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)), points);
    run.check(same_field(tg.act(tg.identity(), alpha), alpha), [&] { return std::string("e alpha != alpha"); });
    run.check(same_field(tg.act(tg.product(a, b), alpha), tg.act(a, tg.act(b, alpha))),
              [&] { return std::string("(ab) alpha != a (b alpha)"); });
    run.check(same_element(tg.product(a, tg.inverse(a)), tg.identity()),
              [&] { return std::string("a a^-1 is not the identity"); });
    run.check(same_element(tg.product(tg.product(a, b), x), tg.product(a, tg.product(b, x))),
              [&] { return std::string("product is not associative"); });
    run.check(tg.field_distance(tg.act(a, alpha), tg.act(a, beta)) == tg.field_distance(alpha, beta),
              [&] { return std::string("action is not isometric"); });
    Rational d = lu(a, b);
    Rational left = lu(tg.product(x, a), tg.product(x, b));
    Rational right = lu(tg.product(a, x), tg.product(b, x));
    run.check(d == left && d == right, [&] {
      return "L_u not bi-invariant: " + to_string(d) + ", " + to_string(left) + ", " + to_string(right);
    });
  }
}

void action_laws(Run &run, Rng &rng)
{
  SymTildeGroup sym{SymmetricGroup{}};
  group_laws(run, sym, rng, [&] {
    return SymTilde{gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)), gen::uniform(rng, 1, 6), gen::coin(rng)),
                    gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 4)))};
  }, 8, true);

  FiniteIsometryGroup grp(three_point_space());
  TildeGroup<FiniteIsometryGroup> fin(grp);
  group_laws(run, fin, rng, [&] {
    unsigned lf = static_cast<unsigned>(gen::uniform(rng, 0, 3));
    std::vector<WindowPerm> v;
    for (std::size_t i = 0; i < interval_count(lf); ++i)
      v.push_back(grp.random_element(rng));
    return TildeElement<FiniteIsometryGroup>{StepFn<WindowPerm>(lf, std::move(v)),
                                            gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)))};
  }, 3, false);
}

struct Suite
{
  char const *name;
  double limit;
  void (*body)(Run &, Rng &);
};

Suite const suites[criterion_count] = {
  {"metric axioms and d^ <= d^_u", 10, metric_axioms},
  {"lower semicontinuity of d^_u", 10, lower_semicontinuity},
  {"exact L_u for a discrete base", 60, exact_discrete},
  {"L_u sandwich and product bounds", 60, sandwich},
  {"periodic approximation", 5, periodic},
  {"conjugator synthesis", 120, synthesis},
  {"metric-group synthesis", 120, metric_synthesis},
  {"density by conjugation", 60, density},
  {"power invariants", 30, power_invariants},
  {"group laws, isometry, bi-invariance", 30, action_laws},
};

} // namespace

std::string criterion_name(int id)
{
  if (id < 1 || id > criterion_count)
    throw Error(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
  return suites[id - 1].name;
}

CriterionResult run_criterion(int id, std::uint64_t seed)
{
  criterion_name(id);
  auto const &suite = suites[id - 1];
  CriterionResult out;
  out.id = id;
  out.name = suite.name;
  out.limit_seconds = suite.limit;
  Rng rng(seed + static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ull);
  Run run;
  auto start = std::chrono::steady_clock::now();
  try {
    suite.body(run, rng);
  } catch (std::exception const &e) {
    if (run.failure.empty())
      run.failure = "case " + std::to_string(run.cases) + " threw " + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.cases = run.cases;
  if (!run.failure.empty())
    out.detail = run.failure;
  else if (out.seconds >= out.limit_seconds)
    out.detail = "over the time limit";
  else
    out.detail = run.summary;
  out.passed = run.failure.empty() && out.seconds < out.limit_seconds;
  return out;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed)
{
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count; ++id)
    out.push_back(run_criterion(id, seed));
  return out;
}

} // namespace randiso
