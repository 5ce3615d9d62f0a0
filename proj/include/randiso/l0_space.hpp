#ifndef RANDISO_L0_SPACE_HPP
#define RANDISO_L0_SPACE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "randiso/base_groups.hpp"
#include "randiso/step_function.hpp"
#include "randiso/window_perm.hpp"

/**
 * @file l0_space.hpp
 * @brief Step-function surrogate of L0([0,1],V): the integrated metrics, the
 *        pointwise group structure and the fibrewise conjugator.
 */

namespace randiso
{

/// d^(f,h) = integral of d(f(w), h(w)) for a metric passed as a callable.
template <class V, class D>
Rational dhat(StepFn<V> const &f, StepFn<V> const &h, D metric)
{
  return integrate(f, h, metric);
}

/// d^ with the group's Polish metric.
template <MetricGroup G>
Rational dhat_p(G const &grp, StepFn<typename G::element_type> const &f,
                StepFn<typename G::element_type> const &h)
{
  return integrate(f, h, [&](auto const &a, auto const &b) { return grp.polish_distance(a, b); });
}

/// d^_u with the group's uniform metric.
template <MetricGroup G>
Rational dhat_u(G const &grp, StepFn<typename G::element_type> const &f,
                StepFn<typename G::element_type> const &h)
{
  return integrate(f, h, [&](auto const &a, auto const &b) { return grp.uniform_distance(a, b); });
}

/// d^ on L0([0,1],X) with X's metric.
template <ActingGroup G>
Rational dhat_x(G const &grp, StepFn<typename G::point_type> const &a,
                StepFn<typename G::point_type> const &b)
{
  return integrate(a, b, [&](auto x, auto y) { return grp.point_distance(x, y); });
}

template <MetricGroup G>
StepFn<typename G::element_type> l0_product(G const &grp, StepFn<typename G::element_type> const &f,
                                            StepFn<typename G::element_type> const &h)
{
  return zip(f, h, [&](auto const &a, auto const &b) { return grp.multiply(a, b); });
}

template <MetricGroup G>
StepFn<typename G::element_type> l0_inverse(G const &grp, StepFn<typename G::element_type> const &f)
{
  return map(f, [&](auto const &a) { return grp.inverse(a); });
}

/// by^-1 f by, pointwise.
template <MetricGroup G>
StepFn<typename G::element_type> l0_conjugate(G const &grp,
                                              StepFn<typename G::element_type> const &f,
                                              StepFn<typename G::element_type> const &by)
{
  return l0_product(grp, l0_inverse(grp, by), l0_product(grp, f, by));
}

// Lower semicontinuity probe -------------------------------------------------

struct LscWitness
{
  /// 1/N is the radius around (f(w), h(w)) inside which d_u stays positive.
  std::size_t n = 0;
  /// eps = d^_u(f,h) - r
  Rational eps;
  /// eps/(4N): every f' this close to f in d^ has d^_u(f',h) > r.
  Rational radius;
  /// Sequence members inside the radius and whether each kept d^_u > r.
  std::size_t inside = 0;
  std::size_t inside_above = 0;
};

struct LscReport
{
  Rational base;                     // d^_u(f, h)
  std::vector<Rational> to_limit;    // d^(seq_k, f), non-increasing
  std::vector<Rational> uniform;     // d^_u(seq_k, h)
  Rational tail_min;
  bool holds = false;                // base <= tail_min
  std::optional<LscWitness> witness; // for window permutations and base > r
};

/**
 * Check d^_u(f,h) <= min over the tail of d^_u(seq_k,h) along a sequence
 * converging to f in d^. The tail is the second half of the sequence (the
 * whole sequence when it has one element). Throws NotConverging when
 * d^(seq_k,f) increases somewhere.
 */
template <MetricGroup G>
LscReport lsc_probe(G const &grp, StepFn<typename G::element_type> const &f,
                    StepFn<typename G::element_type> const &h,
                    std::vector<StepFn<typename G::element_type>> const &seq,
                    std::optional<Rational> const &r = std::nullopt)
{
  if (seq.empty())
    throw Error(ErrorKind::InvalidArgument, "empty sequence");
  LscReport rep;
  rep.base = dhat_u(grp, f, h);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    rep.to_limit.push_back(dhat_p(grp, seq[k], f));
    rep.uniform.push_back(dhat_u(grp, seq[k], h));
    if (k > 0 && rep.to_limit[k] > rep.to_limit[k - 1])
      throw Error(ErrorKind::NotConverging,
                  "d^(seq_k, f) increases at k = " + std::to_string(k));
  }
  std::size_t from = seq.size() / 2;
  rep.tail_min = *std::min_element(rep.uniform.begin() + static_cast<std::ptrdiff_t>(from),
                                   rep.uniform.end());
  rep.holds = rep.base <= rep.tail_min;

  if constexpr (std::same_as<typename G::element_type, WindowPerm>) {
    if (r && rep.base > *r) {
      // If d_p(x, f(w)) < 2^-(p+1) then x agrees with f(w) on 0..p; p is the
      // first point where f(w) and h(w) differ, so d_u stays 1 there.
      LscWitness w;
      std::size_t deepest = 0;
      for (std::size_t i = 0; i < interval_count(std::max(f.level(), h.level())); ++i) {
        unsigned lv = std::max(f.level(), h.level());
        auto const &a = f.at(i, lv);
        auto const &b = h.at(i, lv);
        std::size_t w_max = std::max(a.window(), b.window());
        for (std::size_t p = 0; p < w_max; ++p)
          if (a(static_cast<Point>(p)) != b(static_cast<Point>(p))) {
            deepest = std::max(deepest, p);
            break;
          }
      }
      w.n = std::size_t{1} << (deepest + 1);
      w.eps = rep.base - *r;
      w.radius = w.eps / Rational(static_cast<unsigned long>(4 * w.n));
      for (std::size_t k = 0; k < seq.size(); ++k)
        if (rep.to_limit[k] < w.radius) {
          ++w.inside;
          if (rep.uniform[k] > *r)
            ++w.inside_above;
        }
      rep.witness = w;
    }
  }
  return rep;
}

// Fibrewise conjugation ------------------------------------------------------

template <class E>
struct ConjugatorResult
{
  StepFn<E> conjugator;
  /// d^_u(f, h^-1 C_g h) under the metric the matcher was judged by.
  Rational distance;
};

/**
 * Build h with d_u(f(w), h(w)^-1 g h(w)) <= eps on every interval by calling
 * `match(value)` once per distinct value of f. `match` returns a candidate
 * conjugator or nullopt; `metric` judges the result. Throws UnmatchableError
 * naming the first interval whose value could not be matched.
 */
template <class E, class Match, class Metric, class Mul, class Inv>
ConjugatorResult<E> conjugate_per_interval(E const &g, StepFn<E> const &f, Rational const &eps,
                                           Match match, Metric metric, Mul mul, Inv inv)
{
  std::vector<E> out;
  out.reserve(f.size());
  std::vector<std::pair<E, E>> cache;
  Rational total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto const &v = f[i];
    auto hit = std::find_if(cache.begin(), cache.end(), [&](auto const &c) { return c.first == v; });
    if (hit == cache.end()) {
      std::optional<E> rho = match(v);
      if (!rho || metric(v, mul(inv(*rho), mul(g, *rho))) > eps)
        throw UnmatchableError(i, "value on interval " + std::to_string(i) +
                                    " is not conjugate to g within " + to_string(eps));
      cache.emplace_back(v, *rho);
      hit = cache.end() - 1;
    }
    total += metric(v, mul(inv(hit->second), mul(g, hit->second)));
    out.push_back(hit->second);
  }
  return {StepFn<E>(f.level(), std::move(out)), total * pow2_inverse(f.level())};
}

/// d_u restricted to the window {0,...,K-1}: 1 if a and b differ there.
Rational window_distance(WindowPerm const &a, WindowPerm const &b, std::size_t k);

/**
 * Constant-generic conjugator over S_infinity: per interval, rho with
 * rho^-1 g rho = f(w) on {0,...,K-1} via match_on_window. The reported
 * distance uses the windowed discrete metric.
 */
ConjugatorResult<WindowPerm> constant_generic_conjugator(WindowPerm const &g,
                                                         StepFn<WindowPerm> const &f,
                                                         std::size_t k, Rational const &eps);

} // namespace randiso

#endif
