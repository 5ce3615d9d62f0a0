#ifndef RANDISO_ROKHLIN_ENGINE_HPP
#define RANDISO_ROKHLIN_ENGINE_HPP

#include <optional>
#include <vector>

#include "randiso/randomization_group.hpp"

/**
 * @file rokhlin_engine.hpp
 * @brief Conjugator synthesis over Rokhlin towers and the density experiments
 *        built on it.
 *
 * Given sigma, an N-aperiodic S and a simple h, the synthesis looks for g with
 *   g(x) h(x)(n) = sigma g(S^-1 x)(n)   for n < K
 * off a set of small measure. S is replaced by a map S0 of period exactly N
 * with an exact tower; along each column x, S0 x, ..., S0^{N-1} x the values
 * are
 *   g(x)        = rho_x h(S0^{N-1} x) ... h(S0 x)
 *   g(S0^i x)   = sigma g(S0^{i-1} x) h(S0^i x)^-1,
 * where rho_x^-1 sigma^N rho_x agrees on {0,...,K-1} with the column product
 * h(S0^{N-1} x) ... h(S0 x) h(x). The identity then holds with S0 at every
 * point of the tower and with S wherever S^-1 and S0^-1 agree.
 */

namespace randiso
{

/// h(S0^{N-1} x) ... h(S0 x) h(x) for the column whose base is x. Throws
/// NotExactTower if the tower leaves a leftover, x is not a base interval or
/// the column does not follow S0.
template <MetricGroup G>
typename G::element_type tower_product(G const &grp, StepFn<typename G::element_type> const &h,
                                       DyadicMPT const &s0, TowerData const &tower, Index x)
{
  if (tower.leftover.count() != 0)
    throw Error(ErrorKind::NotExactTower, "tower leaves a leftover of measure " +
                                            to_string(tower.leftover.measure()));
  unsigned level = std::max({tower.level, s0.level(), h.level()});
  if (level != tower.level)
    throw Error(ErrorKind::NotExactTower, "tower is coarser than the map or the function");
  auto s = mpt_refine(s0, level);
  auto col = std::find_if(tower.columns.begin(), tower.columns.end(),
                          [&](auto const &c) { return c.front() == x; });
  if (col == tower.columns.end())
    throw Error(ErrorKind::NotExactTower, "interval " + std::to_string(x) + " is not a base");
  auto acc = grp.identity();
  for (std::size_t k = 0; k < col->size(); ++k) {
    if (s((*col)[k]) != (*col)[(k + 1) % col->size()])
      throw Error(ErrorKind::NotExactTower, "column through " + std::to_string(x) +
                                              " does not follow the map");
    acc = grp.multiply(h.at((*col)[k], level), acc);
  }
  return acc;
}

struct SynthesisTask
{
  /// When absent, generic_surrogate(N(K+1), ceil(K/N)) is used and grown on
  /// InsufficientCycles.
  std::optional<WindowPerm> sigma;
  DyadicMPT s;
  StepFn<WindowPerm> h;
  std::size_t window = 4;
  std::size_t height = 8;
  Rational eps = Rational(1, 4);
  /// Keep every matcher point below this bound.
  std::optional<std::size_t> codomain_limit;
  /// How many times the surrogate's copy count may double.
  unsigned max_growth = 3;
};

/// One checked equation: lhs and rhs are images of n.
struct CertificateRow
{
  std::size_t column = 0;
  std::size_t level = 0;
  Index interval = 0;
  Point n = 0;
  Point lhs = 0;
  Point rhs = 0;
  bool ok = false;
};

struct SynthesisResult
{
  StepFn<WindowPerm> g;
  WindowPerm sigma;
  std::size_t max_length = 0;
  std::size_t copies = 0;
  PeriodicApproximation approx;
  /// mu{x : g(x) h(x)(n) = sigma g(S^-1 x)(n) for all n < K}
  Rational agreement;
  /// g(y) h(y)(n) against sigma g(S0^-1 y)(n), every tower interval and n < K.
  std::vector<CertificateRow> equation;
  /// g(t)^-1 sigma^N g(t)(n) against the column product at n, t the column top.
  std::vector<CertificateRow> telescoping;
  bool equation_ok = false;
  bool telescoping_ok = false;
  bool success = false;
};

/// Requires 1/N <= eps; the tower may leave at most eps - 1/N uncovered.
SynthesisResult synthesize_conjugator(SynthesisTask const &task);

template <class E>
struct MetricSynthesisResult
{
  StepFn<E> g;
  PeriodicApproximation approx;
  /// d(g(y)^-1 sigma g(S0^-1 y), h(y)) per interval of the tower level.
  std::vector<Rational> deviation;
  Rational max_deviation;
  /// mu{y : d(g(y)^-1 sigma g(S^-1 y), h(y)) <= eps_G}
  Rational agreement;
  bool success = false;
};

/**
 * Synthesis for a group with a bi-invariant metric and a power-matching
 * oracle: g(x) = rho with d(rho^-1 sigma^N rho, h(x) h(S0^{N-1} x) ... h(S0 x))
 * <= eps_G and g(S0^i x) = sigma^i g(x) h(S0 x)^-1 ... h(S0^i x)^-1.
 */
template <PowerMatchingGroup G>
MetricSynthesisResult<typename G::element_type>
synthesize_conjugator_metric(G const &grp, typename G::element_type const &sigma,
                             DyadicMPT const &s, StepFn<typename G::element_type> const &h,
                             std::size_t height, Rational const &eps, Rational const &eps_g)
{
  using E = typename G::element_type;
  if (Rational(static_cast<unsigned long>(height)) * eps < 1)
    throw Error(ErrorKind::InvalidArgument, "need 1/N <= eps");
  MetricSynthesisResult<E> out;
  out.approx = periodic_approximation(s, height, eps - Rational(1, static_cast<unsigned long>(height)));
  unsigned level = std::max(out.approx.exact_tower.level, h.level());
  TowerData tower = out.approx.exact_tower.refine(level);
  DyadicMPT s0 = mpt_refine(out.approx.periodic_map, level);
  DyadicMPT ss = mpt_refine(s, level);
  auto hh = h.refine(level);

  std::vector<E> g(interval_count(level), grp.identity());
  for (auto const &col : tower.columns) {
    Index x = col.front();
    // h(x) h(S0^{N-1} x) ... h(S0 x)
    E target = hh[x];
    for (std::size_t k = col.size(); k-- > 1;)
      target = grp.multiply(target, hh[col[k]]);
    E rho = grp.match_power(sigma, height, target, eps_g);
    g[x] = rho;
    for (std::size_t k = 1; k < col.size(); ++k)
      g[col[k]] = grp.multiply(grp.multiply(sigma, g[col[k - 1]]), grp.inverse(hh[col[k]]));
  }
  out.g = StepFn<E>(level, g);

  auto s0_inv = mpt_inverse(s0);
  auto s_inv = mpt_inverse(ss);
  out.max_deviation = 0;
  std::size_t good = 0;
  for (std::size_t y = 0; y < g.size(); ++y) {
    auto deviation = [&](Index prev) {
      return grp.uniform_distance(grp.multiply(grp.inverse(g[y]), grp.multiply(sigma, g[prev])),
                                  hh[y]);
    };
    Rational d0 = deviation(s0_inv(static_cast<Index>(y)));
    out.deviation.push_back(d0);
    out.max_deviation = max(out.max_deviation, d0);
    Index prev = s_inv(static_cast<Index>(y));
    if ((prev == s0_inv(static_cast<Index>(y)) ? d0 : deviation(prev)) <= eps_g)
      ++good;
  }
  out.agreement = dyadic(good, level);
  out.success = out.max_deviation <= eps_g && out.agreement >= 1 - eps;
  return out;
}

// Density ----------------------------------------------------------------------

using SymTilde = TildeElement<SymmetricGroup>;
using SymTildeGroup = TildeGroup<SymmetricGroup>;
using SymProductNeighborhood = ProductNeighborhood<SymmetricGroup>;

struct DensityResult
{
  /// (k, Q)
  SymTilde conjugator;
  /// (C_sigma, S)^(k,Q)
  SymTilde conjugated;
  MembershipReport membership;
  /// Tower height of the fiber synthesis; 0 when the fiber was unconstrained.
  std::size_t height = 0;
  /// Delta_u(Q^-1 S Q, T*) when the Aut part was constrained.
  std::optional<Rational> aut_distance;
};

/**
 * Move (C_sigma, S) into a product neighbourhood by conjugation: first Q with
 * Q^-1 S Q close to the Aut center, then k~ from the synthesis with
 * R = Q^-1 S Q and target the fiber center, and k = k~ o Q^-1. Membership is
 * checked exactly; failure of either step is an OracleFailure naming it.
 */
DensityResult conjugate_into_neighborhood(SymTildeGroup const &tg, WindowPerm const &sigma,
                                          DyadicMPT const &s, SymProductNeighborhood const &target);

struct ConstantConjugation
{
  /// (C_e, R)
  SymTilde conjugator;
  Rational delta;      // Delta_u(R^-1 T R, S)
  Rational certified;  // L_u((C_h,T)^(C_e,R), (C_h,S)), exact
  bool ok = false;     // certified < eps
};

ConstantConjugation approx_conjugate_constant(SymTildeGroup const &tg, WindowPerm const &h,
                                              DyadicMPT const &t, DyadicMPT const &s,
                                              Rational const &eps);

struct DiagonalCoordinate
{
  SymTilde conjugated;
  MembershipReport membership;
};

struct DiagonalReport
{
  SymTilde conjugator;
  std::vector<DiagonalCoordinate> coordinates;
  bool success = false;
};

/**
 * One conjugator for a tuple (C_sigma_i, T_i). Supported case: all T_i equal,
 * Aut targets equal or unconstrained, and coordinate i living in the block
 * [blocks[i], blocks[i+1]) of the naturals (sigma_i, the fiber center and the
 * test points). Each block is synthesized separately inside its block and the
 * fiber conjugators are multiplied, which is one element because the blocks
 * commute. Anything else is SimultaneousMatchUnsupported.
 */
DiagonalReport diagonal_experiment(SymTildeGroup const &tg,
                                   std::vector<std::pair<WindowPerm, DyadicMPT>> const &sources,
                                   std::vector<SymProductNeighborhood> const &targets,
                                   std::vector<std::size_t> const &blocks);

} // namespace randiso

#endif
