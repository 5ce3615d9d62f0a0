#ifndef RANDISO_GENERATORS_HPP
#define RANDISO_GENERATORS_HPP

#include "randiso/base_groups.hpp"
#include "randiso/pl_order_aut.hpp"
#include "randiso/step_function.hpp"

/**
 * @file generators.hpp
 * @brief Seeded random inputs for the property suites.
 */

namespace randiso::gen
{

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi);
bool coin(Rng &rng);

WindowPerm random_perm(Rng &rng, std::size_t window);

/// Identity half of the time.
WindowPerm sparse_perm(Rng &rng, std::size_t window);

StepFn<WindowPerm> perm_step(Rng &rng, unsigned level, std::size_t window, bool sparse = false);

/// Values drawn from {0, ..., points-1}.
StepFn<Point> field(Rng &rng, unsigned level, std::size_t points);

DyadicMPT random_mpt(Rng &rng, unsigned level);

/// One cycle through all 2^level intervals.
DyadicMPT full_cycle(Rng &rng, unsigned level);

/// Identity outside a few random cycles.
DyadicMPT sparse_mpt(Rng &rng, unsigned level);

/// Every cycle has length >= min_cycle. Cycle lengths are multiples of
/// min_cycle except for remainders summing to at most `spare` intervals, so
/// a height-min_cycle tower leaves at most spare + min_cycle - 1 uncovered.
DyadicMPT aperiodic_mpt(Rng &rng, unsigned level, std::size_t min_cycle, std::size_t spare);

/// At most `max_breaks` rational breakpoints, slopes from a small set of
/// positive rationals.
PLOrderAut random_pl(Rng &rng, std::size_t max_breaks = 3);

} // namespace randiso::gen

#endif
