#ifndef RANDISO_VERIFICATION_HPP
#define RANDISO_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

/**
 * @file verification.hpp
 * @brief The ten acceptance suites. Each draws its cases from one seed,
 *        checks them exactly and reports whether every case held inside the
 *        suite's time limit.
 */

namespace randiso
{

struct CriterionResult
{
  int id = 0;
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  /// First failing case, or a summary of the measured values.
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr int criterion_count = 10;

std::string criterion_name(int id);

/// Throws InvalidArgument for an id outside 1..criterion_count.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

} // namespace randiso

#endif
