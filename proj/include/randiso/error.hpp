#ifndef RANDISO_ERROR_HPP
#define RANDISO_ERROR_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace randiso
{

enum class ErrorKind
{
  ParseError,
  NotAperiodic,
  TowerTooCoarse,
  LeftoverIndivisible,
  InsufficientCycles,
  NotInjective,
  MismatchedSpace,
  NotConverging,
  Unmatchable,
  NotDiscrete,
  DegenerateSpace,
  NotExactTower,
  OracleFailure,
  SimultaneousMatchUnsupported,
  InvalidArgument
};

char const *kind_name(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &what)
  : std::runtime_error(std::string(kind_name(kind)) + ": " + what),
    _kind(kind)
  {}

  ErrorKind kind() const { return _kind; }

private:
  ErrorKind _kind;
};

/// Raised by the cycle matcher; carries the census (cycle length -> count)
/// that the request needed and what was available.
class InsufficientCyclesError : public Error
{
public:
  InsufficientCyclesError(std::map<std::size_t, std::size_t> needed,
                          std::map<std::size_t, std::size_t> available,
                          std::string const &what)
  : Error(ErrorKind::InsufficientCycles, what),
    needed(std::move(needed)),
    available(std::move(available))
  {}

  std::map<std::size_t, std::size_t> needed;
  std::map<std::size_t, std::size_t> available;
};

/// Raised by constant_generic_conjugator for the first interval whose value
/// could not be matched.
class UnmatchableError : public Error
{
public:
  UnmatchableError(std::size_t interval, std::string const &what)
  : Error(ErrorKind::Unmatchable, what), interval(interval)
  {}

  std::size_t interval;
};

} // namespace randiso

#endif
