#ifndef RANDISO_TEXT_FORMAT_HPP
#define RANDISO_TEXT_FORMAT_HPP

#include <functional>
#include <sstream>
#include <string>
#include <string_view>

#include "randiso/dyadic_measure.hpp"
#include "randiso/error.hpp"
#include "randiso/pl_order_aut.hpp"
#include "randiso/step_function.hpp"
#include "randiso/window_perm.hpp"

/**
 * @file text_format.hpp
 * @brief Text forms of the library's values.
 *
 *   mpt 2 1 2 3 0              one-line notation of the interval permutation
 *   set 3 0 5 6                level and member indices
 *   (0 1)(2 3 4)               disjoint cycles; () is the identity
 *   piece 2 0 | x<0; piece 1/2 0
 *                              affine pieces, each followed by the breakpoint
 *                              below which it applies
 *   step 1 [(0 1), ()]         level and one value per interval
 *   tilde { step 0 [()] ; mpt 1 1 0 }
 *
 * Every parser throws ParseError on malformed input, including permutations
 * that are not bijections.
 */

namespace randiso
{

std::string format_cycles(WindowPerm const &a);
WindowPerm parse_cycles(std::string_view text);

std::string format_mpt(DyadicMPT const &t);
DyadicMPT parse_mpt(std::string_view text);

std::string format_set(DyadicSet const &s);
DyadicSet parse_set(std::string_view text);

std::string format_pl(PLOrderAut const &g);
PLOrderAut parse_pl(std::string_view text);

std::string trim(std::string_view text);

/// Split on `sep` at bracket depth zero; parts are trimmed.
std::vector<std::string> split_top(std::string_view text, char sep);

template <class V, class Fmt>
std::string format_step(StepFn<V> const &f, Fmt fmt)
{
  std::ostringstream os;
  os << "step " << f.level() << " [";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << (i ? ", " : "") << fmt(f[i]);
  os << "]";
  return os.str();
}

template <class V, class Parse>
StepFn<V> parse_step(std::string_view text, Parse parse)
{
  std::string s = trim(text);
  if (s.rfind("step", 0) != 0)
    throw Error(ErrorKind::ParseError, "expected 'step': " + s);
  auto open = s.find('[');
  auto close = s.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error(ErrorKind::ParseError, "step values must be bracketed: " + s);
  unsigned level = 0;
  {
    std::istringstream head(s.substr(4, open - 4));
    if (!(head >> level))
      throw Error(ErrorKind::ParseError, "missing step level: " + s);
    std::string extra;
    if (head >> extra)
      throw Error(ErrorKind::ParseError, "unexpected '" + extra + "' before values");
  }
  if (level > 24)
    throw Error(ErrorKind::ParseError, "step level too large");
  std::vector<V> values;
  std::string body = s.substr(open + 1, close - open - 1);
  if (!trim(body).empty())
    for (auto const &part : split_top(body, ','))
      values.push_back(parse(part));
  if (values.size() != interval_count(level))
    throw Error(ErrorKind::ParseError, "step at level " + std::to_string(level) + " needs " +
                                         std::to_string(interval_count(level)) + " values, got " +
                                         std::to_string(values.size()));
  return StepFn<V>(level, std::move(values));
}

Point parse_point(std::string_view text);

inline std::string format_perm_step(StepFn<WindowPerm> const &f)
{
  return format_step(f, [](WindowPerm const &a) { return format_cycles(a); });
}

inline std::string format_point_step(StepFn<Point> const &f)
{
  return format_step(f, [](Point p) { return std::to_string(p); });
}

inline StepFn<WindowPerm> parse_perm_step(std::string_view text)
{
  return parse_step<WindowPerm>(text, [](std::string const &s) { return parse_cycles(s); });
}

inline StepFn<Point> parse_point_step(std::string_view text)
{
  return parse_step<Point>(text, [](std::string const &s) { return parse_point(s); });
}

/// `tilde { step ... ; mpt ... }` over window permutations.
std::string format_tilde(StepFn<WindowPerm> const &f, DyadicMPT const &t);
std::pair<StepFn<WindowPerm>, DyadicMPT> parse_tilde(std::string_view text);

} // namespace randiso

#endif
