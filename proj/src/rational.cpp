#include "randiso/rational.hpp"

#include <cctype>

#include "randiso/error.hpp"

namespace randiso
{

char const *kind_name(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::NotAperiodic: return "NotAperiodic";
  case ErrorKind::TowerTooCoarse: return "TowerTooCoarse";
  case ErrorKind::LeftoverIndivisible: return "LeftoverIndivisible";
  case ErrorKind::InsufficientCycles: return "InsufficientCycles";
  case ErrorKind::NotInjective: return "NotInjective";
  case ErrorKind::MismatchedSpace: return "MismatchedSpace";
  case ErrorKind::NotConverging: return "NotConverging";
  case ErrorKind::Unmatchable: return "Unmatchable";
  case ErrorKind::NotDiscrete: return "NotDiscrete";
  case ErrorKind::DegenerateSpace: return "DegenerateSpace";
  case ErrorKind::NotExactTower: return "NotExactTower";
  case ErrorKind::OracleFailure: return "OracleFailure";
  case ErrorKind::SimultaneousMatchUnsupported: return "SimultaneousMatchUnsupported";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rational dyadic(std::uint64_t count, unsigned level)
{
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
  mpz_class den = 1;
  den <<= level;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2_inverse(unsigned exponent)
{
  return dyadic(1, exponent);
}

std::string to_string(Rational const &q)
{
  return q.get_str();
}

Rational parse_rational(std::string_view text)
{
  auto is_int = [](std::string_view s, bool allow_sign) {
    if (s.empty())
      return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
      i = 1;
    if (i == s.size())
      return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        return false;
    return true;
  };

  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);

  if (!is_int(num, true) || !is_int(den, false))
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");

  std::string n(num);
  if (n[0] == '+')
    n.erase(0, 1);
  mpz_class d{std::string(den)};
  if (d == 0)
    throw Error(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");

  Rational q(mpz_class(n), d);
  q.canonicalize();
  return q;
}

} // namespace randiso
