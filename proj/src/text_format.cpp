#include "randiso/text_format.hpp"

#include <cctype>
#include <charconv>

namespace randiso
{

namespace
{

std::vector<std::string> words(std::string_view text)
{
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string w;
  while (is >> w)
    out.push_back(w);
  return out;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what)
{
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorKind::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

unsigned parse_level(std::string_view text)
{
  auto v = parse_unsigned(text, "level");
  if (v > 24)
    throw Error(ErrorKind::ParseError, "level " + std::string(text) + " is too large");
  return static_cast<unsigned>(v);
}

} // namespace

std::string trim(std::string_view text)
{
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
    --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view text, char sep)
{
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[' || c == '{')
      ++depth;
    else if (c == ')' || c == ']' || c == '}')
      --depth;
    else if (c == sep && depth == 0) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(text.substr(start)));
  return out;
}

Point parse_point(std::string_view text)
{
  auto v = parse_unsigned(trim(text), "point");
  if (v > 0xffffffffu)
    throw Error(ErrorKind::ParseError, "point out of range");
  return static_cast<Point>(v);
}

std::string format_cycles(WindowPerm const &a)
{
  std::string out;
  for (auto const &c : cycles(a)) {
    if (c.size() < 2)
      continue;
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      out += (i ? " " : "") + std::to_string(c[i]);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

WindowPerm parse_cycles(std::string_view text)
{
  std::string s = trim(text);
  std::vector<std::vector<Point>> cs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(')
      throw Error(ErrorKind::ParseError, "expected '(' in cycle notation: " + s);
    auto close = s.find(')', i);
    if (close == std::string::npos)
      throw Error(ErrorKind::ParseError, "unclosed cycle: " + s);
    std::vector<Point> c;
    for (auto const &w : words(std::string_view(s).substr(i + 1, close - i - 1)))
      c.push_back(parse_point(w));
    if (!c.empty())
      cs.push_back(std::move(c));
    i = close + 1;
  }
  if (cs.empty() && s.empty())
    throw Error(ErrorKind::ParseError, "empty permutation; write () for the identity");
  try {
    return WindowPerm::from_cycles(cs);
  } catch (Error const &e) {
    throw Error(ErrorKind::ParseError, std::string("not a permutation: ") + e.what());
  }
}

std::string format_mpt(DyadicMPT const &t)
{
  std::string out = "mpt " + std::to_string(t.level());
  for (Index v : t.perm())
    out += " " + std::to_string(v);
  return out;
}

DyadicMPT parse_mpt(std::string_view text)
{
  auto w = words(text);
  if (w.size() < 2 || w[0] != "mpt")
    throw Error(ErrorKind::ParseError, "expected 'mpt <level> <perm>': " + std::string(text));
  unsigned level = parse_level(w[1]);
  if (w.size() - 2 != interval_count(level))
    throw Error(ErrorKind::ParseError, "mpt at level " + w[1] + " needs " +
                                         std::to_string(interval_count(level)) + " entries");
  std::vector<Index> perm;
  for (std::size_t i = 2; i < w.size(); ++i)
    perm.push_back(static_cast<Index>(parse_unsigned(w[i], "index")));
  try {
    return DyadicMPT(level, std::move(perm));
  } catch (Error const &e) {
    throw Error(ErrorKind::ParseError, std::string("not a bijection: ") + e.what());
  }
}

std::string format_set(DyadicSet const &s)
{
  std::string out = "set " + std::to_string(s.level());
  for (Index v : s.members())
    out += " " + std::to_string(v);
  return out;
}

DyadicSet parse_set(std::string_view text)
{
  auto w = words(text);
  if (w.size() < 2 || w[0] != "set")
    throw Error(ErrorKind::ParseError, "expected 'set <level> <indices>': " + std::string(text));
  unsigned level = parse_level(w[1]);
  std::vector<Index> members;
  for (std::size_t i = 2; i < w.size(); ++i)
    members.push_back(static_cast<Index>(parse_unsigned(w[i], "index")));
  try {
    return DyadicSet(level, std::move(members));
  } catch (Error const &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_pl(PLOrderAut const &g)
{
  std::string out;
  auto const &ps = g.pieces();
  auto const &bs = g.breakpoints();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i)
      out += "; ";
    out += "piece " + to_string(ps[i].slope) + " " + to_string(ps[i].offset);
    if (i < bs.size())
      out += " | x<" + to_string(bs[i]);
  }
  return out;
}

PLOrderAut parse_pl(std::string_view text)
{
  std::vector<Rational> bps;
  std::vector<AffinePiece> pieces;
  auto parts = split_top(text, ';');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto bar = parts[i].find('|');
    auto w = words(std::string_view(parts[i]).substr(0, bar));
    if (w.size() != 3 || w[0] != "piece")
      throw Error(ErrorKind::ParseError, "expected 'piece <slope> <offset>': " + parts[i]);
    pieces.push_back({parse_rational(w[1]), parse_rational(w[2])});
    bool last = i + 1 == parts.size();
    if (bar == std::string::npos) {
      if (!last)
        throw Error(ErrorKind::ParseError, "every piece but the last needs '| x<c'");
      continue;
    }
    if (last)
      throw Error(ErrorKind::ParseError, "the last piece must extend to +infinity");
    std::string cond = trim(std::string_view(parts[i]).substr(bar + 1));
    if (cond.rfind("x<", 0) != 0)
      throw Error(ErrorKind::ParseError, "expected 'x<c' after '|': " + cond);
    bps.push_back(parse_rational(trim(std::string_view(cond).substr(2))));
  }
  try {
    return PLOrderAut(std::move(bps), std::move(pieces));
  } catch (Error const &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_tilde(StepFn<WindowPerm> const &f, DyadicMPT const &t)
{
  return "tilde { " + format_perm_step(f) + " ; " + format_mpt(t) + " }";
}

std::pair<StepFn<WindowPerm>, DyadicMPT> parse_tilde(std::string_view text)
{
  std::string s = trim(text);
  if (s.rfind("tilde", 0) != 0)
    throw Error(ErrorKind::ParseError, "expected 'tilde { ... }': " + s);
  auto open = s.find('{');
  auto close = s.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error(ErrorKind::ParseError, "tilde body must be braced: " + s);
  auto parts = split_top(std::string_view(s).substr(open + 1, close - open - 1), ';');
  if (parts.size() != 2)
    throw Error(ErrorKind::ParseError, "tilde needs 'step ... ; mpt ...': " + s);
  return {parse_perm_step(parts[0]), parse_mpt(parts[1])};
}

} // namespace randiso
