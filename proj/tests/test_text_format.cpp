#include <doctest.h>

#include <optional>

#include "randiso/generators.hpp"
#include "randiso/text_format.hpp"

using namespace randiso;

namespace
{

template <class F>
std::optional<ErrorKind> kind_of(F f)
{
  try {
    f();
  } catch (Error const &e) {
    return e.kind();
  }
  return std::nullopt;
}

} // namespace

TEST_CASE("rationals")
{
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("5") == 5);
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_rational("0.5"); }) == ErrorKind::ParseError);
}

TEST_CASE("cycle notation")
{
  CHECK(format_cycles(WindowPerm::from_cycles({{0, 1}, {2, 3, 4}})) == "(0 1)(2 3 4)");
  CHECK(format_cycles(WindowPerm::identity(3)) == "()");
  CHECK(parse_cycles("(2 3 4)(0 1)") == WindowPerm::from_cycles({{0, 1}, {2, 3, 4}}));
  CHECK(parse_cycles("()").is_identity());
  CHECK(kind_of([] { parse_cycles("(0 1)(1 2)"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_cycles("(0 1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_cycles("(a b)"); }) == ErrorKind::ParseError);

  Rng rng(61);
  for (int c = 0; c < 100; ++c) {
    auto a = gen::random_perm(rng, gen::uniform(rng, 0, 12));
    CHECK(parse_cycles(format_cycles(a)) == a);
  }
}

TEST_CASE("maps and sets")
{
  CHECK(format_mpt(DyadicMPT::shift(1, 1)) == "mpt 1 1 0");
  CHECK(parse_mpt("mpt 2 1 2 3 0") == DyadicMPT::shift(2, 1));
  CHECK(kind_of([] { parse_mpt("mpt 2 0 0 1 2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_mpt("mpt 2 0 1 2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_mpt("map 1 0 1"); }) == ErrorKind::ParseError);

  CHECK(parse_set("set 3 1 5") == DyadicSet(3, {1, 5}));
  CHECK(parse_set(format_set(DyadicSet(2, {0, 3}))) == DyadicSet(2, {0, 3}));
  CHECK(kind_of([] { parse_set("set 1 2"); }) == ErrorKind::ParseError);

  Rng rng(62);
  for (int c = 0; c < 50; ++c) {
    auto t = gen::random_mpt(rng, static_cast<unsigned>(gen::uniform(rng, 0, 5)));
    CHECK(parse_mpt(format_mpt(t)) == t);
  }
}

TEST_CASE("piecewise linear maps")
{
  auto g = parse_pl("piece 2 0");
  CHECK(g(Rational(3)) == 6);
  auto kink = parse_pl("piece 1 0 | x<0; piece 2 0");
  CHECK(kink(Rational(-1)) == -1);
  CHECK(kink(Rational(1, 2)) == 1);
  CHECK(kind_of([] { parse_pl("piece -1 0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_pl("piece 1 0 | x<0; piece 2 1"); }) == ErrorKind::ParseError);

  Rng rng(63);
  for (int c = 0; c < 50; ++c) {
    auto h = gen::random_pl(rng, 4);
    CHECK(parse_pl(format_pl(h)) == h);
  }
}

TEST_CASE("step functions and tilde elements")
{
  Rng rng(64);
  for (int c = 0; c < 30; ++c) {
    auto f = gen::perm_step(rng, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 5, true);
    auto back = parse_perm_step(format_perm_step(f));
    REQUIRE(back.level() == f.level());
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(back[i] == f[i]);

    auto t = gen::random_mpt(rng, 2);
    auto [f2, t2] = parse_tilde(format_tilde(f, t));
    CHECK(t2 == t);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(f2[i] == f[i]);
  }
  auto alpha = parse_point_step("step 1 [3, 4]");
  CHECK(alpha[1] == 4);
  CHECK(kind_of([] { parse_point_step("step 1 [3]"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_point_step("step 1 3, 4"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_tilde("tilde { step 0 [()] }"); }) == ErrorKind::ParseError);
}
