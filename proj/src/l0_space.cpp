#include "randiso/l0_space.hpp"

namespace randiso
{

Rational window_distance(WindowPerm const &a, WindowPerm const &b, std::size_t k)
{
  for (Point n = 0; n < k; ++n)
    if (a(n) != b(n))
      return 1;
  return 0;
}

ConjugatorResult<WindowPerm> constant_generic_conjugator(WindowPerm const &g,
                                                         StepFn<WindowPerm> const &f,
                                                         std::size_t k, Rational const &eps)
{
  auto match = [&](WindowPerm const &v) -> std::optional<WindowPerm> {
    if (window_distance(v, g, k) == 0)
      return WindowPerm::identity();
    try {
      return match_on_window(g, 1, restrict_to_window(v, k));
    } catch (InsufficientCyclesError const &) {
      return std::nullopt;
    }
  };
  auto metric = [k](WindowPerm const &a, WindowPerm const &b) { return window_distance(a, b, k); };
  auto mul = [](WindowPerm const &a, WindowPerm const &b) { return a * b; };
  auto inv = [](WindowPerm const &a) { return inverse(a); };
  return conjugate_per_interval(g, f, eps, match, metric, mul, inv);
}

} // namespace randiso
