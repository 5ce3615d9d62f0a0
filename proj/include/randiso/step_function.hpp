#ifndef RANDISO_STEP_FUNCTION_HPP
#define RANDISO_STEP_FUNCTION_HPP

#include <algorithm>
#include <type_traits>
#include <vector>

#include "randiso/dyadic_measure.hpp"
#include "randiso/error.hpp"

namespace randiso
{

/// A function [0,1) -> V constant on each level-n dyadic interval.
template <class V>
class StepFn
{
public:
  StepFn() : _level(0), _values(1) {}

  StepFn(unsigned level, std::vector<V> values)
  : _level(level), _values(std::move(values))
  {
    if (_values.size() != interval_count(level))
      throw Error(ErrorKind::InvalidArgument,
                  "step function at level " + std::to_string(level) + " needs " +
                    std::to_string(interval_count(level)) + " values, got " +
                    std::to_string(_values.size()));
  }

  /// C_v: the constant function at v.
  static StepFn constant(V v, unsigned level = 0)
  {
    return StepFn(level, std::vector<V>(interval_count(level), std::move(v)));
  }

  /// v on the intervals of `set`, w elsewhere.
  static StepFn indicator(DyadicSet const &set, V v, V w)
  {
    std::vector<V> values(interval_count(set.level()), std::move(w));
    for (Index i : set.members())
      values[i] = v;
    return StepFn(set.level(), std::move(values));
  }

  unsigned level() const { return _level; }
  std::size_t size() const { return _values.size(); }
  std::vector<V> const &values() const { return _values; }
  V const &operator[](std::size_t i) const { return _values[i]; }

  /// Value on interval i of a level >= this level.
  V const &at(std::size_t i, unsigned level) const { return _values[i >> (level - _level)]; }

  StepFn refine(unsigned level) const
  {
    if (level < _level)
      throw Error(ErrorKind::InvalidArgument, "cannot refine a step function to a coarser level");
    if (level == _level)
      return *this;
    std::vector<V> values;
    values.reserve(interval_count(level));
    for (std::size_t i = 0; i < interval_count(level); ++i)
      values.push_back(at(i, level));
    return StepFn(level, std::move(values));
  }

  /// The set where `pred` holds, at this level.
  template <class Pred>
  DyadicSet where(Pred pred) const
  {
    std::vector<Index> members;
    for (std::size_t i = 0; i < _values.size(); ++i)
      if (pred(_values[i]))
        members.push_back(static_cast<Index>(i));
    return DyadicSet(_level, std::move(members));
  }

private:
  unsigned _level;
  std::vector<V> _values;
};

/// Pointwise image of a step function.
template <class V, class F>
auto map(StepFn<V> const &f, F op) -> StepFn<std::decay_t<std::invoke_result_t<F, V const &>>>
{
  using W = std::decay_t<std::invoke_result_t<F, V const &>>;
  std::vector<W> out;
  out.reserve(f.size());
  for (auto const &v : f.values())
    out.push_back(op(v));
  return StepFn<W>(f.level(), std::move(out));
}

/// Pointwise combination at the common level.
template <class A, class B, class F>
auto zip(StepFn<A> const &f, StepFn<B> const &g, F op)
  -> StepFn<std::decay_t<std::invoke_result_t<F, A const &, B const &>>>
{
  using W = std::decay_t<std::invoke_result_t<F, A const &, B const &>>;
  unsigned level = std::max(f.level(), g.level());
  std::vector<W> out;
  out.reserve(interval_count(level));
  for (std::size_t i = 0; i < interval_count(level); ++i)
    out.push_back(op(f.at(i, level), g.at(i, level)));
  return StepFn<W>(level, std::move(out));
}

/// f o T, i.e. w -> f(T(w)), at the common level.
template <class V>
StepFn<V> compose_map(StepFn<V> const &f, DyadicMPT const &t)
{
  unsigned level = std::max(f.level(), t.level());
  DyadicMPT tt = mpt_refine(t, level);
  std::vector<V> out;
  out.reserve(interval_count(level));
  for (std::size_t i = 0; i < interval_count(level); ++i)
    out.push_back(f.at(tt(static_cast<Index>(i)), level));
  return StepFn<V>(level, std::move(out));
}

/// Integral of a rational-valued per-interval quantity at the common level:
/// 2^-n sum_i d(f_i, g_i).
template <class A, class B, class D>
Rational integrate(StepFn<A> const &f, StepFn<B> const &g, D dist)
{
  unsigned level = std::max(f.level(), g.level());
  Rational total = 0;
  for (std::size_t i = 0; i < interval_count(level); ++i)
    total += dist(f.at(i, level), g.at(i, level));
  return total * pow2_inverse(level);
}

} // namespace randiso

#endif
