#pragma once

// Explicit Runge-Kutta steppers for semi-discrete systems dW/dt = K(W, t).

#include <cmath>
#include <concepts>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdfv/ddo.hpp"
#include "fdfv/errors.hpp"

namespace fdfv {

struct RKScheme {
  std::string name;
  int order = 0;
  // stage_coefficients[i][j], j < i: weight of K_j in the input of stage i.
  std::vector<std::vector<Rational>> stage_coefficients;
  std::vector<Rational> output_weights;

  int stage_count() const { return static_cast<int>(output_weights.size()); }
  // Nominal time fraction of stage i (row sum of the tableau).
  Rational stage_time(int i) const;
  // Coefficients of the stability polynomial P(z), lowest degree first.
  std::vector<Rational> stability_polynomial() const;
};

// "fe", "rk2", "rk3", "rk4", "rk5". Throws ValidationError otherwise.
const RKScheme& rk_scheme(std::string_view name);
const std::vector<std::string>& rk_scheme_names();

// Anything whose values can be viewed as one flat array of doubles.
template <class S>
concept IntegrableState = std::copy_constructible<S> && requires(S s, const S cs) {
  { s.values() } -> std::convertible_to<std::span<double>>;
  { cs.values() } -> std::convertible_to<std::span<const double>>;
};

// Plain vector state, mostly for ODE checks.
struct VectorState {
  std::vector<double> data;
  std::span<double> values() { return data; }
  std::span<const double> values() const { return data; }
};

namespace detail {

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

inline bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

// One step of `scheme`. `rhs(state, t)` returns dW/dt with the same layout as
// the state. `constrain(state, t)` is applied to every stage input at its
// nominal time and to the result at t + dt (boundary values, periodic
// copies). Throws BlowUpError naming the stage when a non-finite value
// appears.
template <IntegrableState S, class Rhs, class Constrain>
S step(const RKScheme& scheme, Rhs&& rhs, const S& state, double t, double dt,
       Constrain&& constrain) {
  const int stages = scheme.stage_count();
  if (!detail::all_finite(state.values())) {
    throw BlowUpError("non-finite state entering stage 1", 1);
  }
  std::vector<S> rates;
  rates.reserve(stages);
  rates.push_back(rhs(state, t));
  for (int i = 1; i <= stages; ++i) {
    if (!detail::all_finite(std::as_const(rates.back()).values())) {
      throw BlowUpError("non-finite rate in stage " + std::to_string(i), i);
    }
    if (i == stages) break;
    S input = state;
    auto in = input.values();
    for (int j = 0; j < i; ++j) {
      const Rational& a = scheme.stage_coefficients[i][j];
      if (a == Rational(0)) continue;
      const double w = dt * detail::to_double(a);
      auto k = std::as_const(rates[j]).values();
      for (std::size_t n = 0; n < in.size(); ++n) in[n] += w * k[n];
    }
    const double stage_t = t + dt * detail::to_double(scheme.stage_time(i));
    constrain(input, stage_t);
    if (!detail::all_finite(std::as_const(input).values())) {
      throw BlowUpError("non-finite state entering stage " + std::to_string(i + 1),
                        i + 1);
    }
    rates.push_back(rhs(std::as_const(input), stage_t));
  }
  S next = state;
  auto out = next.values();
  for (int i = 0; i < stages; ++i) {
    const Rational& b = scheme.output_weights[i];
    if (b == Rational(0)) continue;
    const double w = dt * detail::to_double(b);
    auto k = std::as_const(rates[i]).values();
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += w * k[n];
  }
  constrain(next, t + dt);
  if (!detail::all_finite(std::as_const(next).values())) {
    throw BlowUpError("non-finite state after step", stages);
  }
  return next;
}

template <IntegrableState S, class Rhs>
S step(const RKScheme& scheme, Rhs&& rhs, const S& state, double t, double dt) {
  return step(scheme, std::forward<Rhs>(rhs), state, t, dt, [](S&, double) {});
}

}  // namespace fdfv
