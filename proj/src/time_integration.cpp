#include "fdfv/time_integration.hpp"

#include <map>

namespace fdfv {

namespace {

using Row = std::vector<Rational>;

RKScheme make(std::string name, int order, std::vector<Row> a, Row b) {
  return RKScheme{std::move(name), order, std::move(a), std::move(b)};
}

Rational r(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const std::map<std::string, RKScheme, std::less<>>& schemes() {
  static const std::map<std::string, RKScheme, std::less<>> table = [] {
    std::map<std::string, RKScheme, std::less<>> m;
    m.emplace("fe", make("fe", 1, {{}}, {r(1)}));
    m.emplace("rk2", make("rk2", 2, {{}, {r(1)}}, {r(1, 2), r(1, 2)}));
    m.emplace("rk3", make("rk3", 3, {{}, {r(1)}, {r(1, 4), r(1, 4)}},
                          {r(1, 6), r(1, 6), r(4, 6)}));
    m.emplace("rk4", make("rk4", 4, {{}, {r(1, 2)}, {r(0), r(1, 2)}, {r(0), r(0), r(1)}},
                          {r(1, 6), r(2, 6), r(2, 6), r(1, 6)}));
    m.emplace("rk5",
              make("rk5", 5,
                   {{},
                    {r(1)},
                    {r(1, 2), r(1, 2)},
                    {r(7, 32), r(5, 64), r(-3, 64)},
                    {r(-1, 8), r(-1, 8), r(1, 12), r(2, 3)},
                    {r(0), r(-9, 64), r(5, 64), r(1, 4), r(9, 16)}},
                   {r(7, 90), r(0), r(7, 90), r(32, 90), r(12, 90), r(32, 90)}));
    return m;
  }();
  return table;
}

}  // namespace

Rational RKScheme::stage_time(int i) const {
  Rational sum(0);
  for (const auto& a : stage_coefficients[i]) sum += a;
  return sum;
}

std::vector<Rational> RKScheme::stability_polynomial() const {
  // With y' = z y and a unit step, K_i = z * (1 + sum_j a_ij K_j) is a
  // polynomial in z of degree i + 1.
  const int s = stage_count();
  using Poly = std::vector<Rational>;
  auto add_scaled = [](Poly& acc, const Poly& p, const Rational& w) {
    if (acc.size() < p.size()) acc.resize(p.size(), Rational(0));
    for (std::size_t k = 0; k < p.size(); ++k) acc[k] += w * p[k];
  };
  std::vector<Poly> k(s);
  for (int i = 0; i < s; ++i) {
    Poly input{Rational(1)};
    for (int j = 0; j < i; ++j) add_scaled(input, k[j], stage_coefficients[i][j]);
    k[i].assign(input.size() + 1, Rational(0));
    for (std::size_t n = 0; n < input.size(); ++n) k[i][n + 1] = input[n];
  }
  Poly p{Rational(1)};
  for (int i = 0; i < s; ++i) add_scaled(p, k[i], output_weights[i]);
  while (p.size() > 1 && p.back() == Rational(0)) p.pop_back();
  return p;
}

const RKScheme& rk_scheme(std::string_view name) {
  const auto& table = schemes();
  auto it = table.find(name);
  if (it == table.end()) {
    throw ValidationError("unknown Runge-Kutta scheme '" + std::string(name) +
                          "'; valid: fe rk2 rk3 rk4 rk5");
  }
  return it->second;
}

const std::vector<std::string>& rk_scheme_names() {
  static const std::vector<std::string> names = {"fe", "rk2", "rk3", "rk4", "rk5"};
  return names;
}

}  // namespace fdfv
