#include "fdfv/ddo.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

std::map<int, Rational> drop_zeros(std::map<int, Rational> coefficients) {
  std::erase_if(coefficients, [](const auto& kv) { return kv.second == Rational(0); });
  return coefficients;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

std::int64_t factorial(int n) {
  std::int64_t result = 1;
  for (int k = 2; k <= n; ++k) result *= k;
  return result;
}

// Rows of the sample operator table, written as integer weights over a
// common denominator:  (sum avg_weights*ubar + sum nodal_weights*u) / (den*h).
struct CatalogRow {
  const char* name;
  std::int64_t denominator;
  std::vector<std::pair<int, std::int64_t>> averages;
  std::vector<std::pair<int, std::int64_t>> nodals;
};

const std::vector<CatalogRow>& catalog_rows() {
  static const std::vector<CatalogRow> rows = {
      {"1st-forward", 1, {{1, 2}}, {{0, -2}}},
      {"1st-backward", 1, {{0, -2}}, {{0, 2}}},
      {"2nd-forward", 1, {{1, 6}}, {{1, -2}, {0, -4}}},
      {"2nd-backward", 1, {{0, -6}}, {{0, 4}, {-1, 2}}},
      {"3rd-forward", 2, {{2, 1}, {1, 17}}, {{1, -8}, {0, -10}}},
      {"3rd-F-biased", 2, {{1, 7}, {0, -1}}, {{1, -2}, {0, -4}}},
      {"3rd-B-biased", 2, {{1, 1}, {0, -7}}, {{0, 4}, {-1, 2}}},
      {"3rd-backward", 2, {{0, -17}, {-1, -1}}, {{0, 10}, {-1, 8}}},
      {"4th-forward", 2, {{2, 7}, {1, 23}}, {{2, -2}, {1, -16}, {0, -12}}},
      {"4th-F-biased", 6, {{2, 1}, {1, 31}, {0, -2}}, {{1, -12}, {0, -18}}},
      {"4th-B-biased", 6, {{1, 2}, {0, -31}, {-1, -1}}, {{0, 18}, {-1, 12}}},
      {"4th-backward", 2, {{0, -23}, {-1, -7}}, {{0, 12}, {-1, 16}, {-2, 2}}},
  };
  return rows;
}

DDOStencil build(const CatalogRow& row) {
  std::map<int, Rational> alpha, beta;
  for (auto [l, w] : row.averages) alpha[l] = Rational(w, row.denominator);
  for (auto [l, w] : row.nodals) beta[l] = Rational(w, row.denominator);
  return DDOStencil(row.name, std::move(alpha), std::move(beta));
}

const std::map<std::string, DDOStencil, std::less<>>& catalog_map() {
  static const auto map = [] {
    std::map<std::string, DDOStencil, std::less<>> m;
    for (const auto& row : catalog_rows()) m.emplace(row.name, build(row));
    return m;
  }();
  return map;
}

int order_of_name(const std::string& name) { return name[0] - '0'; }

}  // namespace

DDOStencil::DDOStencil(std::string name, std::map<int, Rational> alpha,
                       std::map<int, Rational> beta)
    : name_(std::move(name)),
      alpha_(drop_zeros(std::move(alpha))),
      beta_(drop_zeros(std::move(beta))) {
  if (alpha_.empty() && beta_.empty()) {
    throw ValidationError("stencil '" + name_ + "' has no coefficients");
  }
  for (const auto& [l, a] : alpha_) {
    average_terms_.push_back({l, to_double(a)});
    radius_ = std::max({radius_, l, 1 - l});
  }
  for (const auto& [l, b] : beta_) {
    nodal_terms_.push_back({l, to_double(b)});
    radius_ = std::max(radius_, std::abs(l));
  }
  if (!alpha_.empty()) {
    min_avg_ = alpha_.begin()->first;
    max_avg_ = alpha_.rbegin()->first;
  }
  if (!beta_.empty()) {
    min_nodal_ = beta_.begin()->first;
    max_nodal_ = beta_.rbegin()->first;
  }
}

Rational DDOStencil::alpha_at(int offset) const {
  auto it = alpha_.find(offset);
  return it == alpha_.end() ? Rational(0) : it->second;
}

Rational DDOStencil::beta_at(int offset) const {
  auto it = beta_.find(offset);
  return it == beta_.end() ? Rational(0) : it->second;
}

Rational DDOStencil::b0() const {
  Rational sum(0);
  for (const auto& [l, b] : beta_) sum += b;
  return sum;
}

DDOStencil mirror(const DDOStencil& stencil, std::string name) {
  // ubar_{j+l} sits at the mirror position of ubar_{j+1-l}; u_{j+1/2+l} at
  // u_{j+1/2-l}. The derivative changes sign under reflection.
  std::map<int, Rational> alpha, beta;
  for (const auto& [l, a] : stencil.alpha()) alpha[1 - l] = -a;
  for (const auto& [l, b] : stencil.beta()) beta[-l] = -b;
  return DDOStencil(std::move(name), std::move(alpha), std::move(beta));
}

const DDOStencil& catalog(std::string_view name) {
  const auto& map = catalog_map();
  auto it = map.find(name);
  if (it == map.end()) {
    std::ostringstream msg;
    msg << "unknown operator '" << name << "'; valid identifiers:";
    for (const auto& n : catalog_names()) msg << ' ' << n;
    throw ValidationError(msg.str());
  }
  return it->second;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& row : catalog_rows()) v.emplace_back(row.name);
    return v;
  }();
  return names;
}

double OrderReport::leading_error_value() const {
  return to_double(leading_error);
}

OrderReport analyze(const DDOStencil& stencil, int max_order) {
  if (max_order < 1 || max_order > 10) {
    throw ValidationError("analyze: max_order must lie in [1, 10]");
  }
  OrderReport report;
  const int n_moments = max_order + 2;
  for (int m = 0; m < n_moments; ++m) {
    Rational a(0), b(0);
    for (const auto& [l, alpha] : stencil.alpha()) {
      a += alpha * Rational(ipow(l, m + 1) - ipow(l - 1, m + 1));
    }
    for (const auto& [l, beta] : stencil.beta()) {
      b += beta * Rational(ipow(l, m));
    }
    report.moments_a.push_back(a / Rational(factorial(m + 1)));
    report.moments_b.push_back(b / Rational(factorial(m)));
  }
  const auto& a = report.moments_a;
  const auto& b = report.moments_b;

  if (a[0] + b[0] == Rational(0) && a[1] + b[1] == Rational(1)) {
    int p = 1;
    while (p < max_order && a[p + 1] + b[p + 1] == Rational(0)) ++p;
    report.designed_order = p;
    report.leading_error = a[p + 1] + b[p + 1];
  } else {
    report.designed_order = 0;
    report.leading_error = a[0] + b[0] != Rational(0) ? a[0] + b[0] : a[1] + b[1] - Rational(1);
  }

  if (b[0] != Rational(0)) {
    report.s_beta = 0;
  } else if (b[1] != Rational(2)) {
    report.s_beta = 1;
  } else {
    report.s_beta = -1;
    for (int s = 2; s < n_moments; ++s) {
      if (b[s] != Rational(0)) {
        report.s_beta = s;
        break;
      }
    }
  }
  return report;
}

double apply(const DDOStencil& stencil, const StencilWindow& window, double h) {
  double sum = 0.0;
  for (const auto& term : stencil.average_terms()) {
    auto it = window.averages.find(term.offset);
    if (it == window.averages.end()) {
      throw OutOfStencilError(stencil.name() + ": missing cell average at offset " +
                              std::to_string(term.offset));
    }
    sum += term.coefficient * it->second;
  }
  for (const auto& term : stencil.nodal_terms()) {
    auto it = window.nodals.find(term.offset);
    if (it == window.nodals.end()) {
      throw OutOfStencilError(stencil.name() + ": missing nodal value at offset " +
                              std::to_string(term.offset));
    }
    sum += term.coefficient * it->second;
  }
  return sum / h;
}

UpwindFamily upwind_family(std::string_view positive_name) {
  const DDOStencil& positive = catalog(positive_name);
  if (positive.b0() <= Rational(0)) {
    throw ValidationError("operator '" + positive.name() +
                          "' has b0 <= 0 and cannot serve positive speeds");
  }
  static const std::map<std::string, std::string, std::less<>> mirrors = {
      {"1st-backward", "1st-forward"},   {"2nd-backward", "2nd-forward"},
      {"3rd-backward", "3rd-forward"},   {"3rd-B-biased", "3rd-F-biased"},
      {"4th-backward", "4th-forward"},   {"4th-B-biased", "4th-F-biased"},
  };
  const DDOStencil& negative = catalog(mirrors.at(positive.name()));
  return {positive.name(), &positive, &negative, order_of_name(positive.name())};
}

std::vector<const DDOStencil*> closure_candidates(const DDOStencil& preferred) {
  const bool positive = preferred.b0() > Rational(0);
  const int order = order_of_name(preferred.name());
  auto group = [&](int k, bool same) {
    std::vector<const DDOStencil*> v;
    for (const auto& name : catalog_names()) {
      const DDOStencil& s = catalog(name);
      if (order_of_name(name) != k || &s == &preferred) continue;
      if ((s.b0() > Rational(0)) == (positive == same)) v.push_back(&s);
    }
    // Biased operators reach less far past the face than fully one-sided
    // ones of the same order.
    std::stable_partition(v.begin(), v.end(), [](const DDOStencil* s) {
      return s->name().find("biased") != std::string::npos;
    });
    return v;
  };
  std::vector<const DDOStencil*> out{&preferred};
  auto append = [&](std::vector<const DDOStencil*> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(group(order, true));
  if (order > 1) append(group(order - 1, true));
  append(group(order, false));
  if (order > 1) append(group(order - 1, false));
  for (int k = order - 2; k >= 1; --k) {
    append(group(k, true));
    append(group(k, false));
  }
  return out;
}

const DDOStencil& one_sided(int order, bool forward) {
  static const char* forward_names[] = {"1st-forward", "2nd-forward",
                                        "3rd-forward", "4th-forward"};
  static const char* backward_names[] = {"1st-backward", "2nd-backward",
                                         "3rd-backward", "4th-backward"};
  if (order < 1 || order > 4) {
    throw ValidationError("no one-sided operator of order " +
                          std::to_string(order));
  }
  return catalog(forward ? forward_names[order - 1] : backward_names[order - 1]);
}

}  // namespace fdfv
