#pragma once

// Discrete differential operators (DDO) over mixed cell-average / nodal data.
//
// A DDO approximates du/dx at the face x_{j+1/2} as
//
//   [D u]_{j+1/2} = ( sum_l alpha_l * ubar_{j+l} + sum_l beta_l * u_{j+1/2+l} ) / h
//
// with alpha offsets in [-q+1, q] and beta offsets in [-q, q]. Offsets are
// always relative to the face, so the cell immediately left of the face has
// alpha offset 0 and the cell immediately right has offset 1.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdfv {

using Rational = boost::rational<std::int64_t>;

// One coefficient of a stencil, already converted to floating point.
struct StencilTerm {
  int offset;
  double coefficient;
};

class DDOStencil {
 public:
  DDOStencil(std::string name, std::map<int, Rational> alpha,
             std::map<int, Rational> beta);

  const std::string& name() const { return name_; }
  int radius() const { return radius_; }

  // Exact coefficients, zero entries removed.
  const std::map<int, Rational>& alpha() const { return alpha_; }
  const std::map<int, Rational>& beta() const { return beta_; }

  Rational alpha_at(int offset) const;
  Rational beta_at(int offset) const;

  // Floating-point views used by the solvers.
  const std::vector<StencilTerm>& average_terms() const { return average_terms_; }
  const std::vector<StencilTerm>& nodal_terms() const { return nodal_terms_; }

  // Offset extents actually referenced (inclusive). Empty alpha gives
  // min > max.
  int min_average_offset() const { return min_avg_; }
  int max_average_offset() const { return max_avg_; }
  int min_nodal_offset() const { return min_nodal_; }
  int max_nodal_offset() const { return max_nodal_; }

  // b_0 = sum of beta; its sign decides the upwind direction.
  Rational b0() const;

 private:
  std::string name_;
  std::map<int, Rational> alpha_;
  std::map<int, Rational> beta_;
  std::vector<StencilTerm> average_terms_;
  std::vector<StencilTerm> nodal_terms_;
  int radius_ = 0;
  int min_avg_ = 0, max_avg_ = -1, min_nodal_ = 0, max_nodal_ = -1;
};

// Reflects a stencil about its face (x -> -x). The mirror of a backward
// operator is the corresponding forward operator.
DDOStencil mirror(const DDOStencil& stencil, std::string name);

// The twelve sample operators with b_0 != 0.
//   "1st-forward"  "1st-backward"  "2nd-forward"   "2nd-backward"
//   "3rd-forward"  "3rd-F-biased"  "3rd-B-biased"  "3rd-backward"
//   "4th-forward"  "4th-F-biased"  "4th-B-biased"  "4th-backward"
const DDOStencil& catalog(std::string_view name);
const std::vector<std::string>& catalog_names();

struct OrderReport {
  int designed_order = 0;       // p; 0 when the stencil is inconsistent
  Rational leading_error;       // c_p = a_{p+1} + b_{p+1}
  std::vector<Rational> moments_a;  // a_0 .. a_{max_order+1}
  std::vector<Rational> moments_b;  // b_0 .. b_{max_order+1}
  int s_beta = 0;               // -1 when no nonzero b_s was found in range

  double leading_error_value() const;
};

// Moments a_m, b_m and the order-condition chain. max_order is capped at 10
// to keep factorials inside 64-bit rationals.
OrderReport analyze(const DDOStencil& stencil, int max_order);

// Values around a face, addressed by the same signed offsets as the stencil.
struct StencilWindow {
  std::map<int, double> averages;  // offset l -> ubar_{j+l}
  std::map<int, double> nodals;    // offset l -> u_{j+1/2+l}
};

// Evaluates the operator on a window. Throws OutOfStencilError if a needed
// entry is missing.
double apply(const DDOStencil& stencil, const StencilWindow& window, double h);

// An operator used for positive characteristic speeds together with its
// mirror for negative speeds.
struct UpwindFamily {
  std::string name;             // name of the positive-speed operator
  const DDOStencil* positive;   // b_0 > 0
  const DDOStencil* negative;   // b_0 < 0
  int order;                    // designed order of the DDO
};

// Family built around a catalog operator with b_0 > 0 ("1st-backward",
// "3rd-B-biased", ...). Throws ValidationError for b_0 <= 0 operators.
UpwindFamily upwind_family(std::string_view positive_name);

// Catalog operators in the order boundary closures try them: the preferred
// one, the other operators of the same order and b_0 sign, those one order
// lower with the same sign, then the same and one-lower orders with the
// opposite sign, then lower orders. Biased operators come first within each
// group.
std::vector<const DDOStencil*> closure_candidates(const DDOStencil& preferred);

// Catalog forward (or backward) operator of the given order, used for
// Neumann closures. Order must be in 1..4.
const DDOStencil& one_sided(int order, bool forward);

}  // namespace fdfv
