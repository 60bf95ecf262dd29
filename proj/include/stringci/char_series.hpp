#pragma once

// Characteristic power series of multiplicative genera and exact
// q-expansions of the Jacobi theta products.
//
// Normalization: the variable y of a CharSeries is a genuine Chern root, so
// every genus below takes rational values. The theta-quotient form
// v theta'(0,tau) / theta(v,tau) equals witten_series at y = 2 pi i v.

#include <map>
#include <vector>

#include "stringci/series.hpp"

namespace stringci {

enum class SeriesKind { witten, ahat, lgenus, lhat, exp, custom };

const char* to_string(SeriesKind kind);

class CharSeries {
 public:
  CharSeries(SeriesKind kind, std::vector<QSeries> coeffs);

  /// Univariate series with q-independent coefficients.
  static CharSeries from_rationals(SeriesKind kind, const std::vector<Rational>& coeffs, int q_order);

  SeriesKind kind() const { return kind_; }
  int y_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  int q_order() const { return q_order_; }
  const QSeries& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<QSeries>& coeffs() const { return coeffs_; }

  bool is_even() const;
  /// Every positive power of q set to zero.
  CharSeries at_q_zero() const;
  CharSeries truncated(int y_order) const;
  CharSeries with_kind(SeriesKind kind) const;

  friend CharSeries operator*(const CharSeries& a, const CharSeries& b);
  friend bool operator==(const CharSeries&, const CharSeries&) = default;

 private:
  SeriesKind kind_;
  int q_order_;
  std::vector<QSeries> coeffs_;
};

/// 1/F; the y^0 coefficient must be an invertible q-series.
CharSeries reciprocal(const CharSeries& f);
CharSeries power(const CharSeries& f, int exponent);
/// y * F, known to one order higher than F.
CharSeries times_y(const CharSeries& f);

/// exp(c y) through y^{y_order}.
CharSeries exp_series(const Rational& c, int y_order, int q_order = 0);
/// (y/2) / sinh(y/2).
CharSeries ahat_series(int y_order, int q_order = 0);
/// y / tanh(y); top-degree pairing gives the signature.
CharSeries lgenus_series(int y_order, int q_order = 0);
/// (y/2) / tanh(y/2); twisted signatures pair with this series times 2^dim.
CharSeries lhat_series(int y_order, int q_order = 0);

/// Witten characteristic series
///   (y/2)/sinh(y/2) * prod_{j=1}^{K} (1-q^{2j})^2 / ((1-q^{2j}e^y)(1-q^{2j}e^{-y}))
/// through y^{y_order} and q^{2K}.
CharSeries witten_series(int y_order, int q_order);

/// Multivariate evaluation F(l(x)) in the truncated ring of the given shape,
/// by Horner's rule in powers of l. Needs F to y-order >= sum(shape_q - 1).
MSeries substitute_linear(const CharSeries& f, const LinearForm& form, const std::vector<int>& shape);

// ------------------------------------------------------------ theta products

enum class ThetaKind { theta, theta1, theta2, theta3 };

const char* to_string(ThetaKind kind);

/// Formal expansion of a Jacobi theta function as a Laurent polynomial in
/// w = e^{2 pi i v} whose coefficients are polynomials in q (all powers of q,
/// not only even ones). For theta and theta1 the prefactor 2 q^{1/4} sin(pi v)
/// resp. 2 q^{1/4} cos(pi v) is not multiplied in: it is recorded by
/// `half_prefactor` as (w^{1/2} - w^{-1/2})/i resp. (w^{1/2} + w^{-1/2}), and
/// `quarter_power_of_q` records the q^{1/4}. Only quotients in which these
/// cancel are meaningful to callers.
struct ThetaExpansion {
  enum class Prefactor { none, sine, cosine };

  ThetaKind kind;
  int q_order;  ///< highest power of q kept (not q^2)
  int w_order;  ///< |w exponent| kept
  Prefactor half_prefactor = Prefactor::none;
  bool quarter_power_of_q = false;
  /// w exponent -> coefficients of q^0..q^{q_order}.
  std::map<int, std::vector<Integer>> terms;

  /// Product part at w = 1 (coefficients of q^0..q^{q_order}).
  std::vector<Integer> product_at_w_one() const;
  /// Full value at w = 1 including the prefactor; identically zero for theta.
  std::vector<Integer> value_at_w_one() const;
};

/// Product over j <= K of the factors defining `kind`, truncated at q^{2K}
/// and at |w exponent| <= w_order.
ThetaExpansion theta_qexp(ThetaKind kind, int w_order, int k_terms);

}  // namespace stringci
