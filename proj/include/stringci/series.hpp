#pragma once

// Exact truncated power-series arithmetic.
//
// QSeries is a power series in q^2 with rational coefficients, kept through
// q^{2K}. MSeries is the truncated ring Q[[q^2]][x_1..x_s]/(x_q^{n_q+1}),
// which models the rational cohomology of a product of projective spaces with
// coefficients in q-series.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stringci {

using Rational = mpq_class;
using Integer = mpz_class;

class QSeries {
 public:
  /// The zero series kept through q^{2*order}.
  explicit QSeries(int order = 0);
  /// Takes ownership of coefficients; coeffs[n] multiplies q^{2n}.
  explicit QSeries(std::vector<Rational> coeffs);

  static QSeries constant(const Rational& c, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Coefficients beyond `order` are dropped; never extends.
  QSeries truncated(int order) const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
  friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }
  friend QSeries operator*(QSeries lhs, const Rational& c) { return lhs *= c; }
  friend QSeries operator*(const Rational& c, QSeries rhs) { return rhs *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const;

  friend bool operator==(const QSeries& a, const QSeries& b) = default;

  /// sum_n c_n q^{2n} at a numeric q.
  std::complex<double> evaluate(std::complex<double> q) const;

  /// Human form "a0 + a1 q^2 + a2 q^4 ...", zero terms omitted.
  std::string to_string() const;

  /// acc += a * b, truncated at acc.order(). Hot kernel of MSeries products.
  static void add_product(QSeries& acc, const QSeries& a, const QSeries& b);

 private:
  std::vector<Rational> coeffs_;
};

/// Multiplicative inverse through min order. Throws NonInvertibleError if
/// the constant term is zero.
QSeries inverse(const QSeries& a);

/// Integer linear form sum_q c_q x_q.
struct LinearForm {
  std::vector<long> coeffs;

  std::size_t size() const { return coeffs.size(); }
  bool is_zero() const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

class MSeries {
 public:
  /// The zero element. shape[q] = n_q + 1 is the number of kept powers of x_q.
  MSeries(std::vector<int> shape, int q_order);

  static MSeries one(std::vector<int> shape, int q_order);
  static MSeries constant(std::vector<int> shape, const QSeries& c);
  static MSeries variable(std::vector<int> shape, int q_order, std::size_t index);
  static MSeries linear(std::vector<int> shape, int q_order, const LinearForm& form);

  const std::vector<int>& shape() const { return shape_; }
  int q_order() const { return q_order_; }
  std::size_t size() const { return coeffs_.size(); }
  /// Largest total degree that survives truncation, sum_q (shape_q - 1).
  int max_degree() const;

  const QSeries& coefficient_at(std::span<const int> exponents) const;
  const QSeries& flat(std::size_t i) const { return coeffs_[i]; }
  /// Exponent vector of a flat index.
  std::vector<int> exponents_of(std::size_t flat_index) const;

  bool is_zero() const;
  bool is_one() const;

  MSeries& operator+=(const MSeries& rhs);
  MSeries& operator-=(const MSeries& rhs);
  MSeries& operator*=(const Rational& c);
  friend MSeries operator+(MSeries a, const MSeries& b) { return a += b; }
  friend MSeries operator-(MSeries a, const MSeries& b) { return a -= b; }
  friend MSeries operator*(const MSeries& a, const MSeries& b);
  friend bool operator==(const MSeries& a, const MSeries& b) = default;

  /// Mutable access for builders; exponents must be in range.
  QSeries& at(std::span<const int> exponents);
  QSeries& flat(std::size_t i) { return coeffs_[i]; }

  std::string to_string() const;

 private:
  std::size_t flat_index(std::span<const int> exponents) const;
  void require_same_shape(const MSeries& other, const char* op) const;

  std::vector<int> shape_;
  std::vector<std::size_t> strides_;
  int q_order_;
  std::vector<QSeries> coeffs_;
};

/// a * linear form, computed as a shift-and-add in O(size * s).
MSeries multiply_by_linear(const MSeries& a, const LinearForm& form);

/// Coefficient of x^exponents in a*b without materialising the product.
QSeries product_coefficient(const MSeries& a, const MSeries& b, std::span<const int> exponents);

/// Inverse in the truncated ring via the geometric series in the
/// augmentation ideal; terminates because that ideal is nilpotent.
MSeries inverse(const MSeries& a);

}  // namespace stringci
