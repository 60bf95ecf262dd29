#pragma once

// Generalized complete intersections V in CP^{n_1} x ... x CP^{n_s}, cut out
// by t divisors of multidegree row_p(D). Degrees may be negative or zero; a
// zero row is rejected as a degenerate divisor.

#include <string>
#include <vector>

#include "stringci/char_series.hpp"
#include "stringci/series.hpp"

namespace stringci {

class CompleteIntersection {
 public:
  /// Throws InvalidInstanceError on ragged rows, negative n_q, zero rows or
  /// negative complex dimension.
  CompleteIntersection(std::vector<int> n, std::vector<std::vector<long>> degrees);

  std::size_t s() const { return n_.size(); }
  std::size_t t() const { return degrees_.size(); }
  const std::vector<int>& n() const { return n_; }
  const std::vector<std::vector<long>>& degrees() const { return degrees_; }
  int complex_dim() const { return complex_dim_; }
  int real_dim() const { return 2 * complex_dim_; }
  /// m_q: number of nonzero entries in column q.
  int nonzero_in_column(std::size_t q) const;
  LinearForm row(std::size_t p) const;
  /// Truncation shape (n_1+1, ..., n_s+1) of the ambient cohomology ring.
  std::vector<int> shape() const;
  /// The exponent vector (n_1, ..., n_s) of the ambient top class.
  std::vector<int> top() const { return n_; }

  std::string to_string() const;
  friend bool operator==(const CompleteIntersection&, const CompleteIntersection&) = default;

 private:
  std::vector<int> n_;
  std::vector<std::vector<long>> degrees_;
  int complex_dim_;
};

struct LowStiefelWhitney {
  int w1 = 0;
  /// w2 = sum_q w2[q] x_q mod 2.
  std::vector<int> w2;
  bool w2_zero() const;
};

LowStiefelWhitney stiefel_whitney_low(const CompleteIntersection& ci);

/// Ambient lift of p_1(V):
///   sum_q (n_q+1 - sum_p d_pq^2) x_q^2 - sum_{u != v} (sum_p d_pu d_pv) x_u x_v.
MSeries p1_ambient(const CompleteIntersection& ci);

struct StringCertificate {
  bool is_string = false;
  /// m_q + 2 <= n_q for every q. Only then is is_string a verdict.
  bool lefschetz_ok = false;
  /// D^T D = diag(n_q + 1).
  bool matrix_criterion_ok = false;
  /// prod_p l_p * p1_ambient == 0 in the ambient ring.
  bool pushforward_p1_zero = false;
  bool w2_zero_mod2 = false;

  bool decided() const { return lefschetz_ok; }
  friend bool operator==(const StringCertificate&, const StringCertificate&) = default;
};

StringCertificate is_string(const CompleteIntersection& ci);

enum class GenusKind { witten, ahat, lgenus, ahat_twisted, lgenus_twisted, euler, custom };

const char* to_string(GenusKind kind);

struct GenusReport {
  GenusKind kind;
  QSeries value;
  int complex_dim;
  int real_dim;
  StringCertificate string;
};

/// Genus of V for the characteristic series Q, by the push-forward formula
///   coefficient of x^n in prod_q Q(x_q)^{n_q+1} * prod_p l_p / Q(l_p).
/// The result carries the orientation induced by the rows of D.
GenusReport genus(const CompleteIntersection& ci, const CharSeries& q_series);

/// Same integrand times ch(T V (x) C) = sum_q (n_q+1)(e^{x_q}+e^{-x_q}) - 2s
/// - sum_p (e^{l_p}+e^{-l_p}). For Q of kind lgenus this returns the twisted
/// signature Sig(V, T), evaluated as 2^{dim} <Lhat ch(T_C V), [V]>.
GenusReport twisted_genus(const CompleteIntersection& ci, const CharSeries& q_series);

/// ch(T V (x) C) as an element of the ambient ring.
MSeries chern_character_complexified_tangent(const CompleteIntersection& ci, int q_order = 0);

Integer euler_characteristic(const CompleteIntersection& ci);

struct CorollaryReport {
  int real_dim;
  Rational ahat;
  Rational ahat_twisted;
  /// signature in real dim 12, twisted signature in real dim 16.
  Rational lhs;
  /// 8 ahat_twisted - 32 ahat, resp. -2048 (ahat_twisted - 48 ahat).
  Rational rhs;
  Rational difference;
  bool holds() const { return sgn(difference) == 0; }
};

/// Throws PreconditionError unless real_dim is 12 or 16.
CorollaryReport corollary_identities(const CompleteIntersection& ci);

}  // namespace stringci
