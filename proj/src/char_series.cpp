#include "stringci/char_series.hpp"

#include <algorithm>
#include <utility>

#include "stringci/errors.hpp"

namespace stringci {

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::witten: return "witten";
    case SeriesKind::ahat: return "ahat";
    case SeriesKind::lgenus: return "lgenus";
    case SeriesKind::lhat: return "lhat";
    case SeriesKind::exp: return "exp";
    case SeriesKind::custom: return "custom";
  }
  return "unknown";
}

const char* to_string(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::theta: return "theta";
    case ThetaKind::theta1: return "theta1";
    case ThetaKind::theta2: return "theta2";
    case ThetaKind::theta3: return "theta3";
  }
  return "unknown";
}

CharSeries::CharSeries(SeriesKind kind, std::vector<QSeries> coeffs) : kind_(kind), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InsufficientOrderError("characteristic series needs at least the y^0 term");
  q_order_ = coeffs_.front().order();
  for (const auto& c : coeffs_) q_order_ = std::min(q_order_, c.order());
  for (auto& c : coeffs_) c = c.truncated(q_order_);
}

CharSeries CharSeries::from_rationals(SeriesKind kind, const std::vector<Rational>& coeffs, int q_order) {
  std::vector<QSeries> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(QSeries::constant(c, q_order));
  return CharSeries(kind, std::move(out));
}

bool CharSeries::is_even() const {
  for (int k = 1; k <= y_order(); k += 2) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

CharSeries CharSeries::at_q_zero() const {
  std::vector<QSeries> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(QSeries::constant(c[0], q_order_));
  return CharSeries(kind_, std::move(out));
}

CharSeries CharSeries::truncated(int y_order) const {
  if (y_order >= this->y_order()) return *this;
  return CharSeries(kind_, std::vector<QSeries>(coeffs_.begin(), coeffs_.begin() + y_order + 1));
}

CharSeries CharSeries::with_kind(SeriesKind kind) const {
  CharSeries out(*this);
  out.kind_ = kind;
  return out;
}

CharSeries operator*(const CharSeries& a, const CharSeries& b) {
  const int n = std::min(a.y_order(), b.y_order());
  const int k = std::min(a.q_order(), b.q_order());
  std::vector<QSeries> out(static_cast<std::size_t>(n) + 1, QSeries(k));
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) QSeries::add_product(out[i + j], a[i], b[j]);
  }
  return CharSeries(a.kind() == b.kind() ? a.kind() : SeriesKind::custom, std::move(out));
}

CharSeries reciprocal(const CharSeries& f) {
  const int n = f.y_order();
  std::vector<QSeries> b(static_cast<std::size_t>(n) + 1, QSeries(f.q_order()));
  b[0] = inverse(f[0]);
  for (int m = 1; m <= n; ++m) {
    QSeries acc(f.q_order());
    for (int i = 1; i <= m; ++i) QSeries::add_product(acc, f[i], b[m - i]);
    b[m] = -(acc * b[0]);
  }
  return CharSeries(SeriesKind::custom, std::move(b));
}

CharSeries power(const CharSeries& f, int exponent) {
  if (exponent < 0) return power(reciprocal(f), -exponent);
  std::vector<Rational> unit(static_cast<std::size_t>(f.y_order()) + 1, Rational(0));
  unit[0] = 1;
  CharSeries result = CharSeries::from_rationals(f.kind(), unit, f.q_order());
  CharSeries base = f;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result.with_kind(f.kind());
}

CharSeries times_y(const CharSeries& f) {
  std::vector<QSeries> out;
  out.reserve(f.coeffs().size() + 1);
  out.emplace_back(f.q_order());
  for (const auto& c : f.coeffs()) out.push_back(c);
  return CharSeries(SeriesKind::custom, std::move(out));
}

namespace {

// c^k / k! for k = 0..n.
std::vector<Rational> exp_coefficients(const Rational& c, int n) {
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * c / k;
  return out;
}

// sinh(c y)/(c y) and cosh(c y) from the exponential coefficients.
std::vector<Rational> sinhc_coefficients(const Rational& c, int n) {
  const std::vector<Rational> e = exp_coefficients(c, n + 1);
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = 0; k <= n; k += 2) out[k] = e[k + 1] / c;
  return out;
}

std::vector<Rational> cosh_coefficients(const Rational& c, int n) {
  std::vector<Rational> out = exp_coefficients(c, n);
  for (int k = 1; k <= n; k += 2) out[k] = 0;
  return out;
}

}  // namespace

CharSeries exp_series(const Rational& c, int y_order, int q_order) {
  return CharSeries::from_rationals(SeriesKind::exp, exp_coefficients(c, y_order), q_order);
}

CharSeries ahat_series(int y_order, int q_order) {
  const Rational half(1, 2);
  return reciprocal(CharSeries::from_rationals(SeriesKind::custom, sinhc_coefficients(half, y_order), q_order))
      .with_kind(SeriesKind::ahat);
}

CharSeries lgenus_series(int y_order, int q_order) {
  const Rational one(1);
  const CharSeries c = CharSeries::from_rationals(SeriesKind::custom, cosh_coefficients(one, y_order), q_order);
  const CharSeries s = CharSeries::from_rationals(SeriesKind::custom, sinhc_coefficients(one, y_order), q_order);
  return (c * reciprocal(s)).with_kind(SeriesKind::lgenus);
}

CharSeries lhat_series(int y_order, int q_order) {
  const Rational half(1, 2);
  const CharSeries c = CharSeries::from_rationals(SeriesKind::custom, cosh_coefficients(half, y_order), q_order);
  const CharSeries s = CharSeries::from_rationals(SeriesKind::custom, sinhc_coefficients(half, y_order), q_order);
  return (c * reciprocal(s)).with_kind(SeriesKind::lhat);
}

CharSeries witten_series(int y_order, int q_order) {
  CharSeries result = ahat_series(y_order, q_order);
  for (int j = 1; j <= q_order; ++j) {
    // Denominator (1 - q^{2j} e^y)(1 - q^{2j} e^{-y}) = 1 + q^{4j} - 2 q^{2j} cosh y.
    const std::vector<Rational> ch = cosh_coefficients(1, y_order);
    std::vector<QSeries> den(static_cast<std::size_t>(y_order) + 1, QSeries(q_order));
    for (int k = 0; k <= y_order; k += 2) {
      std::vector<Rational> c(static_cast<std::size_t>(q_order) + 1);
      c[j] = -2 * ch[k];
      if (k == 0) {
        c[0] = 1;
        if (2 * j <= q_order) c[2 * j] += 1;
      }
      den[k] = QSeries(std::move(c));
    }
    std::vector<Rational> num(static_cast<std::size_t>(q_order) + 1);
    num[0] = 1;
    num[j] -= 2;
    if (2 * j <= q_order) num[2 * j] += 1;
    std::vector<QSeries> numerator(static_cast<std::size_t>(y_order) + 1, QSeries(q_order));
    numerator[0] = QSeries(std::move(num));
    result = result * (CharSeries(SeriesKind::custom, std::move(numerator)) *
                       reciprocal(CharSeries(SeriesKind::custom, std::move(den))));
  }
  return result.with_kind(SeriesKind::witten);
}

MSeries substitute_linear(const CharSeries& f, const LinearForm& form, const std::vector<int>& shape) {
  MSeries probe(shape, 0);
  const int needed = probe.max_degree();
  if (f.y_order() < needed) {
    throw InsufficientOrderError("series known to y^" + std::to_string(f.y_order()) + " but degree " +
                                 std::to_string(needed) + " is required");
  }
  if (form.size() != shape.size()) throw ShapeError("linear form has wrong number of variables");
  MSeries acc = MSeries::constant(shape, f[needed]);
  for (int k = needed - 1; k >= 0; --k) {
    acc = multiply_by_linear(acc, form);
    acc.flat(0) += f[k];
  }
  return acc;
}

// ------------------------------------------------------------ theta products

namespace {

using Laurent = std::map<int, std::vector<Integer>>;

// poly *= (1 + sign * w^w_exp * q^q_exp), truncated at q^q_order.
void multiply_factor(Laurent& poly, int sign, int w_exp, int q_exp, int q_order) {
  Laurent out = poly;
  for (const auto& [e, coeffs] : poly) {
    auto& dst = out[e + w_exp];
    dst.resize(static_cast<std::size_t>(q_order) + 1);
    for (int k = 0; k + q_exp <= q_order; ++k) {
      if (sgn(coeffs[k]) == 0) continue;
      dst[k + q_exp] += sign * coeffs[k];
    }
  }
  poly = std::move(out);
}

}  // namespace

ThetaExpansion theta_qexp(ThetaKind kind, int w_order, int k_terms) {
  ThetaExpansion out;
  out.kind = kind;
  out.q_order = 2 * k_terms;
  out.w_order = w_order;
  const int q_order = out.q_order;
  Laurent poly;
  poly[0].assign(static_cast<std::size_t>(q_order) + 1, Integer(0));
  poly[0][0] = 1;
  const bool odd_powers = kind == ThetaKind::theta2 || kind == ThetaKind::theta3;
  const int sign = (kind == ThetaKind::theta || kind == ThetaKind::theta2) ? -1 : 1;
  for (int j = 1; j <= k_terms; ++j) {
    const int p = odd_powers ? 2 * j - 1 : 2 * j;
    multiply_factor(poly, -1, 0, 2 * j, q_order);
    multiply_factor(poly, sign, 1, p, q_order);
    multiply_factor(poly, sign, -1, p, q_order);
  }
  for (auto& [e, coeffs] : poly) {
    if (std::abs(e) > w_order) continue;
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return sgn(c) == 0; })) continue;
    out.terms.emplace(e, std::move(coeffs));
  }
  if (kind == ThetaKind::theta) out.half_prefactor = ThetaExpansion::Prefactor::sine;
  if (kind == ThetaKind::theta1) out.half_prefactor = ThetaExpansion::Prefactor::cosine;
  out.quarter_power_of_q = kind == ThetaKind::theta || kind == ThetaKind::theta1;
  return out;
}

std::vector<Integer> ThetaExpansion::product_at_w_one() const {
  std::vector<Integer> sum(static_cast<std::size_t>(q_order) + 1, Integer(0));
  for (const auto& [e, coeffs] : terms) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) sum[k] += coeffs[k];
  }
  return sum;
}

std::vector<Integer> ThetaExpansion::value_at_w_one() const {
  std::vector<Integer> p = product_at_w_one();
  switch (half_prefactor) {
    case Prefactor::sine:
      std::fill(p.begin(), p.end(), Integer(0));
      break;
    case Prefactor::cosine:
      for (auto& c : p) c *= 2;
      break;
    case Prefactor::none:
      break;
  }
  return p;
}

}  // namespace stringci
