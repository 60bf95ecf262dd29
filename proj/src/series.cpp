#include "stringci/series.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "stringci/errors.hpp"

namespace stringci {

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(int order) : coeffs_(static_cast<std::size_t>(std::max(order, 0)) + 1) {}

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

QSeries QSeries::constant(const Rational& c, int order) {
  QSeries out(order);
  out.coeffs_[0] = c;
  return out;
}

bool QSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

QSeries QSeries::truncated(int order) const {
  if (order >= this->order()) return *this;
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  for (auto& a : coeffs_) a *= c;
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries out(*this);
  for (auto& a : out.coeffs_) a = -a;
  return out;
}

void QSeries::add_product(QSeries& acc, const QSeries& a, const QSeries& b) {
  const int k = std::min({acc.order(), a.order(), b.order()});
  acc.coeffs_.resize(static_cast<std::size_t>(k) + 1);
  Rational tmp;
  for (int i = 0; i <= k; ++i) {
    const Rational& ai = a.coeffs_[i];
    if (sgn(ai) == 0) continue;
    for (int j = 0; i + j <= k; ++j) {
      const Rational& bj = b.coeffs_[j];
      if (sgn(bj) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
      acc.coeffs_[i + j] += tmp;
    }
  }
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries out(std::min(a.order(), b.order()));
  QSeries::add_product(out, a, b);
  return out;
}

std::complex<double> QSeries::evaluate(std::complex<double> q) const {
  const std::complex<double> q2 = q * q;
  std::complex<double> sum = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) sum = sum * q2 + it->get_d();
  return sum;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int n = 0; n <= order(); ++n) {
    const Rational& c = coeffs_[n];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rational mag = abs(c);
    if (n == 0 || mag != 1) os << mag.get_str();
    if (n > 0) os << (n == 0 || mag != 1 ? " " : "") << "q^" << 2 * n;
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^" << 2 * (order() + 1) << ")";
  return os.str();
}

QSeries inverse(const QSeries& a) {
  if (sgn(a[0]) == 0) throw NonInvertibleError("q-series with zero constant term is not invertible");
  const int k = a.order();
  std::vector<Rational> b(static_cast<std::size_t>(k) + 1);
  const Rational inv0 = 1 / a[0];
  b[0] = inv0;
  for (int n = 1; n <= k; ++n) {
    Rational acc = 0;
    for (int i = 1; i <= n; ++i) acc += a[i] * b[n - i];
    b[n] = -acc * inv0;
  }
  return QSeries(std::move(b));
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c == 0; });
}

// ---------------------------------------------------------------- MSeries

namespace {

std::size_t product_of(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int len : shape) {
    if (len < 1) throw ShapeError("every truncation length must be at least 1");
    n *= static_cast<std::size_t>(len);
  }
  return n;
}

}  // namespace

MSeries::MSeries(std::vector<int> shape, int q_order)
    : shape_(std::move(shape)), q_order_(q_order), coeffs_(product_of(shape_), QSeries(q_order)) {
  strides_.resize(shape_.size());
  std::size_t stride = 1;
  for (std::size_t q = shape_.size(); q-- > 0;) {
    strides_[q] = stride;
    stride *= static_cast<std::size_t>(shape_[q]);
  }
}

MSeries MSeries::one(std::vector<int> shape, int q_order) {
  return constant(std::move(shape), QSeries::constant(1, q_order));
}

MSeries MSeries::constant(std::vector<int> shape, const QSeries& c) {
  MSeries out(std::move(shape), c.order());
  out.coeffs_[0] = c;
  return out;
}

MSeries MSeries::variable(std::vector<int> shape, int q_order, std::size_t index) {
  LinearForm form{std::vector<long>(shape.size(), 0)};
  if (index >= form.size()) throw RangeError("variable index out of range");
  form.coeffs[index] = 1;
  return linear(std::move(shape), q_order, form);
}

MSeries MSeries::linear(std::vector<int> shape, int q_order, const LinearForm& form) {
  if (form.size() != shape.size()) throw ShapeError("linear form has wrong number of variables");
  MSeries out(std::move(shape), q_order);
  for (std::size_t q = 0; q < form.size(); ++q) {
    if (form.coeffs[q] == 0 || out.shape_[q] < 2) continue;
    out.coeffs_[out.strides_[q]] = QSeries::constant(form.coeffs[q], q_order);
  }
  return out;
}

int MSeries::max_degree() const {
  int d = 0;
  for (int len : shape_) d += len - 1;
  return d;
}

std::size_t MSeries::flat_index(std::span<const int> exponents) const {
  if (exponents.size() != shape_.size()) throw RangeError("exponent vector has wrong length");
  std::size_t idx = 0;
  for (std::size_t q = 0; q < shape_.size(); ++q) {
    if (exponents[q] < 0 || exponents[q] >= shape_[q]) {
      throw RangeError("exponent " + std::to_string(exponents[q]) + " of x_" + std::to_string(q + 1) +
                       " outside [0, " + std::to_string(shape_[q] - 1) + "]");
    }
    idx += strides_[q] * static_cast<std::size_t>(exponents[q]);
  }
  return idx;
}

std::vector<int> MSeries::exponents_of(std::size_t flat_index) const {
  std::vector<int> e(shape_.size());
  for (std::size_t q = 0; q < shape_.size(); ++q) {
    e[q] = static_cast<int>(flat_index / strides_[q]);
    flat_index %= strides_[q];
  }
  return e;
}

const QSeries& MSeries::coefficient_at(std::span<const int> exponents) const {
  return coeffs_[flat_index(exponents)];
}

QSeries& MSeries::at(std::span<const int> exponents) { return coeffs_[flat_index(exponents)]; }

bool MSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QSeries& c) { return c.is_zero(); });
}

bool MSeries::is_one() const {
  if (coeffs_[0] != QSeries::constant(1, q_order_)) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const QSeries& c) { return c.is_zero(); });
}

void MSeries::require_same_shape(const MSeries& other, const char* op) const {
  if (shape_ != other.shape_) throw ShapeError(std::string("shape mismatch in ") + op);
}

MSeries& MSeries::operator+=(const MSeries& rhs) {
  require_same_shape(rhs, "addition");
  q_order_ = std::min(q_order_, rhs.q_order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

MSeries& MSeries::operator-=(const MSeries& rhs) {
  require_same_shape(rhs, "subtraction");
  q_order_ = std::min(q_order_, rhs.q_order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

MSeries& MSeries::operator*=(const Rational& c) {
  for (auto& a : coeffs_) a *= c;
  return *this;
}

namespace {

struct Support {
  std::vector<std::size_t> index;
  std::vector<std::vector<int>> exps;
};

Support support_of(const MSeries& a) {
  Support s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.flat(i).is_zero()) continue;
    s.index.push_back(i);
    s.exps.push_back(a.exponents_of(i));
  }
  return s;
}

bool fits(const std::vector<int>& shape, const std::vector<int>& e, const std::vector<int>& f) {
  for (std::size_t q = 0; q < shape.size(); ++q) {
    if (e[q] + f[q] >= shape[q]) return false;
  }
  return true;
}

}  // namespace

MSeries operator*(const MSeries& a, const MSeries& b) {
  a.require_same_shape(b, "multiplication");
  MSeries out(a.shape_, std::min(a.q_order_, b.q_order_));
  const Support sa = support_of(a);
  const Support sb = support_of(b);
  for (std::size_t i = 0; i < sa.index.size(); ++i) {
    for (std::size_t j = 0; j < sb.index.size(); ++j) {
      if (!fits(a.shape_, sa.exps[i], sb.exps[j])) continue;
      // Flat indices add when no exponent overflows.
      QSeries::add_product(out.coeffs_[sa.index[i] + sb.index[j]], a.coeffs_[sa.index[i]], b.coeffs_[sb.index[j]]);
    }
  }
  return out;
}

MSeries multiply_by_linear(const MSeries& a, const LinearForm& form) {
  if (form.size() != a.shape().size()) throw ShapeError("linear form has wrong number of variables");
  MSeries out(a.shape(), a.q_order());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const QSeries& c = a.flat(i);
    if (c.is_zero()) continue;
    const std::vector<int> e = a.exponents_of(i);
    std::vector<int> f = e;
    for (std::size_t q = 0; q < form.size(); ++q) {
      if (form.coeffs[q] == 0 || e[q] + 1 >= a.shape()[q]) continue;
      f[q] = e[q] + 1;
      out.at(f) += c * Rational(form.coeffs[q]);
      f[q] = e[q];
    }
  }
  return out;
}

QSeries product_coefficient(const MSeries& a, const MSeries& b, std::span<const int> exponents) {
  if (a.shape() != b.shape()) throw ShapeError("shape mismatch in product_coefficient");
  // Validates range.
  (void)a.coefficient_at(exponents);
  QSeries out(std::min(a.q_order(), b.q_order()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const QSeries& c = a.flat(i);
    if (c.is_zero()) continue;
    std::vector<int> e = a.exponents_of(i);
    bool ok = true;
    for (std::size_t q = 0; q < e.size(); ++q) {
      e[q] = exponents[q] - e[q];
      if (e[q] < 0) {
        ok = false;
        break;
      }
    }
    if (ok) QSeries::add_product(out, c, b.coefficient_at(e));
  }
  return out;
}

MSeries inverse(const MSeries& a) {
  const QSeries& c0 = a.flat(0);
  if (sgn(c0[0]) == 0) throw NonInvertibleError("constant coefficient is not an invertible q-series");
  const QSeries c0_inv = inverse(c0);
  // a = c0 (1 + u) with u in the augmentation ideal; 1/a = c0^{-1} sum_k (-u)^k.
  MSeries neg_u(a.shape(), a.q_order());
  for (std::size_t i = 1; i < a.size(); ++i) neg_u.flat(i) = -(a.flat(i) * c0_inv);
  MSeries sum = MSeries::one(a.shape(), a.q_order());
  MSeries power = sum;
  for (int k = 1; k <= a.max_degree(); ++k) {
    power = power * neg_u;
    if (power.is_zero()) break;
    sum += power;
  }
  for (std::size_t i = 0; i < sum.size(); ++i) sum.flat(i) = sum.flat(i) * c0_inv;
  return sum;
}

std::string MSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[i].to_string() << ")";
    const std::vector<int> e = exponents_of(i);
    for (std::size_t q = 0; q < e.size(); ++q) {
      if (e[q] == 0) continue;
      os << " x" << q + 1;
      if (e[q] > 1) os << "^" << e[q];
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace stringci
