#include "stringci/geometry.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "stringci/errors.hpp"

namespace stringci {

CompleteIntersection::CompleteIntersection(std::vector<int> n, std::vector<std::vector<long>> degrees)
    : n_(std::move(n)), degrees_(std::move(degrees)) {
  if (n_.empty()) throw InvalidInstanceError("at least one projective factor is required (s >= 1)");
  for (std::size_t q = 0; q < n_.size(); ++q) {
    if (n_[q] < 0) throw InvalidInstanceError("negative dimension n_" + std::to_string(q + 1));
  }
  for (std::size_t p = 0; p < degrees_.size(); ++p) {
    if (degrees_[p].size() != n_.size()) {
      throw InvalidInstanceError("row p=" + std::to_string(p + 1) + " has " + std::to_string(degrees_[p].size()) +
                                 " entries, expected s=" + std::to_string(n_.size()));
    }
    if (row(p).is_zero()) throw InvalidInstanceError("degenerate divisor: zero row p=" + std::to_string(p + 1));
  }
  complex_dim_ = std::accumulate(n_.begin(), n_.end(), 0) - static_cast<int>(degrees_.size());
  if (complex_dim_ < 0) {
    throw InvalidInstanceError("negative complex dimension " + std::to_string(complex_dim_) + " (more divisors than ambient dimension)");
  }
}

int CompleteIntersection::nonzero_in_column(std::size_t q) const {
  int m = 0;
  for (const auto& r : degrees_) m += r[q] != 0;
  return m;
}

LinearForm CompleteIntersection::row(std::size_t p) const { return LinearForm{degrees_[p]}; }

std::vector<int> CompleteIntersection::shape() const {
  std::vector<int> shape(n_.size());
  for (std::size_t q = 0; q < n_.size(); ++q) shape[q] = n_[q] + 1;
  return shape;
}

std::string CompleteIntersection::to_string() const {
  std::ostringstream os;
  os << "n=(";
  for (std::size_t q = 0; q < n_.size(); ++q) os << (q ? "," : "") << n_[q];
  os << ") D=[";
  for (std::size_t p = 0; p < degrees_.size(); ++p) {
    os << (p ? "," : "") << "(";
    for (std::size_t q = 0; q < n_.size(); ++q) os << (q ? "," : "") << degrees_[p][q];
    os << ")";
  }
  os << "]";
  return os.str();
}

namespace {

int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

}  // namespace

bool LowStiefelWhitney::w2_zero() const {
  for (int c : w2) {
    if (c != 0) return false;
  }
  return w1 == 0;
}

LowStiefelWhitney stiefel_whitney_low(const CompleteIntersection& ci) {
  LowStiefelWhitney out;
  out.w2.resize(ci.s());
  for (std::size_t q = 0; q < ci.s(); ++q) {
    long c = ci.n()[q] + 1;
    for (const auto& r : ci.degrees()) c -= r[q];
    out.w2[q] = mod2(c);
  }
  return out;
}

MSeries p1_ambient(const CompleteIntersection& ci) {
  const std::vector<int> shape = ci.shape();
  MSeries out(shape, 0);
  std::vector<int> e(ci.s(), 0);
  for (std::size_t u = 0; u < ci.s(); ++u) {
    for (std::size_t v = u; v < ci.s(); ++v) {
      long c = 0;
      for (const auto& r : ci.degrees()) c += r[u] * r[v];
      Rational coeff = u == v ? Rational(ci.n()[u] + 1 - c) : Rational(-2 * c);
      std::fill(e.begin(), e.end(), 0);
      e[u] += 1;
      e[v] += 1;
      if (e[u] >= shape[u] || e[v] >= shape[v]) continue;
      out.at(e) = QSeries::constant(coeff, 0);
    }
  }
  return out;
}

StringCertificate is_string(const CompleteIntersection& ci) {
  StringCertificate cert;
  cert.lefschetz_ok = true;
  for (std::size_t q = 0; q < ci.s(); ++q) {
    if (ci.nonzero_in_column(q) + 2 > ci.n()[q]) cert.lefschetz_ok = false;
  }

  cert.matrix_criterion_ok = true;
  for (std::size_t u = 0; u < ci.s(); ++u) {
    for (std::size_t v = 0; v < ci.s(); ++v) {
      long gram = 0;
      for (const auto& r : ci.degrees()) gram += r[u] * r[v];
      const long target = u == v ? ci.n()[u] + 1 : 0;
      if (gram != target) cert.matrix_criterion_ok = false;
    }
  }

  MSeries pushed = p1_ambient(ci);
  for (std::size_t p = 0; p < ci.t(); ++p) pushed = multiply_by_linear(pushed, ci.row(p));
  cert.pushforward_p1_zero = pushed.is_zero();

  // n_q+1 - sum d^2 and n_q+1 - sum d agree mod 2 since d^2 = d mod 2.
  for (std::size_t q = 0; q < ci.s(); ++q) {
    long squares = 0;
    long plain = 0;
    for (const auto& r : ci.degrees()) {
      squares += r[q] * r[q];
      plain += r[q];
    }
    if (mod2(squares) != mod2(plain)) throw std::logic_error("parity relation violated");
  }
  cert.w2_zero_mod2 = stiefel_whitney_low(ci).w2_zero();
  cert.is_string = cert.matrix_criterion_ok;
  return cert;
}

const char* to_string(GenusKind kind) {
  switch (kind) {
    case GenusKind::witten: return "witten";
    case GenusKind::ahat: return "ahat";
    case GenusKind::lgenus: return "lgenus";
    case GenusKind::ahat_twisted: return "ahat_twisted";
    case GenusKind::lgenus_twisted: return "lgenus_twisted";
    case GenusKind::euler: return "euler";
    case GenusKind::custom: return "custom";
  }
  return "unknown";
}

namespace {

int total_degree(const CompleteIntersection& ci) { return std::accumulate(ci.n().begin(), ci.n().end(), 0); }

void require_usable(const CompleteIntersection& ci, const CharSeries& q_series) {
  const int needed = total_degree(ci);
  if (q_series.y_order() < needed) {
    throw InsufficientOrderError("characteristic series known to y^" + std::to_string(q_series.y_order()) +
                                 " but the ambient top degree is " + std::to_string(needed));
  }
  if (q_series[0] != QSeries::constant(1, q_series.q_order())) {
    throw PreconditionError("characteristic series must satisfy Q(0) = 1");
  }
}

// prod_q F_q(x_q) for univariate F_q; the product of separable factors is an
// outer product of coefficient vectors.
MSeries separable_product(const std::vector<CharSeries>& factors, const std::vector<int>& shape, int q_order) {
  MSeries out(shape, q_order);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::vector<int> e = out.exponents_of(i);
    QSeries c = QSeries::constant(1, q_order);
    for (std::size_t q = 0; q < e.size(); ++q) {
      c = c * factors[q][e[q]];
      if (c.is_zero()) break;
    }
    out.flat(i) = std::move(c);
  }
  return out;
}

// Coefficient of x^top in base * prod(factors); the last multiplication only
// computes the one coefficient that is needed.
QSeries top_coefficient(MSeries base, const std::vector<MSeries>& factors, const std::vector<int>& top) {
  if (factors.empty()) return base.coefficient_at(top);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) base = base * factors[i];
  return product_coefficient(base, factors.back(), top);
}

// prod_q Q(x_q)^{n_q+1} in the ambient ring.
MSeries ambient_factor(const CompleteIntersection& ci, const CharSeries& q_series) {
  std::vector<CharSeries> per_variable;
  for (std::size_t q = 0; q < ci.s(); ++q) {
    per_variable.push_back(power(q_series.truncated(ci.n()[q]), ci.n()[q] + 1));
  }
  return separable_product(per_variable, ci.shape(), q_series.q_order());
}

// l_p / Q(l_p) for every divisor.
std::vector<MSeries> divisor_factors(const CompleteIntersection& ci, const CharSeries& q_series) {
  const CharSeries y_over_q = times_y(reciprocal(q_series.truncated(total_degree(ci))));
  std::vector<MSeries> out;
  out.reserve(ci.t());
  for (std::size_t p = 0; p < ci.t(); ++p) out.push_back(substitute_linear(y_over_q, ci.row(p), ci.shape()));
  return out;
}

GenusKind plain_kind(SeriesKind k) {
  switch (k) {
    case SeriesKind::witten: return GenusKind::witten;
    case SeriesKind::ahat: return GenusKind::ahat;
    case SeriesKind::lgenus: return GenusKind::lgenus;
    default: return GenusKind::custom;
  }
}

QSeries twisted_value(const CompleteIntersection& ci, const CharSeries& q_series) {
  MSeries base = ambient_factor(ci, q_series) * chern_character_complexified_tangent(ci, q_series.q_order());
  return top_coefficient(std::move(base), divisor_factors(ci, q_series), ci.top());
}

}  // namespace

GenusReport genus(const CompleteIntersection& ci, const CharSeries& q_series) {
  require_usable(ci, q_series);
  QSeries value = top_coefficient(ambient_factor(ci, q_series), divisor_factors(ci, q_series), ci.top());
  return GenusReport{plain_kind(q_series.kind()), std::move(value), ci.complex_dim(), ci.real_dim(), is_string(ci)};
}

MSeries chern_character_complexified_tangent(const CompleteIntersection& ci, int q_order) {
  const std::vector<int> shape = ci.shape();
  const int degree = total_degree(ci);
  std::vector<Rational> two_cosh(static_cast<std::size_t>(degree) + 1, Rational(0));
  Rational fact = 1;
  for (int k = 0; k <= degree; ++k) {
    if (k > 0) fact *= k;
    if (k % 2 == 0) two_cosh[k] = 2 / fact;
  }
  const CharSeries f = CharSeries::from_rationals(SeriesKind::custom, two_cosh, q_order);
  MSeries ch = MSeries::constant(shape, QSeries::constant(-2 * static_cast<long>(ci.s()), q_order));
  for (std::size_t q = 0; q < ci.s(); ++q) {
    LinearForm e{std::vector<long>(ci.s(), 0)};
    e.coeffs[q] = 1;
    MSeries term = substitute_linear(f, e, shape);
    term *= Rational(ci.n()[q] + 1);
    ch += term;
  }
  for (std::size_t p = 0; p < ci.t(); ++p) ch -= substitute_linear(f, ci.row(p), shape);
  return ch;
}

GenusReport twisted_genus(const CompleteIntersection& ci, const CharSeries& q_series) {
  require_usable(ci, q_series);
  GenusKind kind = GenusKind::custom;
  QSeries value(q_series.q_order());
  if (q_series.kind() == SeriesKind::lgenus) {
    // The signature operator pairs with prod x/tanh(x/2) = 2^dim * Lhat, and
    // ch(E) is not homogeneous, so the y/tanh(y) rescaling trick is not valid here.
    kind = GenusKind::lgenus_twisted;
    value = twisted_value(ci, lhat_series(q_series.y_order(), q_series.q_order()));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(ci.complex_dim()));
    value *= Rational(scale);
  } else {
    if (q_series.kind() == SeriesKind::ahat) kind = GenusKind::ahat_twisted;
    value = twisted_value(ci, q_series);
  }
  return GenusReport{kind, std::move(value), ci.complex_dim(), ci.real_dim(), is_string(ci)};
}

Integer euler_characteristic(const CompleteIntersection& ci) {
  const std::vector<int> shape = ci.shape();
  const int degree = total_degree(ci);
  std::vector<Rational> total_chern(static_cast<std::size_t>(degree) + 1, Rational(0));
  total_chern[0] = 1;
  if (degree >= 1) total_chern[1] = 1;
  const CharSeries c = CharSeries::from_rationals(SeriesKind::custom, total_chern, 0);

  std::vector<MSeries> factors;
  for (std::size_t p = 0; p < ci.t(); ++p) {
    MSeries one_plus = MSeries::one(shape, 0) + MSeries::linear(shape, 0, ci.row(p));
    factors.push_back(multiply_by_linear(inverse(one_plus), ci.row(p)));
  }
  const QSeries value = top_coefficient(ambient_factor(ci, c), factors, ci.top());
  const Rational& v = value[0];
  if (v.get_den() != 1) throw std::logic_error("Euler characteristic is not an integer");
  return v.get_num();
}

CorollaryReport corollary_identities(const CompleteIntersection& ci) {
  const int d = ci.real_dim();
  if (d != 12 && d != 16) {
    throw PreconditionError("corollary identities need real dimension 12 or 16, got " + std::to_string(d));
  }
  const int y_order = total_degree(ci);
  CorollaryReport r;
  r.real_dim = d;
  const CharSeries ahat = ahat_series(y_order);
  r.ahat = genus(ci, ahat).value[0];
  r.ahat_twisted = twisted_genus(ci, ahat).value[0];
  if (d == 12) {
    r.lhs = genus(ci, lgenus_series(y_order)).value[0];
    r.rhs = 8 * r.ahat_twisted - 32 * r.ahat;
  } else {
    r.lhs = twisted_genus(ci, lgenus_series(y_order)).value[0];
    r.rhs = -2048 * (r.ahat_twisted - 48 * r.ahat);
  }
  r.difference = r.lhs - r.rhs;
  return r;
}

}  // namespace stringci
