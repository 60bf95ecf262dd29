#include <doctest.h>

#include "stringci/char_series.hpp"
#include "support/brute.hpp"

using namespace stringci;

namespace {

bool equals_brute(const CharSeries& f, const brute::Bi& b) {
  if (f.y_order() != b.Y || f.q_order() != b.K) return false;
  for (int k = 0; k <= b.Y; ++k)
    for (int n = 0; n <= b.K; ++n)
      if (f[k][n] != b.c[k][n]) return false;
  return true;
}

std::vector<Integer> ints(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

// prod_{j<=k} (1 - q^{2j}) (1 + s q^{2j-1})^2 in full powers of q.
std::vector<Integer> theta_null(int k, int s) {
  std::vector<Integer> p(static_cast<std::size_t>(2 * k) + 1, 0);
  p[0] = 1;
  auto times = [&](int power, long c) {
    for (int i = 2 * k; i >= power; --i) p[i] += c * p[i - power];
  };
  for (int j = 1; j <= k; ++j) {
    times(2 * j, -1);
    times(2 * j - 1, s);
    times(2 * j - 1, s);
  }
  return p;
}

}  // namespace

TEST_CASE("ahat series values") {
  const auto a = ahat_series(6);
  CHECK(a[0][0] == 1);
  CHECK(a[2][0] == Rational(-1, 24));
  CHECK(a[4][0] == Rational(7, 5760));
  CHECK(a[6][0] == Rational(-31, 967680));
  CHECK(a.is_even());
  CHECK(equals_brute(a, brute::ahat(6)));
}

TEST_CASE("L series values") {
  const auto l = lgenus_series(6);
  CHECK(l[0][0] == 1);
  CHECK(l[2][0] == Rational(1, 3));
  CHECK(l[4][0] == Rational(-1, 45));
  CHECK(l[6][0] == Rational(2, 945));
  CHECK(l.is_even());
  CHECK(equals_brute(l, brute::lgenus(6)));
  CHECK(equals_brute(lhat_series(8), brute::lhat(8)));
}

TEST_CASE("witten series low coefficients") {
  const auto w = witten_series(4, 4);
  CHECK(w[0] == QSeries::constant(1, 4));
  // -1/24 + sum_N sigma(N) q^{2N}
  const std::vector<Rational> y2 = {Rational(-1, 24), 1, 3, 4, 7};
  CHECK(w[2] == QSeries(y2));
  CHECK(w.is_even());
}

TEST_CASE("witten series at q = 0 is the ahat series") {
  CHECK(witten_series(10, 0) == ahat_series(10).with_kind(SeriesKind::witten));
  const auto w = witten_series(10, 5);
  CHECK(w.at_q_zero() == ahat_series(10, 5).with_kind(SeriesKind::witten));
}

TEST_CASE("witten series against the Eisenstein exponent") {
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(equals_brute(witten_series(8, k), brute::witten_eisenstein(8, k)));
  }
}

TEST_CASE("witten series against symmetric powers") {
  for (int k = 0; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(equals_brute(witten_series(6, k), brute::witten_symmetric_powers(6, k)));
  }
}

TEST_CASE("reciprocal and power") {
  const auto w = witten_series(8, 3);
  const auto r = reciprocal(w);
  CHECK(r.is_even());
  CHECK(r[0] == QSeries::constant(1, 3));
  const auto unit = w * r;
  for (int k = 1; k <= 8; ++k) CHECK(unit[k].is_zero());
  CHECK(power(w, 3) == (w * w * w).with_kind(w.kind()));
  CHECK(power(w, 0)[0] == QSeries::constant(1, 3));
}

TEST_CASE("times_y shifts coefficients") {
  const auto e = exp_series(1, 3);
  const auto ye = times_y(e);
  CHECK(ye.y_order() == 4);
  CHECK(ye[0].is_zero());
  CHECK(ye[3][0] == Rational(1, 2));
}

TEST_CASE("theta expansions") {
  const auto t = theta_qexp(ThetaKind::theta, 3, 3);
  CHECK(t.half_prefactor == ThetaExpansion::Prefactor::sine);
  CHECK(t.quarter_power_of_q);
  for (const auto& c : t.value_at_w_one()) CHECK(c == 0);

  const auto t3 = theta_qexp(ThetaKind::theta3, 8, 4);
  CHECK(t3.half_prefactor == ThetaExpansion::Prefactor::none);
  CHECK(t3.value_at_w_one() == theta_null(4, 1));

  const auto t2 = theta_qexp(ThetaKind::theta2, 8, 4);
  CHECK(t2.value_at_w_one() == theta_null(4, -1));

  // Jacobi triple product: theta3(0) = 1 + 2q + 2q^4 + 2q^9 + ...
  const auto jt = theta_qexp(ThetaKind::theta3, 12, 6).value_at_w_one();
  CHECK(std::vector<Integer>(jt.begin(), jt.begin() + 10) == ints({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}));

  // theta1(0) / q^{1/4} = 2 (1 + q^2 + q^6 + q^12 + ...)
  const auto t1 = theta_qexp(ThetaKind::theta1, 14, 7).value_at_w_one();
  CHECK(std::vector<Integer>(t1.begin(), t1.begin() + 13) == ints({2, 0, 2, 0, 0, 0, 2, 0, 0, 0, 0, 0, 2}));
}
