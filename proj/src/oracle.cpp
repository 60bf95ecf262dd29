#include "stringci/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "stringci/errors.hpp"

namespace stringci::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

double relative_residual(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace

ThetaParams ThetaParams::from_tau(Complex tau) {
  if (!(tau.imag() > 0.0)) throw PreconditionError("tau must lie in the upper half plane");
  const double abs_q = std::exp(-kPi * tau.imag());
  // |q|^{2J} < 1e-16
  const int terms = static_cast<int>(std::ceil(16.0 * std::log(10.0) / (-2.0 * std::log(abs_q)))) + 1;
  return ThetaParams{tau, std::max(terms, 1)};
}

ThetaParams ThetaParams::from_q(Complex q) {
  const double r = std::abs(q);
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("theta evaluation needs 0 < |q| < 1");
  return from_tau(std::log(q) / (kPi * kI));
}

Complex ThetaParams::q() const { return std::exp(kPi * kI * tau); }

Complex ThetaParams::q_quarter() const { return std::exp(kPi * kI * tau / 4.0); }

Complex theta_eval(ThetaKind kind, Complex v, const ThetaParams& params) {
  const Complex q = params.q();
  const Complex q2 = q * q;
  const Complex w = std::exp(kTwoPiI * v);
  const Complex w_inv = 1.0 / w;
  // Factors (1 -+ w^{+-1} q^{2j}) only settle once |q|^{2j} beats max(|w|, 1/|w|).
  const double spread = std::abs(std::log(std::abs(w)));
  const int extra = static_cast<int>(std::ceil(spread / (-2.0 * std::log(std::abs(q))))) + 1;
  const int terms = params.product_terms + extra;

  const bool odd_powers = kind == ThetaKind::theta2 || kind == ThetaKind::theta3;
  const double sign = (kind == ThetaKind::theta || kind == ThetaKind::theta2) ? -1.0 : 1.0;
  Complex prod = 1.0;
  Complex q_even = 1.0;  // q^{2j}
  for (int j = 1; j <= terms; ++j) {
    const Complex q_prev = q_even;  // q^{2j-2}
    q_even *= q2;
    const Complex qp = odd_powers ? q_prev * q : q_even;
    prod *= (1.0 - q_even) * (1.0 + sign * w * qp) * (1.0 + sign * w_inv * qp);
  }
  switch (kind) {
    case ThetaKind::theta: return 2.0 * params.q_quarter() * std::sin(kPi * v) * prod;
    case ThetaKind::theta1: return 2.0 * params.q_quarter() * std::cos(kPi * v) * prod;
    default: return prod;
  }
}

Complex theta_prime_zero(const ThetaParams& params) {
  const Complex q2 = params.q() * params.q();
  Complex prod = 1.0;
  Complex q_even = 1.0;
  for (int j = 1; j <= params.product_terms; ++j) {
    q_even *= q2;
    const Complex f = 1.0 - q_even;
    prod *= f * f * f;
  }
  return 2.0 * kPi * params.q_quarter() * prod;
}

double lattice_law_residual(ThetaKind kind, Complex v, int m, int n, const ThetaParams& params) {
  const Complex tau = params.tau;
  const Complex lhs = theta_eval(kind, v + static_cast<double>(m) + static_cast<double>(n) * tau, params);
  Complex mult = std::exp(-kTwoPiI * static_cast<double>(n) * v - kPi * kI * static_cast<double>(n * n) * tau);
  const bool m_sign = kind == ThetaKind::theta || kind == ThetaKind::theta1;
  const bool n_sign = kind == ThetaKind::theta || kind == ThetaKind::theta2;
  if (m_sign && (m & 1)) mult = -mult;
  if (n_sign && (n & 1)) mult = -mult;
  return relative_residual(lhs, mult * theta_eval(kind, v, params));
}

namespace {

// Coordinates (a, b) with v = a + b tau.
std::pair<double, double> lattice_coords(Complex v, Complex tau) {
  const double b = v.imag() / tau.imag();
  const double a = v.real() - b * tau.real();
  return {a, b};
}

// Distance, in lattice coordinates, from v to the nearest point of
// offset + lattice.
double lattice_distance(Complex v, Complex tau, double off_a = 0.0, double off_b = 0.0) {
  auto [a, b] = lattice_coords(v, tau);
  a -= off_a;
  b -= off_b;
  const double da = std::abs(a - std::round(a));
  const double db = std::abs(b - std::round(b));
  return std::max(da, db);
}

}  // namespace

LawReport check_lattice_laws(const ThetaParams& params, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  LawReport report;
  int done = 0;
  while (done < trials) {
    const Complex v = unit(rng) + unit(rng) * params.tau;
    // Stay clear of the zeros of all four functions (the half-period lattice).
    if (lattice_distance(v, params.tau) < 0.08 || lattice_distance(v, params.tau, 0.5, 0.0) < 0.08 ||
        lattice_distance(v, params.tau, 0.0, 0.5) < 0.08 || lattice_distance(v, params.tau, 0.5, 0.5) < 0.08) {
      continue;
    }
    ++done;
    for (ThetaKind kind : {ThetaKind::theta, ThetaKind::theta1, ThetaKind::theta2, ThetaKind::theta3}) {
      for (int m = -2; m <= 2; ++m) {
        for (int n = -2; n <= 2; ++n) {
          report.max_residual = std::max(report.max_residual, lattice_law_residual(kind, v, m, n, params));
          ++report.evaluations;
        }
      }
    }
  }
  return report;
}

namespace {

Complex linear_value(const std::vector<long>& row, const std::vector<Complex>& x) {
  Complex s = 0.0;
  for (std::size_t q = 0; q < row.size(); ++q) s += static_cast<double>(row[q]) * x[q];
  return s;
}

}  // namespace

Complex residue_integrand(const CompleteIntersection& ci, const std::vector<Complex>& x, const ThetaParams& params) {
  const Complex tp = theta_prime_zero(params);
  Complex value = 1.0;
  for (const auto& row : ci.degrees()) value *= theta_eval(ThetaKind::theta, linear_value(row, x), params) / tp;
  for (std::size_t q = 0; q < ci.s(); ++q) {
    value /= std::pow(theta_eval(ThetaKind::theta, x[q], params) / tp, ci.n()[q] + 1);
  }
  return value;
}

PeriodicityReport check_integrand_periodicity(const CompleteIntersection& ci, const ThetaParams& params, int trials,
                                              std::uint64_t seed, bool force) {
  if (!force && !is_string(ci).matrix_criterion_ok) {
    throw PreconditionError("integrand periodicity needs D^T D = diag(n_q + 1); " + ci.to_string() + " fails it");
  }
  const Complex tau = params.tau;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  PeriodicityReport report;
  int done = 0;
  std::vector<Complex> x(ci.s());
  while (done < trials) {
    for (auto& xq : x) xq = unit(rng) + unit(rng) * tau;
    bool clear = true;
    for (const auto& xq : x) clear = clear && lattice_distance(xq, tau) > 0.05;
    for (const auto& row : ci.degrees()) clear = clear && lattice_distance(linear_value(row, x), tau) > 0.05;
    if (!clear) continue;
    ++done;
    const Complex base = residue_integrand(ci, x, params);
    for (std::size_t q = 0; q < ci.s(); ++q) {
      for (int which = 0; which < 2; ++which) {
        std::vector<Complex> shifted = x;
        shifted[q] += which == 0 ? Complex(1.0) : tau;
        const double r = relative_residual(residue_integrand(ci, shifted, params), base);
        double& slot = which == 0 ? report.max_residual_unit_shift : report.max_residual_tau_shift;
        slot = std::max(slot, r);
        report.max_residual = std::max(report.max_residual, r);
        ++report.evaluations;
      }
    }
  }
  return report;
}

const char* to_string(NumericGenus kind) {
  switch (kind) {
    case NumericGenus::witten: return "witten";
    case NumericGenus::ahat: return "ahat";
    case NumericGenus::lgenus: return "lgenus";
  }
  return "unknown";
}

namespace {

// Q(y) and l / Q(l) for one genus at a fixed q.
class GenusFunctions {
 public:
  GenusFunctions(NumericGenus kind, Complex q) : kind_(kind) {
    if (kind_ == NumericGenus::witten && q == Complex(0.0)) kind_ = NumericGenus::ahat;
    if (kind_ == NumericGenus::witten) {
      params_ = ThetaParams::from_q(q);
      theta_prime_ = theta_prime_zero(params_);
    }
  }

  Complex q_of(Complex y) const {
    switch (kind_) {
      case NumericGenus::ahat: return (y / 2.0) / std::sinh(y / 2.0);
      case NumericGenus::lgenus: return y / std::tanh(y);
      case NumericGenus::witten: {
        const Complex v = y / kTwoPiI;
        return v * theta_prime_ / theta_eval(ThetaKind::theta, v, params_);
      }
    }
    return 0.0;
  }

  Complex y_over_q(Complex y) const {
    switch (kind_) {
      case NumericGenus::ahat: return 2.0 * std::sinh(y / 2.0);
      case NumericGenus::lgenus: return std::tanh(y);
      case NumericGenus::witten: return kTwoPiI * theta_eval(ThetaKind::theta, y / kTwoPiI, params_) / theta_prime_;
    }
    return 0.0;
  }

 private:
  NumericGenus kind_;
  ThetaParams params_{Complex(0.0, 1.0), 1};
  Complex theta_prime_ = 1.0;
};

double min_lattice_norm(Complex tau) {
  double best = 1.0;
  for (int m = -6; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) best = std::min(best, std::abs(static_cast<double>(m) + static_cast<double>(n) * tau));
  }
  return best;
}

double divisor_reach(const std::vector<long>& row, const std::vector<double>& radii) {
  double s = 0.0;
  for (std::size_t q = 0; q < row.size(); ++q) s += std::abs(static_cast<double>(row[q])) * radii[q];
  return s;
}

}  // namespace

double pole_distance(NumericGenus kind, Complex q) {
  switch (kind) {
    case NumericGenus::ahat: return 2.0 * kPi;
    case NumericGenus::lgenus: return kPi;
    case NumericGenus::witten:
      if (q == Complex(0.0)) return 2.0 * kPi;
      return 2.0 * kPi * min_lattice_norm(ThetaParams::from_q(q).tau);
  }
  return 0.0;
}

std::vector<double> default_radii(const CompleteIntersection& ci, NumericGenus kind, Complex q) {
  std::vector<double> radii(ci.s(), 0.5 * pole_distance(kind, q));
  // tanh(l) has poles at |l| = pi/2. For the Witten series 1/Q(l) is entire
  // but grows like exp(j |l|) q^{2j}, which aliases badly once |l| passes
  // the pole distance of Q itself.
  double max_reach = 0.0;
  if (kind == NumericGenus::lgenus) max_reach = kPi / 4.0;
  if (kind == NumericGenus::witten) max_reach = 0.5 * pole_distance(kind, q);
  if (max_reach > 0.0) {
    double reach = 0.0;
    for (const auto& row : ci.degrees()) reach = std::max(reach, divisor_reach(row, radii));
    if (reach > max_reach) {
      for (auto& r : radii) r *= max_reach / reach;
    }
  }
  return radii;
}

namespace {

struct Quadrature {
  Complex value;
  double scale;
};

Quadrature circle_coefficient(const CompleteIntersection& ci, const GenusFunctions& fns,
                              const std::vector<double>& radii, int samples) {
  const std::size_t s = ci.s();
  // Per-variable factor Q(y)^{n+1} e^{-i n phi} / r^n on the sample circle.
  std::vector<std::vector<Complex>> axis(s, std::vector<Complex>(static_cast<std::size_t>(samples)));
  std::vector<std::vector<Complex>> points(s, std::vector<Complex>(static_cast<std::size_t>(samples)));
  for (std::size_t q = 0; q < s; ++q) {
    const int n = ci.n()[q];
    for (int k = 0; k < samples; ++k) {
      const double phi = 2.0 * kPi * k / samples;
      const Complex y = std::polar(radii[q], phi);
      points[q][k] = y;
      axis[q][k] = std::pow(fns.q_of(y), n + 1) * std::polar(std::pow(radii[q], -n), -n * phi);
    }
  }
  std::vector<int> idx(s, 0);
  std::vector<Complex> y(s);
  Complex sum = 0.0;
  double scale = 0.0;
  std::size_t count = 0;
  while (true) {
    Complex term = 1.0;
    for (std::size_t q = 0; q < s; ++q) {
      term *= axis[q][idx[q]];
      y[q] = points[q][idx[q]];
    }
    for (const auto& row : ci.degrees()) term *= fns.y_over_q(linear_value(row, y));
    sum += term;
    scale = std::max(scale, std::abs(term));
    ++count;
    std::size_t q = 0;
    while (q < s && ++idx[q] == samples) idx[q++] = 0;
    if (q == s) break;
  }
  return {sum / static_cast<double>(count), scale};
}

void require_inside(const CompleteIntersection& ci, NumericGenus kind, Complex q, const std::vector<double>& radii) {
  const double limit = pole_distance(kind, q);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw PreconditionError("contour radii must be positive");
    if (radii[i] >= limit) {
      throw ConvergenceError("contour radius " + std::to_string(radii[i]) + " for y_" + std::to_string(i + 1) +
                             " reaches the nearest pole at distance " + std::to_string(limit));
    }
  }
  if (kind == NumericGenus::lgenus) {
    for (const auto& row : ci.degrees()) {
      if (divisor_reach(row, radii) >= kPi / 2.0) {
        throw ConvergenceError("contour lets a divisor argument reach a pole of tanh");
      }
    }
  }
}

}  // namespace

ResidueResult residue_genus(const CompleteIntersection& ci, NumericGenus kind, const ContourSpec& contour) {
  if (contour.samples < 4 || (contour.samples & (contour.samples - 1)) != 0) {
    throw PreconditionError("samples per circle must be a power of two >= 4");
  }
  std::vector<double> radii = contour.radii.empty() ? default_radii(ci, kind, contour.q) : contour.radii;
  if (radii.size() != ci.s()) throw PreconditionError("one contour radius per projective factor is required");
  require_inside(ci, kind, contour.q, radii);

  const GenusFunctions fns(kind, contour.q);
  const Quadrature coarse = circle_coefficient(ci, fns, radii, contour.samples);
  const Quadrature fine = circle_coefficient(ci, fns, radii, 2 * contour.samples);
  const double drift = std::abs(coarse.value - fine.value);
  if (drift > 1e-9 * std::abs(fine.value) + 1e-12 * fine.scale) {
    throw ConvergenceError("trapezoidal rule not converged: doubling samples moved the result by " +
                           std::to_string(drift));
  }
  return ResidueResult{coarse.value, fine.value, fine.scale, std::move(radii)};
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(static_cast<std::size_t>(order));
  weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Integrand in y coordinates: prod_q (Q(y_q)/y_q)^{n_q+1} prod_p l_p/Q(l_p),
// in the theta form that stays regular away from the lattice.
Complex torus_integrand(const CompleteIntersection& ci, const std::vector<Complex>& y, const ThetaParams& params,
                        Complex theta_prime) {
  Complex value = 1.0;
  for (std::size_t q = 0; q < ci.s(); ++q) {
    const Complex ratio = theta_prime / (kTwoPiI * theta_eval(ThetaKind::theta, y[q] / kTwoPiI, params));
    value *= std::pow(ratio, ci.n()[q] + 1);
  }
  for (const auto& row : ci.degrees()) {
    value *= kTwoPiI * theta_eval(ThetaKind::theta, linear_value(row, y) / kTwoPiI, params) / theta_prime;
  }
  return value;
}

}  // namespace

std::vector<ResidueSumReport> residue_sum_check(const CompleteIntersection& ci, const std::vector<Complex>& qs,
                                                int samples) {
  std::vector<double> gl_nodes;
  std::vector<double> gl_weights;
  gauss_legendre(24, gl_nodes, gl_weights);
  constexpr int kPanels = 16;

  std::vector<ResidueSumReport> out;
  for (const Complex q : qs) {
    ResidueSumReport r;
    r.q = q;
    ContourSpec contour;
    contour.q = q;
    contour.samples = samples;
    const ResidueResult res = residue_genus(ci, NumericGenus::witten, contour);
    r.residue = res.refined;

    const ThetaParams params = ThetaParams::from_q(q);
    const Complex tp = theta_prime_zero(params);
    const Complex tau = params.tau;
    const std::size_t s = ci.s();
    const int m = 2 * samples;

    // Circle points for y_2..y_s; each contributes y_q / N (the dy_q/(2 pi i) weight).
    std::vector<std::vector<Complex>> circle(s);
    for (std::size_t q = 1; q < s; ++q) {
      for (int k = 0; k < m; ++k) circle[q].push_back(std::polar(res.radii[q], 2.0 * kPi * k / m));
    }
    auto inner = [&](Complex y1) {
      std::vector<Complex> y(s);
      y[0] = y1;
      std::vector<int> idx(s, 0);
      Complex sum = 0.0;
      while (true) {
        Complex weight = 1.0;
        for (std::size_t q = 1; q < s; ++q) {
          y[q] = circle[q][idx[q]];
          weight *= y[q] / static_cast<double>(m);
        }
        sum += weight * torus_integrand(ci, y, params, tp);
        std::size_t q = 1;
        while (q < s && ++idx[q] == m) idx[q++] = 0;
        if (q >= s) break;
      }
      return sum;
    };

    // Counterclockwise boundary of {2 pi i (a + b tau) : |a|, |b| <= 1/2}.
    const Complex corners[4] = {kTwoPiI * (-0.5 - 0.5 * tau), kTwoPiI * (0.5 - 0.5 * tau),
                                kTwoPiI * (0.5 + 0.5 * tau), kTwoPiI * (-0.5 + 0.5 * tau)};
    Complex integral = 0.0;
    for (int e = 0; e < 4; ++e) {
      const Complex from = corners[e];
      const Complex to = corners[(e + 1) % 4];
      const Complex edge = to - from;
      for (int p = 0; p < kPanels; ++p) {
        for (std::size_t k = 0; k < gl_nodes.size(); ++k) {
          const double t = (p + 0.5 * (gl_nodes[k] + 1.0)) / kPanels;
          integral += gl_weights[k] * 0.5 / kPanels * edge * inner(from + t * edge);
        }
      }
    }
    r.boundary_integral = integral / kTwoPiI;
    out.push_back(r);
  }
  return out;
}

}  // namespace stringci::oracle
