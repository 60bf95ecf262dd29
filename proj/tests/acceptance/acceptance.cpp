// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "stringci/geometry.hpp"
#include "stringci/oracle.hpp"
#include "stringci/search.hpp"
#include "support/gen.hpp"
#include "support/properties.hpp"

using namespace stringci;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int total_degree(const CompleteIntersection& ci) { return std::accumulate(ci.n().begin(), ci.n().end(), 0); }

Rational ahat(const CompleteIntersection& ci) { return genus(ci, ahat_series(total_degree(ci))).value[0]; }
Rational ahat_twisted(const CompleteIntersection& ci) {
  return twisted_genus(ci, ahat_series(total_degree(ci))).value[0];
}
Rational signature(const CompleteIntersection& ci) { return genus(ci, lgenus_series(total_degree(ci))).value[0]; }
Rational twisted_signature(const CompleteIntersection& ci) {
  return twisted_genus(ci, lgenus_series(total_degree(ci))).value[0];
}

const int kSweepOrder = 6;

SweepReport sweep(int s, int t_max, int n_max) {
  SearchBounds b;
  b.s = s;
  b.t_max = t_max;
  b.n_max = n_max;
  return verify_theorem(b, kSweepOrder, 1);
}

struct Sweeps {
  SweepReport single;
  SweepReport pairs;
  double seconds;
};

const Sweeps& sweeps() {
  static const Sweeps s = [] {
    const auto start = Clock::now();
    Sweeps out{sweep(1, 4, 12), sweep(2, 5, 9), 0.0};
    out.seconds = seconds_since(start);
    return out;
  }();
  return s;
}

Verdict criterion_sweep() {
  const auto& s = sweeps();
  const std::size_t count = s.single.instances.size() + s.pairs.instances.size();
  const std::size_t failures = s.single.failures() + s.pairs.failures();
  std::ostringstream d;
  d << count << " instances, " << failures << " failures, " << s.seconds << " s";
  return {count >= 24 && failures == 0 && s.seconds < 120.0, d.str()};
}

Verdict criterion_single_factor() {
  const auto& r = sweeps().single;
  std::size_t vanishing = 0;
  for (const auto& e : r.instances) vanishing += e.vanishes && e.candidate.n.size() == 1;
  std::ostringstream d;
  d << vanishing << "/" << r.instances.size() << " single-factor instances vanish";
  return {!r.instances.empty() && vanishing == r.instances.size(), d.str()};
}

Verdict criterion_classical() {
  const CompleteIntersection cp2({2}, {});
  const bool ok = ahat(cp2) == Rational(-1, 8) && signature(cp2) == 1 &&
                  euler_characteristic(CompleteIntersection({4}, {{5}})) == -200 &&
                  ahat(CompleteIntersection({0}, {})) == 1 &&
                  genus(CompleteIntersection({0}, {}), witten_series(0, 4)).value == QSeries::constant(1, 4) &&
                  ahat(CompleteIntersection({1}, {})) == 0;
  return {ok, "Ahat(CP2), sig(CP2), chi(quintic), point, Ahat(CP1)"};
}

Verdict criterion_witten_expansion() {
  gen::Rng rng(1004);
  std::vector<CompleteIntersection> cases;
  for (int i = 0; i < 6; ++i) cases.push_back(gen::instance_of_dim(rng, 2 * gen::uniform(rng, 1, 3), {}));
  for (const auto& e : sweeps().single.instances) {
    if (cases.size() == 10) break;
    cases.push_back(e.candidate.instance());
  }
  int strings = 0;
  for (const auto& ci : cases) {
    strings += is_string(ci).is_string;
    const auto w = genus(ci, witten_series(total_degree(ci), 1)).value;
    const Rational a = ahat(ci);
    if (w[0] != a || w[1] != ahat_twisted(ci) - 2 * ci.complex_dim() * a) return {false, ci.to_string()};
  }
  std::ostringstream d;
  d << cases.size() << " instances (" << strings << " string)";
  return {cases.size() == 10 && strings > 0 && strings < 10, d.str()};
}

Verdict criterion_dim12() {
  const CompleteIntersection s12({7, 4}, {{2, 1}, {1, -2}, {1, 0}, {1, 0}, {1, 0}});
  const auto r = corollary_identities(s12);
  if (!r.holds() || r.lhs != 0 || signature(s12) != 0) return {false, "string instance"};
  gen::Rng rng(1005);
  gen::InstanceShape shape;
  shape.max_n = 8;
  int checked = 0;
  int nonzero = 0;
  while (checked < 5) {
    const auto ci = gen::instance_of_dim(rng, 6, shape);
    if (is_string(ci).matrix_criterion_ok) continue;
    const auto c = corollary_identities(ci);
    if (!c.holds()) return {false, ci.to_string()};
    nonzero += c.lhs != 0;
    ++checked;
  }
  std::ostringstream d;
  d << "string instance sig 0; " << checked << " non-string instances (" << nonzero << " with nonzero signature)";
  return {true, d.str()};
}

Verdict criterion_dim16() {
  gen::Rng rng(1006);
  gen::InstanceShape shape;
  shape.max_n = 9;
  shape.max_total = 11;
  shape.max_t = 2;
  shape.max_entry = 2;
  int nonzero = 0;
  for (int i = 0; i < 3; ++i) {
    const auto ci = gen::instance_of_dim(rng, 8, shape);
    const auto c = corollary_identities(ci);
    if (!c.holds()) return {false, ci.to_string()};
    nonzero += c.lhs != 0;
  }
  int strings = 0;
  for (const auto* r : {&sweeps().single, &sweeps().pairs}) {
    for (const auto& e : r->instances) {
      if (e.complex_dim != 8) continue;
      const auto ci = e.candidate.instance();
      const auto c = corollary_identities(ci);
      if (!c.holds() || c.lhs != 0 || twisted_signature(ci) != 0) return {false, ci.to_string()};
      ++strings;
    }
  }
  std::ostringstream d;
  d << "3 random instances (" << nonzero << " with nonzero twisted signature); " << strings << " string instances with twisted signature 0";
  return {true, d.str()};
}

Verdict criterion_theta_laws() {
  double worst = 0.0;
  for (const auto tau : {oracle::Complex(0, 0.8), oracle::Complex(1, 1), oracle::Complex(0.3, 0.9)}) {
    worst = std::max(worst, oracle::check_lattice_laws(oracle::ThetaParams::from_tau(tau), 100, 1007).max_residual);
  }
  std::ostringstream d;
  d << "max relative residual " << worst;
  return {worst < 1e-9, d.str()};
}

Verdict criterion_proof_mechanism() {
  const auto params = oracle::ThetaParams::from_q(oracle::Complex(0.1, 0.05));
  double string_worst = 0.0;
  double control_best = 1e300;
  double residue_worst = 0.0;
  std::vector<CompleteIntersection> instances;
  for (const auto& e : sweeps().single.instances) instances.push_back(e.candidate.instance());
  for (const auto& e : sweeps().pairs.instances) {
    if (total_degree(e.candidate.instance()) <= 12) instances.push_back(e.candidate.instance());
  }
  std::uint64_t seed = 1008;
  for (const auto& ci : instances) {
    string_worst = std::max(string_worst, oracle::check_integrand_periodicity(ci, params, 20, seed++).max_residual);
    // matched control: bump the first entry of the first row
    auto d = ci.degrees();
    d[0][0] += 1;
    const CompleteIntersection control(ci.n(), d);
    control_best =
        std::min(control_best, oracle::check_integrand_periodicity(control, params, 20, seed++, true).max_residual);

    oracle::ContourSpec c;
    c.q = 0.1;
    residue_worst = std::max(residue_worst, std::abs(oracle::residue_genus(ci, oracle::NumericGenus::witten, c).refined));
  }
  const CompleteIntersection s5({5}, {{2}, {1}, {1}});
  for (const auto& r : oracle::residue_sum_check(s5, {oracle::Complex(0.1, 0.05), oracle::Complex(0.05, 0)})) {
    residue_worst = std::max({residue_worst, std::abs(r.residue), std::abs(r.boundary_integral)});
  }
  std::ostringstream d;
  d << instances.size() << " string instances: periodicity " << string_worst << ", controls >= " << control_best
    << ", |residue| <= " << residue_worst;
  return {string_worst < 1e-9 && control_best > 1e-3 && residue_worst < 1e-6, d.str()};
}

Verdict criterion_exact_vs_oracle() {
  const std::vector<CompleteIntersection> cases = {
      CompleteIntersection({2}, {}),
      CompleteIntersection({4}, {}),
      CompleteIntersection({3}, {{4}}),
      CompleteIntersection({5}, {{6}}),
      CompleteIntersection({4}, {{5}}),
      CompleteIntersection({2, 2}, {}),
      CompleteIntersection({3, 1}, {{2, 1}}),
      CompleteIntersection({5}, {{2}, {1}, {1}}),
      CompleteIntersection({3}, {{2}}),
      CompleteIntersection({7, 4}, {{2, 1}, {1, -2}, {1, 0}, {1, 0}, {1, 0}}),
  };
  const oracle::Complex q = 0.1;
  double worst = 0.0;
  for (const auto& ci : cases) {
    const auto exact = genus(ci, witten_series(total_degree(ci), 10)).value;
    const oracle::Complex e = exact.evaluate(q);
    oracle::ContourSpec c;
    c.q = q;
    const oracle::Complex n = oracle::residue_genus(ci, oracle::NumericGenus::witten, c).refined;
    const double err = exact.is_zero() ? std::abs(n) : std::abs(n - e) / std::abs(e);
    worst = std::max(worst, err);
  }
  std::ostringstream d;
  d << cases.size() << " instances at q = 0.1, worst error " << worst;
  return {worst < 1e-6, d.str()};
}

Verdict criterion_algebra() {
  const auto start = Clock::now();
  const std::vector<std::pair<const char*, props::Outcome>> results = {
      {"qseries ring", props::qseries_ring_axioms(100, 2001)},
      {"mseries ring", props::mseries_ring_axioms(100, 2002)},
      {"inverse", props::mseries_inverse(100, 2003)},
      {"substitute", props::substitute_homomorphism(100, 2004)},
      {"convolution", props::convolution_oracle(100, 2005)},
      {"multiplicativity", props::genus_multiplicativity(100, 2006)},
      {"hyperplane", props::hyperplane_reduction(100, 2007)},
  };
  const double secs = seconds_since(start);
  for (const auto& [name, r] : results) {
    if (!r.ok() || r.cases != 100) return {false, std::string(name) + ": " + r.failure};
  }
  std::ostringstream d;
  d << results.size() << " properties x 100 cases in " << secs << " s";
  return {secs < 30.0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"Witten genus vanishes on the sweep", criterion_sweep},
      {"single projective factor section", criterion_single_factor},
      {"classical regression values", criterion_classical},
      {"q^0 and q^2 coefficients of the Witten genus", criterion_witten_expansion},
      {"real dimension 12 identities", criterion_dim12},
      {"real dimension 16 identities", criterion_dim16},
      {"theta lattice laws", criterion_theta_laws},
      {"periodicity and residues", criterion_proof_mechanism},
      {"exact versus numeric Witten genus", criterion_exact_vs_oracle},
      {"algebra properties", criterion_algebra},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << v.detail << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
