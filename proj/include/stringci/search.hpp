#pragma once

// Enumeration of degree matrices with D^T D = diag(n_q + 1) and m_q + 2 <= n_q,
// and sweeps that evaluate the Witten genus on each of them.

#include <functional>
#include <optional>
#include <vector>

#include "stringci/geometry.hpp"

namespace stringci {

struct SearchBounds {
  int s = 1;
  int t_max = 1;
  /// Fixed ambient dimensions; when empty every n with 1 <= n_q <= n_max is tried.
  std::vector<int> n;
  int n_max = 0;
  bool allow_odd_dim = false;

  /// Throws PreconditionError on inconsistent bounds.
  void validate() const;
};

using Matrix = std::vector<std::vector<long>>;

/// Row-sign normalization (first nonzero entry positive) followed by sorting
/// rows in decreasing lexicographic order. Idempotent.
Matrix canonicalize(Matrix d);

struct Candidate {
  std::vector<int> n;
  Matrix degrees;  ///< canonical
  CompleteIntersection instance() const { return CompleteIntersection(n, degrees); }
};

/// Calls `emit` for every canonical solution, ordered by n (lexicographic) and
/// then by the depth-first row order. Each equivalence class under row
/// permutation and row sign flips is emitted once.
void enumerate_string_matrices(const SearchBounds& bounds, const std::function<void(const Candidate&)>& emit);
std::vector<Candidate> enumerate_string_matrices(const SearchBounds& bounds);

struct SweepEntry {
  Candidate candidate;
  int complex_dim = 0;
  QSeries witten{0};
  bool vanishes = false;
  double millis = 0.0;
};

struct SweepReport {
  int q_order = 0;
  /// Real dimension divisible by 4.
  std::vector<SweepEntry> instances;
  /// Odd complex dimension; present only with allow_odd_dim.
  std::vector<SweepEntry> odd_dimension;
  double total_millis = 0.0;

  std::size_t failures() const;
};

/// Evaluates the Witten genus through q^{2K} on every enumerated instance,
/// using up to `threads` workers. Output order does not depend on `threads`.
SweepReport verify_theorem(const SearchBounds& bounds, int q_order, int threads = 1);

}  // namespace stringci
