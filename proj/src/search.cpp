#include "stringci/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "stringci/errors.hpp"

namespace stringci {

void SearchBounds::validate() const {
  if (s < 1) throw PreconditionError("search needs s >= 1");
  if (t_max < 1) throw PreconditionError("search needs t_max >= 1");
  if (!n.empty()) {
    if (static_cast<int>(n.size()) != s) throw PreconditionError("n must have exactly s entries");
    for (int v : n) {
      if (v < 1) throw PreconditionError("every n_q must be at least 1");
    }
  } else if (n_max < 1) {
    throw PreconditionError("either n or n_max >= 1 is required");
  }
}

Matrix canonicalize(Matrix d) {
  for (auto& row : d) {
    auto first = std::find_if(row.begin(), row.end(), [](long v) { return v != 0; });
    if (first != row.end() && *first < 0) {
      for (auto& v : row) v = -v;
    }
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

namespace {

long isqrt(long v) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// All sign-normalized nonzero rows with |d_q| <= bound_q, in decreasing
// lexicographic order.
std::vector<std::vector<long>> candidate_rows(const std::vector<long>& bound) {
  std::vector<std::vector<long>> rows;
  std::vector<long> cur(bound.size());
  std::function<void(std::size_t)> rec = [&](std::size_t q) {
    if (q == bound.size()) {
      auto first = std::find_if(cur.begin(), cur.end(), [](long v) { return v != 0; });
      if (first != cur.end() && *first > 0) rows.push_back(cur);
      return;
    }
    for (long v = bound[q]; v >= -bound[q]; --v) {
      cur[q] = v;
      rec(q + 1);
    }
  };
  rec(0);
  return rows;
}

class Dfs {
 public:
  Dfs(const SearchBounds& bounds, std::vector<int> n, const std::function<void(const Candidate&)>& emit)
      : bounds_(bounds), n_(std::move(n)), emit_(emit), s_(n_.size()) {
    bound_.resize(s_);
    for (std::size_t q = 0; q < s_; ++q) bound_[q] = isqrt(n_[q] + 1);
    rows_ = candidate_rows(bound_);
    norm_.assign(s_, 0);
    dot_.assign(s_ * s_, 0);
    nonzero_.assign(s_, 0);
  }

  void run() { extend(0); }

 private:
  bool complete() const {
    for (std::size_t u = 0; u < s_; ++u) {
      if (norm_[u] != n_[u] + 1) return false;
      for (std::size_t v = u + 1; v < s_; ++v) {
        if (dot_[u * s_ + v] != 0) return false;
      }
    }
    return true;
  }

  bool feasible() const {
    const long left = bounds_.t_max - static_cast<long>(chosen_.size());
    for (std::size_t q = 0; q < s_; ++q) {
      const long deficit = n_[q] + 1 - norm_[q];
      if (deficit < 0) return false;
      if (deficit > left * bound_[q] * bound_[q]) return false;
      if (nonzero_[q] + 2 > n_[q]) return false;
    }
    return true;
  }

  void apply(const std::vector<long>& row, int sign) {
    for (std::size_t u = 0; u < s_; ++u) {
      norm_[u] += sign * row[u] * row[u];
      nonzero_[u] += sign * (row[u] != 0);
      for (std::size_t v = u + 1; v < s_; ++v) dot_[u * s_ + v] += sign * row[u] * row[v];
    }
  }

  void extend(std::size_t first) {
    if (!chosen_.empty() && complete()) {
      const int dim = std::accumulate(n_.begin(), n_.end(), 0) - static_cast<int>(chosen_.size());
      if (bounds_.allow_odd_dim || dim % 2 == 0) emit_(Candidate{n_, chosen_});
      // Any further row would overshoot some column norm.
      return;
    }
    if (static_cast<int>(chosen_.size()) == bounds_.t_max) return;
    for (std::size_t i = first; i < rows_.size(); ++i) {
      apply(rows_[i], +1);
      chosen_.push_back(rows_[i]);
      if (feasible()) extend(i);
      chosen_.pop_back();
      apply(rows_[i], -1);
    }
  }

  const SearchBounds& bounds_;
  std::vector<int> n_;
  const std::function<void(const Candidate&)>& emit_;
  std::size_t s_;
  std::vector<long> bound_;
  std::vector<std::vector<long>> rows_;
  std::vector<long> norm_;
  std::vector<long> dot_;
  std::vector<int> nonzero_;
  Matrix chosen_;
};

void for_each_n(const SearchBounds& bounds, const std::function<void(const std::vector<int>&)>& fn) {
  if (!bounds.n.empty()) {
    fn(bounds.n);
    return;
  }
  std::vector<int> n(static_cast<std::size_t>(bounds.s), 1);
  while (true) {
    fn(n);
    std::size_t q = n.size();
    while (q > 0 && n[q - 1] == bounds.n_max) n[--q] = 1;
    if (q == 0) return;
    ++n[q - 1];
  }
}

}  // namespace

void enumerate_string_matrices(const SearchBounds& bounds, const std::function<void(const Candidate&)>& emit) {
  bounds.validate();
  for_each_n(bounds, [&](const std::vector<int>& n) { Dfs(bounds, n, emit).run(); });
}

std::vector<Candidate> enumerate_string_matrices(const SearchBounds& bounds) {
  std::vector<Candidate> out;
  enumerate_string_matrices(bounds, [&](const Candidate& c) { out.push_back(c); });
  return out;
}

std::size_t SweepReport::failures() const {
  std::size_t f = 0;
  for (const auto& e : instances) f += !e.vanishes;
  for (const auto& e : odd_dimension) f += !e.vanishes;
  return f;
}

SweepReport verify_theorem(const SearchBounds& bounds, int q_order, int threads) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::vector<Candidate> candidates = enumerate_string_matrices(bounds);

  std::map<int, CharSeries> series_by_degree;
  for (const auto& c : candidates) {
    const int degree = std::accumulate(c.n.begin(), c.n.end(), 0);
    if (!series_by_degree.count(degree)) series_by_degree.emplace(degree, witten_series(degree, q_order));
  }

  std::vector<SweepEntry> entries(candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      const auto t0 = Clock::now();
      const CompleteIntersection ci = candidates[i].instance();
      const int degree = std::accumulate(ci.n().begin(), ci.n().end(), 0);
      GenusReport r = genus(ci, series_by_degree.at(degree));
      SweepEntry& e = entries[i];
      e.candidate = candidates[i];
      e.complex_dim = ci.complex_dim();
      e.vanishes = r.value.is_zero();
      e.witten = std::move(r.value);
      e.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(candidates.size())));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  SweepReport report;
  report.q_order = q_order;
  for (auto& e : entries) {
    (e.complex_dim % 2 == 0 ? report.instances : report.odd_dimension).push_back(std::move(e));
  }
  report.total_millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace stringci
