#include "steklov/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <thread>

#include "steklov/errors.hpp"

namespace steklov::ineq {
namespace {

std::string format_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Deterministic cross-platform uniforms: the upper 53 bits of a mt19937_64
// draw, mapped to [0, 1).  std::uniform_real_distribution is not pinned by
// the standard, so it is avoided on purpose.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

int uniform_int(std::mt19937_64& eng, int lo, int hi) {  // inclusive bounds
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(eng() % span);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Splittable per-trial engine: results do not depend on how trials are
// distributed over threads.
std::mt19937_64 trial_engine(std::uint64_t seed, long long trial) {
  std::uint64_t s = seed;
  const std::uint64_t mixed = splitmix64(s);
  s = mixed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1));
  return std::mt19937_64(splitmix64(s));
}

// Visits all k-subsets of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(int m, int k, F&& visit) {
  std::vector<int> idx(static_cast<size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(const_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

// det A[rows, cols] by Gaussian elimination with partial pivoting.
double minor_det(const SpdMatrix& a, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  std::vector<double> m(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m[static_cast<size_t>(i) * k + j] = a(rows[static_cast<size_t>(i)],
                                            cols[static_cast<size_t>(j)]);
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(m[static_cast<size_t>(r) * k + col]) >
          std::fabs(m[static_cast<size_t>(piv) * k + col]))
        piv = r;
    const double pivot = m[static_cast<size_t>(piv) * k + col];
    if (pivot == 0.0) return 0.0;
    if (piv != col) {
      for (int j = col; j < k; ++j)
        std::swap(m[static_cast<size_t>(piv) * k + j],
                  m[static_cast<size_t>(col) * k + j]);
      det = -det;
    }
    const double d = m[static_cast<size_t>(col) * k + col];
    det *= d;
    for (int r = col + 1; r < k; ++r) {
      const double f = m[static_cast<size_t>(r) * k + col] / d;
      if (f == 0.0) continue;
      for (int j = col + 1; j < k; ++j)
        m[static_cast<size_t>(r) * k + j] -= f * m[static_cast<size_t>(col) * k + j];
    }
  }
  return det;
}

struct EigenData {
  std::vector<double> eigenvalues;  // ascending
  double spectral_norm = 0.0;
};

EigenData spd_eigen_prep(const SpdMatrix& a, bool negative_power) {
  EigenData d;
  d.eigenvalues = jacobi_eigenvalues(a);
  d.spectral_norm =
      std::max(std::fabs(d.eigenvalues.front()), std::fabs(d.eigenvalues.back()));
  require(d.eigenvalues.front() > 0.0, ErrorKind::Precondition,
          "matrix is not positive definite (smallest eigenvalue " +
              format_num(d.eigenvalues.front()) + ")");
  if (negative_power) {
    require(d.eigenvalues.front() >= kNegativePowerFloor * d.spectral_norm,
            ErrorKind::Precondition,
            "smallest eigenvalue " + format_num(d.eigenvalues.front()) +
                " is below the relative floor " + format_num(kNegativePowerFloor) +
                " for powers p <= 0; refusing rather than clipping");
  }
  return d;
}

void check_finite_sides(double lhs, double rhs, const std::string& what) {
  require(std::isfinite(lhs) && std::isfinite(rhs), ErrorKind::Precondition,
          what + " overflowed the double range");
}

}  // namespace

std::vector<double> jacobi_eigenvalues(const SpdMatrix& a_in) {
  const int n = a_in.order();
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = a_in(i, j);

  double fro2 = 0.0;
  for (double v : a) fro2 += v * v;
  if (fro2 == 0.0) return std::vector<double>(static_cast<size_t>(n), 0.0);
  const double stop = 1e-15 * std::sqrt(fro2);

  auto off_norm = [&]() {
    double off2 = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double v = a[static_cast<size_t>(p) * n + q];
        off2 += 2.0 * v * v;
      }
    return std::sqrt(off2);
  };

  constexpr int kMaxSweeps = 64;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= stop) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<size_t>(p) * n + q];
        if (std::fabs(apq) <= stop / (4.0 * n)) continue;
        const double theta =
            (a[static_cast<size_t>(q) * n + q] - a[static_cast<size_t>(p) * n + p]) /
            (2.0 * apq);
        double t;
        if (std::fabs(theta) > 1e153) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) /
              (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a[static_cast<size_t>(p) * n + p] -= t * apq;
        a[static_cast<size_t>(q) * n + q] += t * apq;
        a[static_cast<size_t>(p) * n + q] = 0.0;
        a[static_cast<size_t>(q) * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[static_cast<size_t>(r) * n + p];
          const double arq = a[static_cast<size_t>(r) * n + q];
          const double nrp = c * arp - s * arq;
          const double nrq = s * arp + c * arq;
          a[static_cast<size_t>(r) * n + p] = nrp;
          a[static_cast<size_t>(p) * n + r] = nrp;
          a[static_cast<size_t>(r) * n + q] = nrq;
          a[static_cast<size_t>(q) * n + r] = nrq;
        }
      }
    }
  }
  if (!converged)
    require(off_norm() <= stop, ErrorKind::Internal,
            "Jacobi eigensolver failed to converge");

  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = a[static_cast<size_t>(i) * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

unsigned long long binomial_capped(int m, int k, unsigned long long cap) {
  if (k < 0 || k > m) return 0;
  const int kk = std::min(k, m - k);
  double log_c = 0.0;
  for (int i = 1; i <= kk; ++i)
    log_c += std::log(static_cast<double>(m - kk + i)) -
             std::log(static_cast<double>(i));
  if (log_c > std::log(static_cast<double>(cap) + 1.0) + 2.0) return cap + 1;
  unsigned long long c = 1;
  for (int i = 1; i <= kk; ++i) {
    c = c * static_cast<unsigned long long>(m - kk + i) /
        static_cast<unsigned long long>(i);
    if (c > cap) return cap + 1;
  }
  return c;
}

WeightVector::WeightVector(std::vector<double> values,
                           OrderConstraint order_constraint, Positivity positivity)
    : values_(std::move(values)),
      order_constraint_(order_constraint),
      positivity_(positivity) {
  require(!values_.empty(), ErrorKind::Parameter, "weight vector must be non-empty");
  for (size_t i = 0; i < values_.size(); ++i) {
    require(std::isfinite(values_[i]), ErrorKind::Parameter,
            "weight " + std::to_string(i) + " is not finite");
    if (positivity_ == Positivity::StrictlyPositive)
      require(values_[i] > 0.0, ErrorKind::Parameter,
              "weight " + std::to_string(i) + " must be strictly positive, got " +
                  format_num(values_[i]));
    else
      require(values_[i] >= 0.0, ErrorKind::Parameter,
              "weight " + std::to_string(i) + " must be nonnegative, got " +
                  format_num(values_[i]));
  }
  for (size_t i = 0; i + 1 < values_.size(); ++i) {
    if (order_constraint_ == OrderConstraint::Descending)
      require(values_[i] >= values_[i + 1], ErrorKind::Parameter,
              "weights must be descending; violated between positions " +
                  std::to_string(i) + " and " + std::to_string(i + 1));
    else
      require(values_[i] <= values_[i + 1], ErrorKind::Parameter,
              "weights must be ascending; violated between positions " +
                  std::to_string(i) + " and " + std::to_string(i + 1));
  }
}

WeightVector WeightVector::ones(int m, OrderConstraint order_constraint,
                                Positivity positivity) {
  require(m >= 1, ErrorKind::Parameter, "weight count must be positive");
  return WeightVector(std::vector<double>(static_cast<size_t>(m), 1.0),
                      order_constraint, positivity);
}

MajorizationVerdict weak_majorize(const std::vector<double>& x,
                                  const std::vector<double>& y,
                                  double relative_tolerance) {
  require(std::isfinite(relative_tolerance) && relative_tolerance >= 0.0,
          ErrorKind::Parameter, "relative tolerance must be finite and >= 0");
  require(!x.empty(), ErrorKind::Parameter, "majorization inputs must be non-empty");
  require(x.size() == y.size(), ErrorKind::Parameter,
          "majorization inputs must have equal length (" + std::to_string(x.size()) +
              " vs " + std::to_string(y.size()) + ")");
  for (double v : x)
    require(std::isfinite(v), ErrorKind::Parameter, "majorization input x is not finite");
  for (double v : y)
    require(std::isfinite(v), ErrorKind::Parameter, "majorization input y is not finite");

  std::vector<double> xs = x, ys = y;
  std::sort(xs.rbegin(), xs.rend());
  std::sort(ys.rbegin(), ys.rend());

  MajorizationVerdict v;
  v.partial_sums_x.resize(xs.size());
  v.partial_sums_y.resize(ys.size());
  double sx = 0.0, sy = 0.0, scale = 1.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    v.partial_sums_x[i] = sx;
    v.partial_sums_y[i] = sy;
    scale = std::max({scale, std::fabs(sx), std::fabs(sy)});
  }
  const double tol = (1e-12 + relative_tolerance) * scale;
  v.tolerance_used = tol;

  v.relation = Relation::WeaklyMajorized;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (v.partial_sums_x[i] > v.partial_sums_y[i] + tol) {
      v.relation = Relation::Neither;
      v.first_violation_index = static_cast<int>(i) + 1;
      break;
    }
  }
  if (v.relation == Relation::WeaklyMajorized &&
      std::fabs(v.partial_sums_x.back() - v.partial_sums_y.back()) <= tol)
    v.relation = Relation::Majorized;
  return v;
}

ConvexSpec convex_square() {
  return {"square", [](double t) { return t * t; }, Monotonicity::IncreasingOnNonneg,
          false};
}

ConvexSpec convex_abs() {
  return {"abs", [](double t) { return std::fabs(t); },
          Monotonicity::IncreasingOnNonneg, false};
}

ConvexSpec convex_exp() {
  return {"exp", [](double t) { return std::exp(t); }, Monotonicity::Increasing,
          false};
}

ConvexSpec convex_hinge(double c) {
  require(std::isfinite(c), ErrorKind::Parameter, "hinge threshold must be finite");
  return {"hinge(" + format_num(c) + ")",
          [c](double t) { return std::max(t - c, 0.0); }, Monotonicity::Increasing,
          false};
}

ConvexSpec convex_power(double p) {
  require(std::isfinite(p) && p >= 1.0, ErrorKind::Parameter,
          "power spec requires p >= 1, got " + format_num(p));
  return {"power(" + format_num(p) + ")",
          [p](double t) { return std::pow(t, p); }, Monotonicity::Increasing, true};
}

ConvexSpec convex_neg_power(double p) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorKind::Parameter,
          "neg_power spec requires 0 <= p <= 1, got " + format_num(p));
  return {"neg_power(" + format_num(p) + ")",
          [p](double t) { return -std::pow(t, p); }, Monotonicity::NotMonotone, true};
}

std::vector<ConvexSpec> convex_catalog() {
  return {convex_square(), convex_abs(),       convex_exp(),
          convex_hinge(0.5), convex_power(2.5), convex_neg_power(0.5)};
}

MajorizationVerdict majorization_principle_check(const std::vector<double>& x,
                                                 const std::vector<double>& y,
                                                 const ConvexSpec& f) {
  require(static_cast<bool>(f.fn), ErrorKind::Parameter,
          "convex spec '" + f.name + "' has no function");
  bool all_nonneg = true;
  for (double v : x) all_nonneg = all_nonneg && v >= 0.0;
  for (double v : y) all_nonneg = all_nonneg && v >= 0.0;
  if (f.requires_nonneg)
    require(all_nonneg, ErrorKind::Precondition,
            "convex function '" + f.name + "' is only defined on nonnegative inputs");

  const MajorizationVerdict pre = weak_majorize(x, y);
  if (pre.relation == Relation::Neither)
    fail(ErrorKind::Precondition,
         "majorization precondition fails: prefix " +
             std::to_string(pre.first_violation_index.value()) +
             " of x exceeds that of y");
  const bool increasing =
      f.monotonicity == Monotonicity::Increasing ||
      (f.monotonicity == Monotonicity::IncreasingOnNonneg && all_nonneg);
  if (pre.relation == Relation::WeaklyMajorized && !increasing)
    fail(ErrorKind::Precondition,
         "weak majorization only transports through increasing convex functions, and '" +
             f.name +
             "' is not increasing on the given data; full majorization is required");

  std::vector<double> fx(x.size()), fy(y.size());
  for (size_t i = 0; i < x.size(); ++i) fx[i] = f.fn(x[i]);
  for (size_t i = 0; i < y.size(); ++i) fy[i] = f.fn(y[i]);
  const MajorizationVerdict post = weak_majorize(fx, fy);
  require(post.relation != Relation::Neither, ErrorKind::Internal,
          "majorization principle conclusion failed numerically for '" + f.name + "'");
  return post;
}

InequalityReport lemma_matrix_part1(const SpdMatrix& a_matrix,
                                    const WeightVector& weights, double p,
                                    double tolerance) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorKind::Parameter,
          "part (1) requires 0 <= p <= 1, got " + format_num(p));
  require(weights.order_constraint() == OrderConstraint::Descending &&
              weights.positivity() == Positivity::NonNegative,
          ErrorKind::Parameter, "part (1) requires descending nonnegative weights");
  const int m = a_matrix.order();
  require(weights.size() == m, ErrorKind::Parameter,
          "weight count must match the matrix order");

  const EigenData ed = spd_eigen_prep(a_matrix, false);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < m; ++i) {
    lhs += std::pow(weights[i] * ed.eigenvalues[static_cast<size_t>(i)], p);
    rhs += std::pow(weights[i] * a_matrix(i, i), p);
  }
  check_finite_sides(lhs, rhs, "part (1) power sums");
  return make_report("lemma-matrix-part1", {param("m", m), param("p", p)},
                     "sum_i (a_i*lambda_i(A))^p <= sum_i (a_i*A(i,i))^p",
                     "symmetric matrix of order " + std::to_string(m), lhs, rhs,
                     tolerance, tolerance);
}

InequalityReport lemma_matrix_part2(const SpdMatrix& a_matrix,
                                    const WeightVector& weights, double p,
                                    double tolerance) {
  require(std::isfinite(p) && (p >= 1.0 || p <= 0.0), ErrorKind::Parameter,
          "part (2) requires p >= 1 or p <= 0; p in (0,1) is part (1) territory, got " +
              format_num(p));
  require(weights.order_constraint() == OrderConstraint::Ascending &&
              weights.positivity() == Positivity::StrictlyPositive,
          ErrorKind::Parameter,
          "part (2) requires ascending strictly positive weights");
  const int m = a_matrix.order();
  require(weights.size() == m, ErrorKind::Parameter,
          "weight count must match the matrix order");

  const EigenData ed = spd_eigen_prep(a_matrix, p <= 0.0);
  double eig_side = 0.0, diag_side = 0.0;
  for (int i = 0; i < m; ++i) {
    eig_side += std::pow(weights[i] * ed.eigenvalues[static_cast<size_t>(i)], p);
    diag_side += std::pow(weights[i] * a_matrix(i, i), p);
  }
  check_finite_sides(eig_side, diag_side, "part (2) power sums");
  return make_report_geq("lemma-matrix-part2", {param("m", m), param("p", p)},
                         "sum_i (a_i*lambda_i(A))^p >= sum_i (a_i*A(i,i))^p",
                         "symmetric matrix of order " + std::to_string(m), eig_side,
                         diag_side, tolerance, tolerance);
}

InequalityReport lemma_matrix_part3(const SpdMatrix& a_matrix, double p, int k,
                                    double tolerance,
                                    unsigned long long subset_cap) {
  require(std::isfinite(p) && p <= 0.0, ErrorKind::Parameter,
          "part (3) requires p <= 0, got " + format_num(p));
  const int m = a_matrix.order();
  require(k >= 1 && k <= m, ErrorKind::Parameter,
          "k must satisfy 1 <= k <= matrix order, got " + std::to_string(k));
  require(binomial_capped(m, k, subset_cap) <= subset_cap, ErrorKind::Unsupported,
          "C(m,k) exceeds the subset cap of " + std::to_string(subset_cap));

  const EigenData ed = spd_eigen_prep(a_matrix, true);
  std::vector<double> log_eig(static_cast<size_t>(m)), log_diag(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    log_eig[static_cast<size_t>(i)] = std::log(ed.eigenvalues[static_cast<size_t>(i)]);
    log_diag[static_cast<size_t>(i)] = std::log(a_matrix(i, i));
  }
  double eig_side = 0.0, diag_side = 0.0;
  for_each_subset(m, k, [&](const std::vector<int>& s) {
    double le = 0.0, ld = 0.0;
    for (int i : s) {
      le += log_eig[static_cast<size_t>(i)];
      ld += log_diag[static_cast<size_t>(i)];
    }
    eig_side += std::exp(p * le);
    diag_side += std::exp(p * ld);
  });
  check_finite_sides(eig_side, diag_side, "part (3) subset power sums");
  return make_report_geq(
      "lemma-matrix-part3", {param("m", m), param("k", k), param("p", p)},
      "sum over k-subsets (prod lambda)^p >= sum over k-subsets (prod diag)^p",
      "symmetric matrix of order " + std::to_string(m), eig_side, diag_side,
      tolerance, tolerance);
}

SpdMatrix compound_matrix(const SpdMatrix& a_matrix, int k,
                          unsigned long long subset_cap) {
  const int m = a_matrix.order();
  require(k >= 1 && k <= m, ErrorKind::Parameter,
          "compound order k must satisfy 1 <= k <= matrix order, got " +
              std::to_string(k));
  const unsigned long long count = binomial_capped(m, k, subset_cap);
  require(count <= subset_cap, ErrorKind::Unsupported,
          "compound matrix order C(" + std::to_string(m) + "," + std::to_string(k) +
              ") exceeds the cap of " + std::to_string(subset_cap));

  std::vector<std::vector<int>> subsets;
  subsets.reserve(static_cast<size_t>(count));
  for_each_subset(m, k, [&](const std::vector<int>& s) { subsets.push_back(s); });
  const int n = static_cast<int>(subsets.size());
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double d = minor_det(a_matrix, subsets[static_cast<size_t>(i)],
                                 subsets[static_cast<size_t>(j)]);
      c(i, j) = d;
      c(j, i) = d;
    }
  return SpdMatrix(std::move(c));
}

InequalityReport hadamard_check(const SpdMatrix& a_matrix,
                                const std::vector<int>& subset, double tolerance) {
  const int m = a_matrix.order();
  require(!subset.empty(), ErrorKind::Parameter, "subset must be non-empty");
  for (int i : subset)
    require(i >= 0 && i < m, ErrorKind::Index,
            "subset index out of range: " + std::to_string(i));
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorKind::Parameter, "subset contains duplicate indices");

  spd_eigen_prep(a_matrix, false);  // SPD required by Hadamard's inequality
  const double minor = minor_det(a_matrix, subset, subset);
  double diag_prod = 1.0;
  for (int i : subset) diag_prod *= a_matrix(i, i);
  check_finite_sides(minor, diag_prod, "Hadamard sides");
  return make_report("hadamard",
                     {param("order", m),
                      param("subset_size", static_cast<int>(subset.size()))},
                     "det A[S,S] <= prod_{i in S} A(i,i)",
                     "SPD matrix of order " + std::to_string(m), minor, diag_prod,
                     tolerance, tolerance);
}

MajorizationVerdict schur_check(const SpdMatrix& a_matrix) {
  const std::vector<double> eigs = jacobi_eigenvalues(a_matrix);
  const Eigen::VectorXd d = a_matrix.diagonal();
  const std::vector<double> diag(d.data(), d.data() + d.size());
  return weak_majorize(diag, eigs);
}

InequalityReport young_product_bound(const std::vector<double>& x,
                                     const std::vector<double>& p_exponents,
                                     double tolerance) {
  require(!x.empty(), ErrorKind::Parameter, "x must be non-empty");
  require(x.size() == p_exponents.size(), ErrorKind::Parameter,
          "x and p exponents must have equal length");
  for (double v : x)
    require(std::isfinite(v) && v > 0.0, ErrorKind::Parameter,
            "all x_i must be strictly positive, got " + format_num(v));
  for (double v : p_exponents)
    require(std::isfinite(v) && v > 0.0, ErrorKind::Parameter,
            "all p_i must be strictly positive, got " + format_num(v));

  double lhs = 0.0, inv_p = 0.0, log_weights = 0.0, log_prod_x = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    lhs += std::pow(x[i], p_exponents[i]);
    inv_p += 1.0 / p_exponents[i];
    log_weights += std::log(p_exponents[i]) / p_exponents[i];
    log_prod_x += std::log(x[i]);
  }
  const double p_eff = 1.0 / inv_p;
  const double rhs = std::exp(-std::log(p_eff) + p_eff * (log_weights + log_prod_x));
  check_finite_sides(lhs, rhs, "Young bound sides");
  return make_report_geq(
      "young-product-bound",
      {param("m", static_cast<int>(x.size())), param("p_effective", p_eff)},
      "sum_i x_i^{p_i} >= (1/p)*(prod_i p_i^{1/p_i})^p*(prod_i x_i)^p with 1/p = sum_i 1/p_i",
      "scalar inputs", lhs, rhs, tolerance, tolerance);
}

// ---------------------------------------------------------------------------
// Fuzz harness
// ---------------------------------------------------------------------------

namespace {

void note_failure(FuzzSummary& s, long long trial, const std::string& what) {
  if (s.first_failure_trial < 0 || trial < s.first_failure_trial) {
    s.first_failure_trial = trial;
    s.first_failure = what;
  }
}

void record_report(FuzzCheckStat& stat, FuzzSummary& s, const InequalityReport& rep,
                   long long trial, bool expect_sharp = false) {
  ++stat.trials;
  stat.worst_relative_slack = std::min(stat.worst_relative_slack, rep.relative_slack());
  const bool bad = !rep.pass || (expect_sharp && !rep.sharp);
  if (bad) {
    ++stat.violations;
    note_failure(s, trial,
                 rep.name + (rep.pass ? " expected sharp but was not" : " violated") +
                     ": lhs=" + std::to_string(rep.lhs) +
                     " rhs=" + std::to_string(rep.rhs));
  }
}

void run_trial(long long trial, const FuzzConfig& cfg, FuzzSummary& local) {
  std::mt19937_64 eng = trial_engine(cfg.seed, trial);
  const int m = uniform_int(eng, cfg.min_order, cfg.max_order);

  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = uniform(eng, -1.0, 1.0);
  const SpdMatrix a(Eigen::MatrixXd(g.transpose() * g +
                                    1e-3 * Eigen::MatrixXd::Identity(m, m)));

  // Part (1): descending nonnegative weights, p in [0, 1].
  {
    std::vector<double> w(static_cast<size_t>(m));
    for (auto& v : w) v = uniform(eng, 0.0, 2.0);
    std::sort(w.rbegin(), w.rend());
    if (uniform01(eng) < 0.25) w.back() = 0.0;
    double p = uniform01(eng);
    if (trial % 16 == 0) p = 1.0;
    if (trial % 16 == 1) p = 0.0;
    record_report(local.part1, local,
                  lemma_matrix_part1(
                      a,
                      WeightVector(w, OrderConstraint::Descending,
                                   Positivity::NonNegative),
                      p, cfg.tolerance),
                  trial);
  }

  // Part (2): ascending strictly positive weights, p >= 1 or p <= 0.
  {
    std::vector<double> w(static_cast<size_t>(m));
    for (auto& v : w) v = uniform(eng, 0.05, 2.0);
    std::sort(w.begin(), w.end());
    double p = (uniform01(eng) < 0.5) ? uniform(eng, 1.0, 4.0)
                                      : uniform(eng, -3.0, 0.0);
    if (trial % 16 == 2) p = 1.0;
    record_report(local.part2, local,
                  lemma_matrix_part2(
                      a,
                      WeightVector(w, OrderConstraint::Ascending,
                                   Positivity::StrictlyPositive),
                      p, cfg.tolerance),
                  trial);
  }

  // Part (3): subset products, p <= 0.
  {
    const int k = uniform_int(eng, 1, m);
    const double p = uniform(eng, -3.0, 0.0);
    record_report(local.part3, local, lemma_matrix_part3(a, p, k, cfg.tolerance),
                  trial);
  }

  // Young bound; every 8th trial is a constructed equality case.
  {
    const int ym = uniform_int(eng, 1, 6);
    std::vector<double> px(static_cast<size_t>(ym)), xv(static_cast<size_t>(ym));
    for (auto& v : px) v = uniform(eng, 0.4, 4.0);
    const bool equality_case = (trial % 8 == 0);
    if (equality_case) {
      double inv_p = 0.0;
      for (double v : px) inv_p += 1.0 / v;
      const double p_eff = 1.0 / inv_p;
      const double t_const = uniform(eng, 0.5, 2.0);
      for (size_t i = 0; i < px.size(); ++i) {
        const double qi = px[i] / p_eff;
        xv[i] = std::pow(t_const / qi, 1.0 / px[i]);
      }
    } else {
      for (auto& v : xv) v = uniform(eng, 0.1, 3.0);
    }
    record_report(local.young, local, young_product_bound(xv, px, cfg.tolerance),
                  trial, equality_case);
  }

  // Hadamard on a random index subset of A.
  {
    const int sz = uniform_int(eng, 1, m);
    std::vector<int> pool(static_cast<size_t>(m));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < sz; ++i) {
      const int j = uniform_int(eng, i, m - 1);
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(sz));
    record_report(local.hadamard, local, hadamard_check(a, pool, cfg.tolerance),
                  trial);
  }

  // Schur majorization on a random symmetric (possibly indefinite) matrix.
  {
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        const double v = uniform(eng, -2.0, 2.0);
        s(i, j) = v;
        s(j, i) = v;
      }
    const MajorizationVerdict verdict = schur_check(SpdMatrix(std::move(s)));
    ++local.schur_trials;
    if (verdict.relation != Relation::Majorized) {
      ++local.schur_violations;
      note_failure(local, trial, "schur_check did not return Majorized");
    }
  }

  // Majorization principle on a Robin Hood construction x majorized-by y.
  {
    const int n = uniform_int(eng, 2, 8);
    std::vector<double> y(static_cast<size_t>(n));
    for (auto& v : y) v = uniform(eng, 0.0, 3.0);
    std::vector<double> x = y;
    const int transfers = uniform_int(eng, 1, 4);
    for (int t = 0; t < transfers; ++t) {
      int i = uniform_int(eng, 0, n - 1), j = uniform_int(eng, 0, n - 1);
      if (x[static_cast<size_t>(i)] < x[static_cast<size_t>(j)]) std::swap(i, j);
      const double delta =
          0.5 * uniform01(eng) * (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
      x[static_cast<size_t>(i)] -= delta;
      x[static_cast<size_t>(j)] += delta;
    }
    const std::vector<ConvexSpec> catalog = convex_catalog();
    const ConvexSpec& f =
        catalog[static_cast<size_t>(uniform_int(eng, 0, static_cast<int>(catalog.size()) - 1))];
    ++local.principle_trials;
    try {
      majorization_principle_check(x, y, f);
    } catch (const Error& e) {
      ++local.principle_violations;
      note_failure(local, trial,
                   std::string("majorization principle failed for '") + f.name +
                       "': " + e.what());
    }
  }

  // Compound spectrum vs brute-force eigenvalue products, order-capped.
  {
    std::vector<int> candidates;
    for (int k = 1; k <= m; ++k)
      if (binomial_capped(m, k, kDefaultSubsetCap) <=
          static_cast<unsigned long long>(cfg.compound_order_cap))
        candidates.push_back(k);
    if (!candidates.empty()) {
      const int k = candidates[static_cast<size_t>(
          uniform_int(eng, 0, static_cast<int>(candidates.size()) - 1))];
      const SpdMatrix comp = compound_matrix(a, k);
      const std::vector<double> ceigs = jacobi_eigenvalues(comp);
      const std::vector<double> aeigs = jacobi_eigenvalues(a);
      std::vector<double> prods;
      prods.reserve(ceigs.size());
      for_each_subset(m, k, [&](const std::vector<int>& s) {
        double prod = 1.0;
        for (int i : s) prod *= aeigs[static_cast<size_t>(i)];
        prods.push_back(prod);
      });
      std::sort(prods.begin(), prods.end());
      double dev = 0.0;
      for (size_t i = 0; i < prods.size(); ++i)
        dev = std::max(dev, std::fabs(ceigs[i] - prods[i]) /
                                std::max(1.0, std::fabs(prods[i])));
      ++local.compound_trials;
      local.compound_worst_deviation = std::max(local.compound_worst_deviation, dev);
      if (dev > 1e-8) {
        ++local.compound_violations;
        note_failure(local, trial,
                     "compound spectrum deviates from eigenvalue products by " +
                         std::to_string(dev));
      }
    }
  }
}

void merge_stat(FuzzCheckStat& into, const FuzzCheckStat& from) {
  into.trials += from.trials;
  into.violations += from.violations;
  into.worst_relative_slack =
      std::min(into.worst_relative_slack, from.worst_relative_slack);
}

void merge_summary(FuzzSummary& into, const FuzzSummary& from) {
  merge_stat(into.part1, from.part1);
  merge_stat(into.part2, from.part2);
  merge_stat(into.part3, from.part3);
  merge_stat(into.young, from.young);
  merge_stat(into.hadamard, from.hadamard);
  into.schur_trials += from.schur_trials;
  into.schur_violations += from.schur_violations;
  into.principle_trials += from.principle_trials;
  into.principle_violations += from.principle_violations;
  into.compound_trials += from.compound_trials;
  into.compound_violations += from.compound_violations;
  into.compound_worst_deviation =
      std::max(into.compound_worst_deviation, from.compound_worst_deviation);
  if (from.first_failure_trial >= 0)
    note_failure(into, from.first_failure_trial, from.first_failure);
}

}  // namespace

bool FuzzSummary::all_pass() const {
  return part1.violations == 0 && part2.violations == 0 && part3.violations == 0 &&
         young.violations == 0 && hadamard.violations == 0 && schur_violations == 0 &&
         principle_violations == 0 && compound_violations == 0;
}

FuzzSummary fuzz_lemmas(const FuzzConfig& config) {
  require(config.trials >= 1, ErrorKind::Parameter, "trial count must be positive");
  require(config.min_order >= 1 && config.min_order <= config.max_order,
          ErrorKind::Parameter, "order range must satisfy 1 <= min <= max");
  require(config.max_order <= 64, ErrorKind::Parameter,
          "max order above 64 is outside the fuzz harness scope");
  require(std::isfinite(config.tolerance) && config.tolerance >= 0.0,
          ErrorKind::Parameter, "tolerance must be finite and nonnegative");
  require(config.compound_order_cap >= 1, ErrorKind::Parameter,
          "compound order cap must be positive");

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min({threads, 64, static_cast<int>(
                                                   std::max<long long>(config.trials, 1))}));

  std::vector<FuzzSummary> locals(static_cast<size_t>(threads));
  auto worker = [&](int t) {
    FuzzSummary& local = locals[static_cast<size_t>(t)];
    for (long long trial = t; trial < config.trials; trial += threads) {
      try {
        run_trial(trial, config, local);
      } catch (const std::exception& e) {
        // Generation is valid by construction, so any exception is a defect;
        // surface it as a counted failure rather than tearing the run down.
        ++local.principle_violations;
        note_failure(local, trial, std::string("trial raised: ") + e.what());
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  FuzzSummary total;
  for (const FuzzSummary& local : locals) merge_summary(total, local);
  return total;
}

std::string summarize(const FuzzSummary& s) {
  char line[256];
  std::string out;
  auto row = [&](const char* name, long long trials, long long violations,
                 double worst, bool has_worst) {
    if (has_worst)
      std::snprintf(line, sizeof(line), "  %-22s %10lld %12lld   %.3g\n", name,
                    trials, violations, worst);
    else
      std::snprintf(line, sizeof(line), "  %-22s %10lld %12lld   -\n", name, trials,
                    violations);
    out += line;
  };
  out += "  check                      trials   violations   worst rel slack\n";
  row("lemma-matrix-part1", s.part1.trials, s.part1.violations,
      s.part1.worst_relative_slack, s.part1.trials > 0);
  row("lemma-matrix-part2", s.part2.trials, s.part2.violations,
      s.part2.worst_relative_slack, s.part2.trials > 0);
  row("lemma-matrix-part3", s.part3.trials, s.part3.violations,
      s.part3.worst_relative_slack, s.part3.trials > 0);
  row("young-product-bound", s.young.trials, s.young.violations,
      s.young.worst_relative_slack, s.young.trials > 0);
  row("hadamard", s.hadamard.trials, s.hadamard.violations,
      s.hadamard.worst_relative_slack, s.hadamard.trials > 0);
  row("schur-majorization", s.schur_trials, s.schur_violations, 0.0, false);
  row("majorization-principle", s.principle_trials, s.principle_violations, 0.0,
      false);
  std::snprintf(line, sizeof(line), "  %-22s %10lld %12lld   max dev %.3g\n",
                "compound-spectrum", s.compound_trials, s.compound_violations,
                s.compound_worst_deviation);
  out += line;
  if (s.first_failure_trial >= 0) {
    std::snprintf(line, sizeof(line), "  first failure: trial %lld: ",
                  s.first_failure_trial);
    out += line;
    out += s.first_failure;
    out += '\n';
  }
  out += s.all_pass() ? "  overall: PASS\n" : "  overall: FAIL\n";
  return out;
}

}  // namespace steklov::ineq
