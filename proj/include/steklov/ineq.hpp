#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "steklov/report.hpp"
#include "steklov/spd_matrix.hpp"

// Majorization relations and the scalar/matrix inequalities used by the
// spectral verification suite: the three-part weighted eigenvalue-vs-diagonal
// lemma, compound (exterior-power) matrices, Hadamard and Schur checks, the
// weighted Young product bound, and a deterministic fuzz harness over all of
// them.
//
// Eigenvalues inside this module come from a self-contained cyclic Jacobi
// solver rather than the FEM module's solver, so the two halves of the
// project validate each other independently.
namespace steklov::ineq {

// Absolute-and-relative tolerance applied through the report formula
// lhs <= rhs*(1+tol)+tol; for the positive-sided checks in this module this
// is equivalent to an absolute slack of about tol*max(1,|lhs|,|rhs|).
inline constexpr double kDefaultTolerance = 1e-10;

// Hard cap on the number of k-subsets any combinatorial operation may
// enumerate.
inline constexpr unsigned long long kDefaultSubsetCap = 1000000;

// Relative floor on the smallest eigenvalue when evaluating powers p <= 0:
// smaller eigenvalues make negative powers numerically meaningless, so they
// are rejected rather than clipped.
inline constexpr double kNegativePowerFloor = 1e-8;

// Ascending eigenvalues of a symmetric matrix via cyclic Jacobi sweeps.
// Self-contained on purpose (see the module comment).  Positive definiteness
// is not required here; callers that need it check the returned spectrum.
std::vector<double> jacobi_eigenvalues(const SpdMatrix& a);

// C(m, k) clamped to cap+1 on overflow or when exceeding cap.
unsigned long long binomial_capped(int m, int k, unsigned long long cap);

// ---------------------------------------------------------------------------
// Weight vectors
// ---------------------------------------------------------------------------

enum class OrderConstraint { Descending, Ascending };
enum class Positivity { NonNegative, StrictlyPositive };

// A weight sequence whose ordering and sign constraints are validated exactly
// (no tolerance) at construction.  Indexing is 0-based.
class WeightVector {
 public:
  WeightVector(std::vector<double> values, OrderConstraint order_constraint,
               Positivity positivity);

  const std::vector<double>& values() const { return values_; }
  OrderConstraint order_constraint() const { return order_constraint_; }
  Positivity positivity() const { return positivity_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

  static WeightVector ones(int m, OrderConstraint order_constraint,
                           Positivity positivity = Positivity::StrictlyPositive);

 private:
  std::vector<double> values_;
  OrderConstraint order_constraint_;
  Positivity positivity_;
};

// ---------------------------------------------------------------------------
// Majorization
// ---------------------------------------------------------------------------

enum class Relation { Neither, WeaklyMajorized, Majorized };

// Result of comparing descending-order prefix sums of two sequences.
// Majorized is the stronger verdict and implies WeaklyMajorized.
struct MajorizationVerdict {
  Relation relation = Relation::Neither;
  std::vector<double> partial_sums_x;  // prefix sums of x sorted descending
  std::vector<double> partial_sums_y;  // prefix sums of y sorted descending
  std::optional<int> first_violation_index;  // 1-based prefix, set iff Neither
  double tolerance_used = 0.0;  // absolute prefix-comparison tolerance applied

  bool weakly_majorized() const { return relation != Relation::Neither; }
};

// Does y weakly majorize x (x `prec_w` y)?  Sorts both descending and
// compares every prefix sum with absolute tolerance
// (1e-12 + relative_tolerance) * scale, where scale = max(1, largest
// |prefix sum|).  Majorized additionally requires the total sums to agree
// within the same tolerance.  `relative_tolerance` widens the comparison for
// inputs that carry measurement error (e.g. finite-element spectra); leave it
// at 0 for exact-arithmetic data.
MajorizationVerdict weak_majorize(const std::vector<double>& x,
                                  const std::vector<double>& y,
                                  double relative_tolerance = 0.0);

// ---------------------------------------------------------------------------
// Convex-function catalog and the two majorization principles
// ---------------------------------------------------------------------------

enum class Monotonicity {
  Increasing,          // nondecreasing on all inputs it accepts
  IncreasingOnNonneg,  // nondecreasing only on [0, inf)
  NotMonotone,
};

struct ConvexSpec {
  std::string name;
  std::function<double(double)> fn;
  Monotonicity monotonicity = Monotonicity::NotMonotone;
  bool requires_nonneg = false;  // domain restricted to [0, inf)
};

ConvexSpec convex_square();            // t^2
ConvexSpec convex_abs();               // |t|
ConvexSpec convex_exp();               // exp(t)
ConvexSpec convex_hinge(double c);     // max(t - c, 0)
ConvexSpec convex_power(double p);     // t^p on t >= 0, requires p >= 1
ConvexSpec convex_neg_power(double p); // -t^p on t >= 0, requires 0 <= p <= 1

// Fixed representatives of every catalog family, for sweep tests.
std::vector<ConvexSpec> convex_catalog();

// The two basic majorization principles, checked rather than assumed:
//   (1) x prec_w y and f increasing convex  =>  f(x) prec_w f(y)
//   (2) x prec   y and f convex             =>  f(x) prec_w f(y)
// Preconditions are enforced (precondition error naming the failing prefix,
// or the non-increasing function); the conclusion is then computed and
// asserted to be at least WeaklyMajorized.  Returns the verdict on
// (f(x), f(y)).
MajorizationVerdict majorization_principle_check(const std::vector<double>& x,
                                                 const std::vector<double>& y,
                                                 const ConvexSpec& f);

// ---------------------------------------------------------------------------
// Weighted eigenvalue-vs-diagonal lemma, parts (1)-(3)
// ---------------------------------------------------------------------------
// Pairing convention, followed literally: eigenvalues are sorted ascending
// and paired with the weights as given; the diagonal stays in natural matrix
// order, also paired with the weights as given.  The right-hand side is
// therefore order-sensitive in the diagonal; the rearrangement step in the
// underlying proof is what makes natural order valid.

// Part (1): for 0 <= p <= 1 and descending nonnegative weights a,
//   sum_i (a_i * lambda_i(A))^p  <=  sum_i (a_i * A(i,i))^p.
InequalityReport lemma_matrix_part1(const SpdMatrix& a_matrix,
                                    const WeightVector& weights, double p,
                                    double tolerance = kDefaultTolerance);

// Part (2): for p >= 1 or p <= 0 and ascending strictly positive weights a,
//   sum_i (a_i * lambda_i(A))^p  >=  sum_i (a_i * A(i,i))^p.
InequalityReport lemma_matrix_part2(const SpdMatrix& a_matrix,
                                    const WeightVector& weights, double p,
                                    double tolerance = kDefaultTolerance);

// Part (3): for p <= 0 and 1 <= k <= order,
//   sum over k-subsets (prod lambda)^p  >=  sum over k-subsets (prod diag)^p.
InequalityReport lemma_matrix_part3(const SpdMatrix& a_matrix, double p, int k,
                                    double tolerance = kDefaultTolerance,
                                    unsigned long long subset_cap = kDefaultSubsetCap);

// k-th compound (exterior power) of A: entries indexed by k-subsets in
// lexicographic order, entry (S, T) = det A[S, T].  Its eigenvalues are all
// k-fold products of eigenvalues of A.
SpdMatrix compound_matrix(const SpdMatrix& a_matrix, int k,
                          unsigned long long subset_cap = kDefaultSubsetCap);

// Hadamard: a principal minor of an SPD matrix is at most the product of its
// diagonal entries.  `subset` holds distinct 0-based indices.
InequalityReport hadamard_check(const SpdMatrix& a_matrix,
                                const std::vector<int>& subset,
                                double tolerance = kDefaultTolerance);

// Schur: the diagonal of a symmetric matrix is majorized by its eigenvalues.
// Returns weak_majorize(diagonal, eigenvalues); Majorized for every symmetric
// input (totals agree by the trace identity).
MajorizationVerdict schur_check(const SpdMatrix& a_matrix);

// Weighted Young product bound: for x_i > 0 and p_i > 0 with 1/p = sum 1/p_i,
//   x_1^{p_1} + ... + x_m^{p_m}
//     >= (1/p) * (p_1^{1/p_1} ... p_m^{1/p_m})^p * (x_1 ... x_m)^p.
// The right side is computed in log space.  Equality holds exactly when
// (p_i/p) * x_i^{p_i} is the same for every i; the report's sharp flag
// detects it numerically.  The effective exponent p is recorded in params.
InequalityReport young_product_bound(const std::vector<double>& x,
                                     const std::vector<double>& p_exponents,
                                     double tolerance = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Fuzz harness
// ---------------------------------------------------------------------------

struct FuzzConfig {
  std::uint64_t seed = 42;
  long long trials = 10000;
  int min_order = 2;
  int max_order = 8;
  double tolerance = kDefaultTolerance;
  // Compound spectra are cross-checked against brute-force eigenvalue
  // products whenever C(m, k) <= compound_order_cap (cost control; unit tests
  // cover the larger orders on fixed instances).
  int compound_order_cap = 35;
  int threads = 0;  // 0 = hardware concurrency
};

struct FuzzCheckStat {
  long long trials = 0;
  long long violations = 0;
  // Smallest normalized slack seen ((rhs-lhs)/max(1,|lhs|,|rhs|) of the
  // normalized report); negative values are violations.
  double worst_relative_slack = std::numeric_limits<double>::infinity();
};

struct FuzzSummary {
  FuzzCheckStat part1, part2, part3, young, hadamard;
  long long schur_trials = 0;
  long long schur_violations = 0;
  long long principle_trials = 0;
  long long principle_violations = 0;
  long long compound_trials = 0;
  long long compound_violations = 0;
  double compound_worst_deviation = 0.0;  // max |eig - product| / max(1, |product|)
  long long first_failure_trial = -1;     // -1 = none
  std::string first_failure;

  bool all_pass() const;
};

// Runs every check above on `trials` independently generated instances
// (A = G^T G + 1e-3 I with G uniform in [-1,1], plus constructed Young
// equality cases).  Per-trial generators are split deterministically from the
// seed, so results are independent of thread count and schedule.
FuzzSummary fuzz_lemmas(const FuzzConfig& config);

// Human-readable multi-line summary table.
std::string summarize(const FuzzSummary& summary);

}  // namespace steklov::ineq
