#pragma once

#include <string>
#include <vector>

#include "steklov/ineq.hpp"
#include "steklov/mesh.hpp"
#include "steklov/report.hpp"
#include "steklov/spectrum.hpp"

// Evaluators for the trace / inverse-trace eigenvalue inequalities relating
// Steklov spectra (sigma), their conjugate-form companions (sigma~, read from
// the same 0-form spectrum on surfaces), and boundary-Laplacian spectra
// (lambda).  Every evaluator computes both sides of one displayed inequality
// over explicitly indexed spectrum entries and returns an InequalityReport;
// out-of-range indices raise Index errors, never silent truncation.
//
// All index bookkeeping is 1-based.  Spectra carry their zero modes: sigma(1)
// = 0 on a connected domain, and the boundary Laplacian has one zero per
// boundary loop.  The offsets below skip exactly those zero modes.
namespace steklov::suite {

// Parameters of the two weighted theorem families.  `a` and `c` are weight
// sequences of length m; `a` must be descending and nonnegative, `c`
// descending and strictly positive.  `q_star` is derived via 1/q* + 1/q = 1.
struct TheoremParams {
  int r = 1;
  int s = 1;
  int m = 1;
  double p = 1.0;
  double q = 2.0;
  std::vector<double> a = {1.0};
  std::vector<double> c = {1.0};
  int k = 1;        // product order for the inverse-trace family, 1..m
  double mu = 1.0;  // balance weight, > 0
};

double q_star(double q);  // q/(q-1); requires q > 1

// Validation entry points. `validate_weighted_trace` enforces the regime
// q >= p >= 1, q > 1 of the weighted trace inequality;
// `validate_inverse_trace` enforces p > 0, q >= 1, mu > 0, 1 <= k <= m of the
// inverse-trace inequality.  Both check r, s, m >= 1 and the weight shapes.
void validate_weighted_trace(const TheoremParams& tp);
void validate_inverse_trace(const TheoremParams& tp);

// Index offsets shared by the evaluators, specialized to surfaces (n = 2):
// the (n-2)-form spectrum is the 0-form spectrum and its offset is b0.
// Construction refuses topology records outside the planar-surface scope.
struct IndexMap {
  int b0 = 1;
  int b1 = 0;
  int r = 1;
  int s = 1;

  int sigma0_index(int i) const { return r + i; }
  int sigma_n2_index(int i) const { return b0 + s + i - 1; }
  int lambda_index(int i) const { return b1 + r + s + i - 1; }
};

IndexMap make_index_map(const mesh::DomainTopology& topo, int r, int s);

// --- Weighted theorem family ------------------------------------------------

// (sum_i (a_i sigma~_{b0+s+i-1})^(1/p)) * (sum_i (c_i/sigma_{r+i})^(q/p))^(-1/q)
//   <= (sum_i (a_i lambda_{b1+r+s+i-1} / c_i)^(q*/p))^(1/q*)
// At m = 1 the report is canonicalized to the equivalent product form
// a1*sigma~*sigma/c1 <= a1*lambda/c1, which reduces bitwise to eval_yy.
InequalityReport eval_thm1(const Spectrum& sigma0, const Spectrum& sigma_n2,
                           const Spectrum& lambdas, const TheoremParams& tp,
                           const mesh::DomainTopology& topo);

// sum_{i1<...<ik} (prod_j 1/sigma~_{b0+s+ij-1})^p
//   + mu*C(m-1,k-1)*sum_i (1/sigma_{r+i})^q
//   >= (kp+q)/(pq) * p^(q/(kp+q)) * q^(kp/(kp+q)) * mu^(kp/(kp+q))
//      * sum_{i1<...<ik} (prod_j 1/lambda_{b1+r+s+ij-1})^(pq/(kp+q))
InequalityReport eval_thm2(const Spectrum& sigma0, const Spectrum& sigma_n2,
                           const Spectrum& lambdas, const TheoremParams& tp,
                           const mesh::DomainTopology& topo);

// sigma_{1+p} * sigma~_{b0+q} <= lambda_{b1+p+q};  p, q nonnegative integers.
InequalityReport eval_yy(const Spectrum& sigma0, const Spectrum& sigma_n2,
                         const Spectrum& lambdas, int p, int q,
                         const mesh::DomainTopology& topo);

// --- Product bounds on sigma_{p+1} sigma_{q+1} L^2 --------------------------

// sigma_{p+1}*sigma_{q+1}*L^2 <= (p+q)^2 pi^2 (p+q even), (p+q-1)^2 pi^2 (odd);
// simply connected planar domains.  p, q positive integers.
InequalityReport eval_hps(const Spectrum& sigma0, double boundary_length, int p,
                          int q);

// Same left side; right side multiplied by (genus + boundary_components)^2.
InequalityReport eval_gp(const Spectrum& sigma0, double boundary_length, int genus,
                         int boundary_components, int p, int q);

// Same left side; right side (p+q+2*genus+2*boundary_components-2)^2 pi^2 for
// p+q even and (p+q+2*genus+2*boundary_components-3)^2 pi^2 for p+q odd.  The
// odd exponent is the corrected form: it reduces to the simply connected bound
// at genus 0 with one boundary component and stays below the
// (genus+components)^2-scaled bound, which the constant-shift family is
// asserted to sharpen.
InequalityReport eval_k(const Spectrum& sigma0, double boundary_length, int genus,
                        int boundary_components, int p, int q);

// --- Inverse-trace family on simply connected planar domains ----------------

// sum_{i=1..2n} 1/sigma_{1+i} >= (L/pi) * sum_{i=1..n} 1/i
InequalityReport eval_hps_trace(const Spectrum& sigma0, double boundary_length,
                                int n);

// (L/pi)*(1, 1/2, ..., 1/n)  prec_w  (1/sigma_2+1/sigma_3, ...,
// 1/sigma_{2n}+1/sigma_{2n+1}): returns the raw majorization verdict.
ineq::MajorizationVerdict eval_majorized_form(const Spectrum& sigma0,
                                              double boundary_length, int n);

// Report wrapper for the majorized form: lhs = worst prefix excess, rhs = 0;
// sharp iff the relation is full majorization (prefixes and totals equal).
InequalityReport majorized_form_report(const Spectrum& sigma0,
                                       double boundary_length, int n);

// sum_{i=1..2n} (1/sigma_{1+i})^2 >= L^2/(2 pi^2) * sum_{i=1..n} 1/i^2
InequalityReport eval_inverse_trace_2(const Spectrum& sigma0,
                                      double boundary_length, int n);

// sum_i (1/sigma_{r+i})^q + sum_i (1/sigma~_j)^q
//   >= 2 sum_i (1/lambda_{b1+r+s+i-1})^(q/2)
// where j = b0+s+i-1 by default (the reduction of the inverse-trace theorem
// at p = q, k = mu = 1) and j = b0+r+i when literal_r_indexing is set (the
// index pattern of the standalone display).
InequalityReport eval_power_q(const Spectrum& sigma0, const Spectrum& sigma_n2,
                              const Spectrum& lambdas, double q, int r, int s,
                              int m, const mesh::DomainTopology& topo,
                              bool literal_r_indexing = false);

// sum_{i=1..n} (sigma_{2i}+sigma_{2i+1})/i^3
//   <= (4 sqrt(2) pi^2 / L^2) * (sum_{i=1..2n} (1/sigma_{1+i})^2)^(1/2)
//      * (sum_{i=1..n} 1/i^2)^(1/2)
// allow_limit = true evaluates the n -> infinity form
//   sum (sigma_{2i}+sigma_{2i+1})/i^3 <= (4 sqrt(3) pi^3 / (3 L^2))
//      * (sum (1/sigma_{1+i})^2)^(1/2)
// whose series converge in closed form only for an exact disk spectrum
// (sigma_{2i} = sigma_{2i+1} = i/R); other inputs raise Unsupported because
// the series tails are unknown.  n is ignored in limit mode.
InequalityReport eval_cor1(const Spectrum& sigma0, double boundary_length, int n,
                           bool allow_limit);

// 1/(sigma_2 ... sigma_{2n+1}) + (1/(2n)) sum_{i=1..2n} (1/sigma_{1+i})^(2n)
//   >= L^(2n) / (2^(2n-1) pi^(2n) (n!)^2)
InequalityReport eval_cor2(const Spectrum& sigma0, double boundary_length, int n);

// Open-question probe: sum_{j=1..n} 1/(sigma_{1+j} sigma_{2+j})
//   >= (L^2 / (4 pi^2)) * sum_{i=1..n} 1/i^2.
// pass means "observation consistent with the conjectured inequality" -- it
// is never a verification, and callers must not treat a failure as an error.
InequalityReport probe_open_question(const Spectrum& sigma0,
                                     double boundary_length, int n);

// --- Batch driver ------------------------------------------------------------

// One grid point for run_all / the command-line verifier.  `inequality` is a
// canonical name: thm1 | thm2 | yy | hps | gp | k | hps-trace | majorized |
// inverse-trace-2 | power-q | cor1 | cor2 | probe-open.  genus and
// boundary_components equal to -1 inherit the bundle topology.
struct VerifyRequest {
  std::string inequality;
  TheoremParams params;  // thm1 / thm2 / power-q
  int p = 1;             // yy (>= 0) and hps/gp/k (>= 1)
  int q = 1;
  int genus = -1;
  int boundary_components = -1;
  int n = 1;  // trace family, corollaries, probe
  bool allow_limit = false;
  bool literal_r_indexing = false;
};

// Spectra plus the shared geometric data the evaluators need.  On surfaces
// the sigma~ slot of ternary evaluators is served by `sigma0` itself.
struct SpectraBundle {
  Spectrum sigma0;   // Steklov spectrum, kind Steklov
  Spectrum lambdas;  // boundary Laplacian spectrum, kind BoundaryLaplacian
  double boundary_length = 0.0;
};

// The standard battery: a fixed, deterministic request list exercising every
// evaluator with parameters that are theorems for the given topology (the
// simply-connected-only product bound is included only when genus = 0 and
// boundary_components = 1).
std::vector<VerifyRequest> default_grid(const mesh::DomainTopology& topo);

// Evaluates every request in order.  Checks bundle consistency first: kinds
// match the slots, each spectrum shows exactly the number of zero modes the
// topology dictates (one for sigma, one per boundary loop for lambda), and
// boundary_length is positive; mismatches raise Config errors.  Evaluator
// errors propagate.  An empty grid yields an empty list.
std::vector<InequalityReport> run_all(const SpectraBundle& bundle,
                                      const std::vector<VerifyRequest>& grid,
                                      const mesh::DomainTopology& topo);

}  // namespace steklov::suite
