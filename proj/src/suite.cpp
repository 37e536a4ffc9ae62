#include "steklov/suite.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "steklov/analytic.hpp"
#include "steklov/errors.hpp"

namespace steklov::suite {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr unsigned long long kSubsetCap = 1000000;  // max C(m, k) enumerated

std::string describe(const char* label, const Spectrum& s) {
  std::ostringstream out;
  out << label << '=';
  if (s.source().tag == SpectrumSource::Tag::Analytic) {
    out << "analytic[" << s.source().mesh_id << ']';
  } else {
    out << "fem[" << s.source().mesh_id << ",tol=" << s.source().tolerance << ']';
  }
  return out.str();
}

std::string join_inputs(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// Report tolerance discipline: analytic inputs are trusted to 1e-9; finite
// element inputs to the tolerance attached to their provenance, with the
// sharpness window opened to three times that.
struct Tolerances {
  double tolerance = 1e-9;
  double sharp = 1e-9;
};

Tolerances tolerances_for(std::initializer_list<const Spectrum*> spectra) {
  Tolerances t{0.0, 0.0};
  for (const Spectrum* s : spectra) {
    const bool analytic = s->source().tag == SpectrumSource::Tag::Analytic;
    t.tolerance = std::max(t.tolerance, analytic ? 1e-9 : s->source().tolerance);
    t.sharp = std::max(t.sharp, analytic ? 1e-9 : 3.0 * s->source().tolerance);
  }
  return t;
}

std::string weights_to_string(const std::vector<double>& w) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ',';
    out << w[i];
  }
  out << ')';
  return out.str();
}

// Reads a spectrum entry destined for a denominator: the indexed eigenvalue
// must be strictly positive, otherwise the offsets disagree with the number
// of zero modes actually present and the quotient would be meaningless.
double positive_value(const Spectrum& s, int index, const char* what) {
  const double v = s.value(index);
  require(v > 0.0, ErrorKind::Precondition,
          std::string(what) + " eigenvalue at index " + std::to_string(index) +
              " is zero; index offsets disagree with the spectrum's zero modes");
  return v;
}

void require_positive_integer(int value, const char* name) {
  require(value >= 1, ErrorKind::Parameter,
          std::string(name) + " must be a positive integer, got " +
              std::to_string(value));
}

void validate_common(const TheoremParams& tp) {
  require_positive_integer(tp.r, "r");
  require_positive_integer(tp.s, "s");
  require_positive_integer(tp.m, "m");
  require(static_cast<int>(tp.a.size()) == tp.m, ErrorKind::Parameter,
          "weight vector a must have length m = " + std::to_string(tp.m));
  require(static_cast<int>(tp.c.size()) == tp.m, ErrorKind::Parameter,
          "weight vector c must have length m = " + std::to_string(tp.m));
  // Delegate the ordering/sign checks to the validated weight type.
  ineq::WeightVector(tp.a, ineq::OrderConstraint::Descending,
                     ineq::Positivity::NonNegative);
  ineq::WeightVector(tp.c, ineq::OrderConstraint::Descending,
                     ineq::Positivity::StrictlyPositive);
}

// Enumerates k-subsets of {1..m} in lexicographic order, calling body with a
// vector of 1-based member indices.
template <typename Body>
void for_each_subset(int m, int k, Body&& body) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) idx[static_cast<std::size_t>(j)] = j + 1;
  while (true) {
    body(idx);
    int j = k - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == m - (k - 1 - j)) --j;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < k; ++t)
      idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

}  // namespace

double q_star(double q) {
  require(q > 1.0, ErrorKind::Parameter,
          "q* is defined by 1/q* + 1/q = 1 and needs q > 1");
  return q / (q - 1.0);
}

void validate_weighted_trace(const TheoremParams& tp) {
  validate_common(tp);
  require(std::isfinite(tp.p) && std::isfinite(tp.q), ErrorKind::Parameter,
          "exponents p, q must be finite");
  require(tp.q >= tp.p && tp.p >= 1.0 && tp.q > 1.0, ErrorKind::Parameter,
          "weighted trace regime requires q >= p >= 1 and q > 1");
}

void validate_inverse_trace(const TheoremParams& tp) {
  validate_common(tp);
  require(std::isfinite(tp.p) && std::isfinite(tp.q) && std::isfinite(tp.mu),
          ErrorKind::Parameter, "p, q, mu must be finite");
  require(tp.p > 0.0, ErrorKind::Parameter, "inverse trace regime requires p > 0");
  require(tp.q >= 1.0, ErrorKind::Parameter, "inverse trace regime requires q >= 1");
  require(tp.mu > 0.0, ErrorKind::Parameter, "inverse trace regime requires mu > 0");
  require(tp.k >= 1 && tp.k <= tp.m, ErrorKind::Parameter,
          "k must satisfy 1 <= k <= m");
}

IndexMap make_index_map(const mesh::DomainTopology& topo, int r, int s) {
  require_positive_integer(r, "r");
  require_positive_integer(s, "s");
  require(topo.b0 == 1, ErrorKind::Topology,
          "evaluators require a connected domain (b0 = 1)");
  require(topo.genus == 0, ErrorKind::Topology,
          "evaluators cover planar surfaces only (genus 0)");
  require(topo.boundary_components >= 1, ErrorKind::Topology,
          "domain must have a boundary");
  require(topo.b1 == 2 * topo.genus + topo.boundary_components - 1,
          ErrorKind::Topology, "inconsistent topology record: b1 != 2*genus + "
                               "boundary_components - 1");
  return IndexMap{topo.b0, topo.b1, r, s};
}

// --- Weighted theorem family -------------------------------------------------

InequalityReport eval_thm1(const Spectrum& sigma0, const Spectrum& sigma_n2,
                           const Spectrum& lambdas, const TheoremParams& tp,
                           const mesh::DomainTopology& topo) {
  validate_weighted_trace(tp);
  const IndexMap im = make_index_map(topo, tp.r, tp.s);
  const auto tols = tolerances_for({&sigma0, &sigma_n2, &lambdas});
  const double qs = q_star(tp.q);

  double lhs = 0.0;
  double rhs = 0.0;
  if (tp.m == 1) {
    // Canonical product form of the single-term case: the 1/p-th power on
    // both sides cancels, leaving a1*sigma~*sigma/c1 <= a1*lambda/c1.  This
    // reduces bitwise to eval_yy when a1 = c1 = 1.
    const double st = sigma_n2.value(im.sigma_n2_index(1));
    const double s0 = positive_value(sigma0, im.sigma0_index(1), "steklov");
    lhs = tp.a[0] * st * s0 / tp.c[0];
    rhs = tp.a[0] * lambdas.value(im.lambda_index(1)) / tp.c[0];
  } else {
    double trace_sum = 0.0;    // sum (a_i sigma~)^(1/p)
    double inverse_sum = 0.0;  // sum (c_i / sigma)^(q/p)
    double lambda_sum = 0.0;   // sum (a_i lambda / c_i)^(q*/p)
    for (int i = 1; i <= tp.m; ++i) {
      const double a = tp.a[static_cast<std::size_t>(i - 1)];
      const double c = tp.c[static_cast<std::size_t>(i - 1)];
      const double st = sigma_n2.value(im.sigma_n2_index(i));
      const double s0 = positive_value(sigma0, im.sigma0_index(i), "steklov");
      const double lam = lambdas.value(im.lambda_index(i));
      trace_sum += std::pow(a * st, 1.0 / tp.p);
      inverse_sum += std::pow(c / s0, tp.q / tp.p);
      lambda_sum += std::pow(a * lam / c, qs / tp.p);
    }
    lhs = trace_sum * std::pow(inverse_sum, -1.0 / tp.q);
    rhs = std::pow(lambda_sum, 1.0 / qs);
  }

  return make_report(
      "thm1",
      {param("r", tp.r), param("s", tp.s), param("m", tp.m), param("p", tp.p),
       param("q", tp.q), param("q_star", qs), param("a", weights_to_string(tp.a)),
       param("c", weights_to_string(tp.c)), param("b0", topo.b0),
       param("b1", topo.b1)},
      "(sum_i (a_i*sigma~_(b0+s+i-1))^(1/p)) * (sum_i (c_i/sigma_(r+i))^(q/p))^(-1/q)"
      " <= (sum_i (a_i*lambda_(b1+r+s+i-1)/c_i)^(q*/p))^(1/q*)",
      join_inputs({describe("sigma", sigma0), describe("sigma~", sigma_n2),
                   describe("lambda", lambdas)}),
      lhs, rhs, tols.tolerance, tols.sharp);
}

InequalityReport eval_thm2(const Spectrum& sigma0, const Spectrum& sigma_n2,
                           const Spectrum& lambdas, const TheoremParams& tp,
                           const mesh::DomainTopology& topo) {
  validate_inverse_trace(tp);
  const IndexMap im = make_index_map(topo, tp.r, tp.s);
  const auto tols = tolerances_for({&sigma0, &sigma_n2, &lambdas});
  const unsigned long long subsets =
      ineq::binomial_capped(tp.m, tp.k, kSubsetCap);
  require(subsets <= kSubsetCap, ErrorKind::Unsupported,
          "C(m, k) exceeds the subset enumeration cap of 1e6");

  // Pre-read the eigenvalues so each subset product is a plain multiply loop.
  std::vector<double> inv_sigma_t(static_cast<std::size_t>(tp.m));
  std::vector<double> inv_lambda(static_cast<std::size_t>(tp.m));
  for (int i = 1; i <= tp.m; ++i) {
    inv_sigma_t[static_cast<std::size_t>(i - 1)] =
        1.0 / positive_value(sigma_n2, im.sigma_n2_index(i), "companion steklov");
    inv_lambda[static_cast<std::size_t>(i - 1)] =
        1.0 / positive_value(lambdas, im.lambda_index(i), "boundary laplacian");
  }

  const double exponent = tp.p * tp.q / (tp.k * tp.p + tp.q);
  double sigma_subset_sum = 0.0;
  double lambda_subset_sum = 0.0;
  for_each_subset(tp.m, tp.k, [&](const std::vector<int>& idx) {
    double prod_sigma = 1.0;
    double prod_lambda = 1.0;
    for (int member : idx) {
      prod_sigma *= inv_sigma_t[static_cast<std::size_t>(member - 1)];
      prod_lambda *= inv_lambda[static_cast<std::size_t>(member - 1)];
    }
    sigma_subset_sum += std::pow(prod_sigma, tp.p);
    lambda_subset_sum += std::pow(prod_lambda, exponent);
  });

  double inverse_power_sum = 0.0;
  for (int i = 1; i <= tp.m; ++i)
    inverse_power_sum +=
        std::pow(1.0 / positive_value(sigma0, im.sigma0_index(i), "steklov"), tp.q);

  const double pairing_weight =
      static_cast<double>(ineq::binomial_capped(tp.m - 1, tp.k - 1, kSubsetCap));
  const double kp_q = tp.k * tp.p + tp.q;
  const double constant = (kp_q / (tp.p * tp.q)) * std::pow(tp.p, tp.q / kp_q) *
                          std::pow(tp.q, tp.k * tp.p / kp_q) *
                          std::pow(tp.mu, tp.k * tp.p / kp_q);

  const double displayed_lhs =
      sigma_subset_sum + tp.mu * pairing_weight * inverse_power_sum;
  const double displayed_rhs = constant * lambda_subset_sum;

  return make_report_geq(
      "thm2",
      {param("r", tp.r), param("s", tp.s), param("m", tp.m), param("k", tp.k),
       param("p", tp.p), param("q", tp.q), param("mu", tp.mu),
       param("b0", topo.b0), param("b1", topo.b1)},
      "sum_subsets (prod 1/sigma~)^p + mu*C(m-1,k-1)*sum_i (1/sigma_(r+i))^q"
      " >= (kp+q)/(pq) * p^(q/(kp+q)) * q^(kp/(kp+q)) * mu^(kp/(kp+q))"
      " * sum_subsets (prod 1/lambda)^(pq/(kp+q))",
      join_inputs({describe("sigma", sigma0), describe("sigma~", sigma_n2),
                   describe("lambda", lambdas)}),
      displayed_lhs, displayed_rhs, tols.tolerance, tols.sharp);
}

InequalityReport eval_yy(const Spectrum& sigma0, const Spectrum& sigma_n2,
                         const Spectrum& lambdas, int p, int q,
                         const mesh::DomainTopology& topo) {
  require(p >= 0 && q >= 0, ErrorKind::Parameter,
          "exponent offsets p, q must be nonnegative integers");
  const IndexMap im = make_index_map(topo, 1, 1);
  const auto tols = tolerances_for({&sigma0, &sigma_n2, &lambdas});

  const double lhs = sigma0.value(1 + p) * sigma_n2.value(im.b0 + q);
  const double rhs = lambdas.value(im.b1 + p + q);
  return make_report(
      "yy",
      {param("p", p), param("q", q), param("b0", topo.b0), param("b1", topo.b1)},
      "sigma_(1+p) * sigma~_(b0+q) <= lambda_(b1+p+q)",
      join_inputs({describe("sigma", sigma0), describe("sigma~", sigma_n2),
                   describe("lambda", lambdas)}),
      lhs, rhs, tols.tolerance, tols.sharp);
}

// --- Product bounds ----------------------------------------------------------

namespace {

InequalityReport product_bound_report(const char* name, const Spectrum& sigma0,
                                      double boundary_length, int genus,
                                      int boundary_components, int p, int q,
                                      double even_base, double odd_base) {
  require_positive_integer(p, "p");
  require_positive_integer(q, "q");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});
  const double lhs = sigma0.value(p + 1) * sigma0.value(q + 1) * boundary_length *
                     boundary_length;
  const double base = (p + q) % 2 == 0 ? even_base : odd_base;
  const double rhs = base * base * kPi * kPi;
  std::vector<std::pair<std::string, std::string>> params = {
      param("p", p), param("q", q), param("L", boundary_length)};
  if (genus >= 0) {
    params.push_back(param("genus", genus));
    params.push_back(param("boundary_components", boundary_components));
  }
  return make_report(name, std::move(params),
                     "sigma_(p+1) * sigma_(q+1) * L^2 <= C(p,q,topology)^2 * pi^2",
                     describe("sigma", sigma0), lhs, rhs, tols.tolerance,
                     tols.sharp);
}

}  // namespace

InequalityReport eval_hps(const Spectrum& sigma0, double boundary_length, int p,
                          int q) {
  return product_bound_report("hps", sigma0, boundary_length, -1, -1, p, q,
                              static_cast<double>(p + q),
                              static_cast<double>(p + q - 1));
}

InequalityReport eval_gp(const Spectrum& sigma0, double boundary_length, int genus,
                         int boundary_components, int p, int q) {
  require(genus >= 0, ErrorKind::Parameter, "genus must be nonnegative");
  require_positive_integer(boundary_components, "boundary_components");
  const double scale = genus + boundary_components;
  return product_bound_report("gp", sigma0, boundary_length, genus,
                              boundary_components, p, q, scale * (p + q),
                              scale * (p + q - 1));
}

InequalityReport eval_k(const Spectrum& sigma0, double boundary_length, int genus,
                        int boundary_components, int p, int q) {
  require(genus >= 0, ErrorKind::Parameter, "genus must be nonnegative");
  require_positive_integer(boundary_components, "boundary_components");
  const double shift = 2 * genus + 2 * boundary_components;
  return product_bound_report("k", sigma0, boundary_length, genus,
                              boundary_components, p, q, p + q + shift - 2,
                              p + q + shift - 3);
}

// --- Inverse-trace family ----------------------------------------------------

InequalityReport eval_hps_trace(const Spectrum& sigma0, double boundary_length,
                                int n) {
  require_positive_integer(n, "n");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});
  double lhs = 0.0;
  for (int i = 1; i <= 2 * n; ++i)
    lhs += 1.0 / positive_value(sigma0, 1 + i, "steklov");
  const double rhs = boundary_length / kPi * analytic::partial_zeta(n, 1.0);
  return make_report_geq(
      "hps-trace", {param("n", n), param("L", boundary_length)},
      "sum_{i=1..2n} 1/sigma_(1+i) >= (L/pi) * sum_{i=1..n} 1/i",
      describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
}

ineq::MajorizationVerdict eval_majorized_form(const Spectrum& sigma0,
                                              double boundary_length, int n) {
  require_positive_integer(n, "n");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    x[static_cast<std::size_t>(i - 1)] = boundary_length / kPi / i;
    y[static_cast<std::size_t>(i - 1)] =
        1.0 / positive_value(sigma0, 2 * i, "steklov") +
        1.0 / positive_value(sigma0, 2 * i + 1, "steklov");
  }
  // Prefix comparisons inherit the spectrum's source accuracy, so a
  // finite-element spectrum is judged at its own resolution.
  return ineq::weak_majorize(x, y, tolerances_for({&sigma0}).tolerance);
}

InequalityReport majorized_form_report(const Spectrum& sigma0,
                                       double boundary_length, int n) {
  const ineq::MajorizationVerdict verdict =
      eval_majorized_form(sigma0, boundary_length, n);
  const auto tols = tolerances_for({&sigma0});

  // Worst prefix excess of the dominated sequence over the dominating one;
  // weak majorization holds iff it stays at or below zero (within the
  // tolerance the comparison itself used).
  double excess = 0.0;
  for (std::size_t i = 0; i < verdict.partial_sums_x.size(); ++i) {
    excess = std::max(excess,
                      verdict.partial_sums_x[i] - verdict.partial_sums_y[i]);
  }
  InequalityReport report = make_report(
      "majorized", {param("n", n), param("L", boundary_length)},
      "(L/pi)*(1,1/2,...,1/n) prec_w (1/sigma_2+1/sigma_3, ..., "
      "1/sigma_(2n)+1/sigma_(2n+1)): max prefix excess <= 0",
      describe("sigma", sigma0), excess, 0.0, verdict.tolerance_used, tols.sharp);
  require(report.pass == verdict.weakly_majorized(), ErrorKind::Internal,
          "majorized-form report disagrees with the majorization verdict");
  // Sharp means the stronger relation: every prefix is tight in total.
  report.sharp = verdict.relation == ineq::Relation::Majorized;
  return report;
}

InequalityReport eval_inverse_trace_2(const Spectrum& sigma0,
                                      double boundary_length, int n) {
  require_positive_integer(n, "n");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});
  double lhs = 0.0;
  for (int i = 1; i <= 2 * n; ++i) {
    const double inv = 1.0 / positive_value(sigma0, 1 + i, "steklov");
    lhs += inv * inv;
  }
  const double rhs = boundary_length * boundary_length / (2.0 * kPi * kPi) *
                     analytic::partial_zeta(n, 2.0);
  return make_report_geq(
      "inverse-trace-2", {param("n", n), param("L", boundary_length)},
      "sum_{i=1..2n} (1/sigma_(1+i))^2 >= L^2/(2 pi^2) * sum_{i=1..n} 1/i^2",
      describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
}

InequalityReport eval_power_q(const Spectrum& sigma0, const Spectrum& sigma_n2,
                              const Spectrum& lambdas, double q, int r, int s,
                              int m, const mesh::DomainTopology& topo,
                              bool literal_r_indexing) {
  require(std::isfinite(q) && q >= 1.0, ErrorKind::Parameter,
          "power family requires q >= 1");
  require_positive_integer(m, "m");
  const IndexMap im = make_index_map(topo, r, s);
  const auto tols = tolerances_for({&sigma0, &sigma_n2, &lambdas});

  double lhs = 0.0;
  for (int i = 1; i <= m; ++i)
    lhs += std::pow(1.0 / positive_value(sigma0, im.sigma0_index(i), "steklov"),
                    q);
  for (int i = 1; i <= m; ++i) {
    const int index =
        literal_r_indexing ? im.b0 + r + i : im.sigma_n2_index(i);
    lhs += std::pow(
        1.0 / positive_value(sigma_n2, index, "companion steklov"), q);
  }
  double rhs = 0.0;
  for (int i = 1; i <= m; ++i)
    rhs += std::pow(1.0 / positive_value(lambdas, im.lambda_index(i),
                                         "boundary laplacian"),
                    q / 2.0);
  rhs *= 2.0;

  return make_report_geq(
      "power-q",
      {param("q", q), param("r", r), param("s", s), param("m", m),
       param("indexing", literal_r_indexing ? "literal-r" : "s-based"),
       param("b0", topo.b0), param("b1", topo.b1)},
      "sum_i (1/sigma_(r+i))^q + sum_i (1/sigma~_j)^q"
      " >= 2 * sum_i (1/lambda_(b1+r+s+i-1))^(q/2)",
      join_inputs({describe("sigma", sigma0), describe("sigma~", sigma_n2),
                   describe("lambda", lambdas)}),
      lhs, rhs, tols.tolerance, tols.sharp);
}

InequalityReport eval_cor1(const Spectrum& sigma0, double boundary_length, int n,
                           bool allow_limit) {
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});
  const double l2 = boundary_length * boundary_length;

  if (allow_limit) {
    // The infinite-series form.  Both series have closed forms only when the
    // spectrum is an exact disk spectrum sigma_{2i} = sigma_{2i+1} = i/R; the
    // whole available head is checked against that pattern before the tails
    // are summed in closed form, and anything else is out of scope.
    require(sigma0.count() >= 3, ErrorKind::Parameter,
            "limit form needs at least three eigenvalues to identify the disk");
    require(sigma0.value(1) == 0.0, ErrorKind::Unsupported,
            "limit form requires an exact disk spectrum (sigma_1 = 0)");
    const double sigma2 = positive_value(sigma0, 2, "steklov");
    const double radius = 1.0 / sigma2;
    for (int i = 1; i + 1 <= sigma0.count(); ++i) {
      const double expected = ((i + 1) / 2) / radius;
      require(std::fabs(sigma0.value(1 + i) - expected) <= 1e-12 * expected,
              ErrorKind::Unsupported,
              "limit form requires an exact disk spectrum (series tails are "
              "unknown otherwise)");
    }
    const double zeta2 = analytic::partial_zeta(analytic::kInfiniteTerms, 2.0);
    const double lhs = 2.0 * zeta2 / radius;
    const double rhs = 4.0 * std::sqrt(3.0) * kPi * kPi * kPi / (3.0 * l2) *
                       std::sqrt(2.0 * zeta2) * radius;
    return make_report(
        "cor1",
        {param("n", "infinity"), param("L", boundary_length),
         param("radius", radius)},
        "sum_{i>=1} (sigma_(2i)+sigma_(2i+1))/i^3"
        " <= (4 sqrt(3) pi^3 / (3 L^2)) * (sum_{i>=1} (1/sigma_(1+i))^2)^(1/2)",
        describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
  }

  require_positive_integer(n, "n");
  double lhs = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double num = sigma0.value(2 * i) + sigma0.value(2 * i + 1);
    lhs += num / (static_cast<double>(i) * i * i);
  }
  double inverse_square_sum = 0.0;
  for (int i = 1; i <= 2 * n; ++i) {
    const double inv = 1.0 / positive_value(sigma0, 1 + i, "steklov");
    inverse_square_sum += inv * inv;
  }
  const double rhs = 4.0 * std::sqrt(2.0) * kPi * kPi / l2 *
                     std::sqrt(inverse_square_sum) *
                     std::sqrt(analytic::partial_zeta(n, 2.0));
  return make_report(
      "cor1", {param("n", n), param("L", boundary_length)},
      "sum_{i=1..n} (sigma_(2i)+sigma_(2i+1))/i^3 <= (4 sqrt(2) pi^2 / L^2)"
      " * (sum_{i=1..2n} (1/sigma_(1+i))^2)^(1/2) * (sum_{i=1..n} 1/i^2)^(1/2)",
      describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
}

InequalityReport eval_cor2(const Spectrum& sigma0, double boundary_length, int n) {
  require_positive_integer(n, "n");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});

  double product = 1.0;
  for (int i = 2; i <= 2 * n + 1; ++i)
    product *= positive_value(sigma0, i, "steklov");
  double power_sum = 0.0;
  for (int i = 1; i <= 2 * n; ++i)
    power_sum += std::pow(1.0 / sigma0.value(1 + i), 2.0 * n);
  const double lhs = 1.0 / product + power_sum / (2.0 * n);

  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const double rhs = std::pow(boundary_length, 2.0 * n) /
                     (std::ldexp(1.0, 2 * n - 1) * std::pow(kPi, 2.0 * n) *
                      factorial * factorial);
  return make_report_geq(
      "cor2", {param("n", n), param("L", boundary_length)},
      "1/(sigma_2*...*sigma_(2n+1)) + (1/(2n)) sum_{i=1..2n} (1/sigma_(1+i))^(2n)"
      " >= L^(2n) / (2^(2n-1) pi^(2n) (n!)^2)",
      describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
}

InequalityReport probe_open_question(const Spectrum& sigma0,
                                     double boundary_length, int n) {
  require_positive_integer(n, "n");
  require(boundary_length > 0.0 && std::isfinite(boundary_length),
          ErrorKind::Parameter, "boundary length must be positive");
  const auto tols = tolerances_for({&sigma0});
  double lhs = 0.0;
  for (int j = 1; j <= n; ++j)
    lhs += 1.0 / (positive_value(sigma0, 1 + j, "steklov") *
                  positive_value(sigma0, 2 + j, "steklov"));
  const double rhs = boundary_length * boundary_length / (4.0 * kPi * kPi) *
                     analytic::partial_zeta(n, 2.0);
  InequalityReport report = make_report_geq(
      "probe-open", {param("n", n), param("L", boundary_length)},
      "conjectured: sum_{j=1..n} 1/(sigma_(1+j)*sigma_(2+j))"
      " >= L^2/(4 pi^2) * sum_{i=1..n} 1/i^2  [probe only, not a theorem]",
      describe("sigma", sigma0), lhs, rhs, tols.tolerance, tols.sharp);
  return report;
}

// --- Batch driver ------------------------------------------------------------

std::vector<VerifyRequest> default_grid(const mesh::DomainTopology& topo) {
  std::vector<VerifyRequest> grid;
  const auto add = [&](VerifyRequest r) { grid.push_back(std::move(r)); };

  for (const auto& [p, q] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
    VerifyRequest r;
    r.inequality = "yy";
    r.p = p;
    r.q = q;
    add(r);
  }
  {
    VerifyRequest r;
    r.inequality = "thm1";
    r.params = TheoremParams{1, 1, 1, 1.0, 2.0, {1.0}, {1.0}};
    add(r);
    r.params = TheoremParams{1, 1, 2, 1.0, 2.0, {1.0, 1.0}, {1.0, 1.0}};
    add(r);
    r.params = TheoremParams{1, 1, 2, 2.0, 3.0, {2.0, 1.0}, {1.0, 1.0}};
    add(r);
  }
  {
    VerifyRequest r;
    r.inequality = "thm2";
    r.params = TheoremParams{1, 1, 2, 1.0, 2.0, {1.0, 1.0}, {1.0, 1.0}, 2, 0.5};
    add(r);
    r.params = TheoremParams{1, 1, 2, 2.0, 2.0, {1.0, 1.0}, {1.0, 1.0}, 1, 1.0};
    add(r);
    r.params = TheoremParams{1,   1,   3,          1.0,
                             2.0, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0},
                             2,   1.0 / 3.0};
    add(r);
  }
  {
    VerifyRequest r;
    r.inequality = "power-q";
    r.params = TheoremParams{1, 1, 2, 2.0, 2.0, {1.0, 1.0}, {1.0, 1.0}};
    add(r);
  }
  if (topo.genus == 0 && topo.boundary_components == 1) {
    for (const auto& [p, q] : {std::pair{1, 1}, {1, 2}}) {
      VerifyRequest r;
      r.inequality = "hps";
      r.p = p;
      r.q = q;
      add(r);
    }
  }
  for (const char* name : {"gp", "k"}) {
    VerifyRequest r;
    r.inequality = name;
    r.p = 1;
    r.q = 2;
    add(r);  // genus / boundary_components inherited from the bundle topology
  }
  if (topo.genus == 0 && topo.boundary_components == 1) {
    for (int n : {1, 3}) {
      VerifyRequest r;
      r.inequality = "hps-trace";
      r.n = n;
      add(r);
    }
    {
      VerifyRequest r;
      r.inequality = "majorized";
      r.n = 3;
      add(r);
      r.inequality = "inverse-trace-2";
      r.n = 2;
      add(r);
    }
    for (int n : {1, 2}) {
      VerifyRequest r;
      r.inequality = "cor1";
      r.n = n;
      add(r);
      r.inequality = "cor2";
      add(r);
    }
    {
      VerifyRequest r;
      r.inequality = "probe-open";
      r.n = 2;
      add(r);
    }
  }
  return grid;
}

namespace {

int exact_zero_count(const Spectrum& s) {
  int zeros = 0;
  for (double v : s.values()) zeros += v == 0.0 ? 1 : 0;
  return zeros;
}

void validate_bundle(const SpectraBundle& bundle,
                     const mesh::DomainTopology& topo) {
  require(bundle.sigma0.kind() == SpectrumKind::Steklov, ErrorKind::Config,
          "bundle sigma0 slot must hold a Steklov spectrum");
  require(bundle.lambdas.kind() == SpectrumKind::BoundaryLaplacian,
          ErrorKind::Config,
          "bundle lambdas slot must hold a boundary Laplacian spectrum");
  require(bundle.boundary_length > 0.0 &&
              std::isfinite(bundle.boundary_length),
          ErrorKind::Config, "bundle boundary length must be positive");
  // Zero-mode counts are the observable fingerprint of the topology: one for
  // the Steklov spectrum of a connected domain, one per boundary loop for the
  // boundary Laplacian.  Both solvers emit exact zeros for those modes.
  require(bundle.sigma0.count() >= topo.b0 + 1 &&
              bundle.lambdas.count() >= topo.boundary_components + 1,
          ErrorKind::Config,
          "bundle spectra are too short to exhibit their zero modes");
  require(exact_zero_count(bundle.sigma0) == topo.b0, ErrorKind::Config,
          "sigma0 zero modes disagree with the topology (expected " +
              std::to_string(topo.b0) + ")");
  require(exact_zero_count(bundle.lambdas) == topo.boundary_components,
          ErrorKind::Config,
          "lambda zero modes disagree with the topology (expected one per "
          "boundary loop, " +
              std::to_string(topo.boundary_components) + ")");
}

}  // namespace

std::vector<InequalityReport> run_all(const SpectraBundle& bundle,
                                      const std::vector<VerifyRequest>& grid,
                                      const mesh::DomainTopology& topo) {
  validate_bundle(bundle, topo);
  std::vector<InequalityReport> reports;
  reports.reserve(grid.size());
  for (const VerifyRequest& req : grid) {
    const int genus = req.genus >= 0 ? req.genus : topo.genus;
    const int components = req.boundary_components >= 1
                               ? req.boundary_components
                               : topo.boundary_components;
    const auto& s = bundle.sigma0;
    const double l = bundle.boundary_length;
    if (req.inequality == "thm1") {
      reports.push_back(eval_thm1(s, s, bundle.lambdas, req.params, topo));
    } else if (req.inequality == "thm2") {
      reports.push_back(eval_thm2(s, s, bundle.lambdas, req.params, topo));
    } else if (req.inequality == "yy") {
      reports.push_back(eval_yy(s, s, bundle.lambdas, req.p, req.q, topo));
    } else if (req.inequality == "hps") {
      reports.push_back(eval_hps(s, l, req.p, req.q));
    } else if (req.inequality == "gp") {
      reports.push_back(eval_gp(s, l, genus, components, req.p, req.q));
    } else if (req.inequality == "k") {
      reports.push_back(eval_k(s, l, genus, components, req.p, req.q));
    } else if (req.inequality == "hps-trace") {
      reports.push_back(eval_hps_trace(s, l, req.n));
    } else if (req.inequality == "majorized") {
      reports.push_back(majorized_form_report(s, l, req.n));
    } else if (req.inequality == "inverse-trace-2") {
      reports.push_back(eval_inverse_trace_2(s, l, req.n));
    } else if (req.inequality == "power-q") {
      reports.push_back(eval_power_q(s, s, bundle.lambdas, req.params.q,
                                     req.params.r, req.params.s, req.params.m,
                                     topo, req.literal_r_indexing));
    } else if (req.inequality == "cor1") {
      reports.push_back(eval_cor1(s, l, req.n, req.allow_limit));
    } else if (req.inequality == "cor2") {
      reports.push_back(eval_cor2(s, l, req.n));
    } else if (req.inequality == "probe-open") {
      reports.push_back(probe_open_question(s, l, req.n));
    } else {
      fail(ErrorKind::Parameter, "unknown inequality name '" + req.inequality +
                                     "'; expected one of thm1, thm2, yy, hps, "
                                     "gp, k, hps-trace, majorized, "
                                     "inverse-trace-2, power-q, cor1, cor2, "
                                     "probe-open");
    }
  }
  return reports;
}

}  // namespace steklov::suite
