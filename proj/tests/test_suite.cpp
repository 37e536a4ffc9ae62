#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "steklov/analytic.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/mesh.hpp"
#include "steklov/suite.hpp"

using steklov::Error;
using steklov::ErrorKind;
using steklov::InequalityReport;
using steklov::Spectrum;
namespace an = steklov::analytic;
namespace fem = steklov::fem;
namespace mesh = steklov::mesh;
namespace suite = steklov::suite;

namespace {

constexpr double kPi = 3.14159265358979323846;
const mesh::DomainTopology kDiskTopo{0, 1, 1, 0};
const mesh::DomainTopology kAnnulusTopo{0, 2, 1, 1};

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a steklov::Error");
  return ErrorKind::Internal;
}

struct DiskInputs {
  Spectrum sigma;
  Spectrum lambda;
  double length;
};

DiskInputs disk_inputs(int sigma_count = 12, int lambda_count = 12) {
  return {an::steklov_disk(1.0, sigma_count),
          an::laplacian_circle(2.0 * kPi, lambda_count), 2.0 * kPi};
}

DiskInputs annulus_inputs(int sigma_count = 9, int lambda_count = 8) {
  return {an::steklov_annulus(0.5, 1.0, sigma_count),
          an::laplacian_circles({2.0 * kPi, kPi}, lambda_count), 3.0 * kPi};
}

suite::TheoremParams unit_params(int m, double p, double q) {
  suite::TheoremParams tp;
  tp.m = m;
  tp.p = p;
  tp.q = q;
  tp.a.assign(static_cast<std::size_t>(m), 1.0);
  tp.c.assign(static_cast<std::size_t>(m), 1.0);
  return tp;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters and index map
// ---------------------------------------------------------------------------

TEST_CASE("q_star solves the conjugate-exponent equation") {
  CHECK(suite::q_star(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(suite::q_star(1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(suite::q_star(3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(kind_of([] { suite::q_star(1.0); }) == ErrorKind::Parameter);
}

TEST_CASE("theorem parameter validation") {
  suite::TheoremParams tp = unit_params(2, 1.0, 2.0);
  CHECK_NOTHROW(suite::validate_weighted_trace(tp));
  CHECK_NOTHROW(suite::validate_inverse_trace(tp));

  auto expect_param = [](suite::TheoremParams bad, bool weighted) {
    CHECK(kind_of([&] {
            weighted ? suite::validate_weighted_trace(bad)
                     : suite::validate_inverse_trace(bad);
          }) == ErrorKind::Parameter);
  };

  // Weighted trace regime q >= p >= 1, q > 1.
  tp.p = 3.0;  // p > q
  expect_param(tp, true);
  tp.p = 0.5;  // p < 1
  expect_param(tp, true);
  tp.p = 1.0;
  tp.q = 1.0;  // q = 1 excluded
  expect_param(tp, true);

  // Inverse trace regime p > 0, q >= 1, mu > 0, 1 <= k <= m.
  tp = unit_params(2, 1.0, 2.0);
  tp.p = 0.0;
  expect_param(tp, false);
  tp = unit_params(2, 1.0, 0.5);
  expect_param(tp, false);
  tp = unit_params(2, 1.0, 2.0);
  tp.mu = 0.0;
  expect_param(tp, false);
  tp.mu = 1.0;
  tp.k = 0;
  expect_param(tp, false);
  tp.k = 3;  // k > m
  expect_param(tp, false);

  // Weight shapes.
  tp = unit_params(2, 1.0, 2.0);
  tp.a = {1.0};  // wrong length
  expect_param(tp, true);
  tp = unit_params(2, 1.0, 2.0);
  tp.a = {1.0, 2.0};  // ascending
  expect_param(tp, true);
  tp = unit_params(2, 1.0, 2.0);
  tp.c = {1.0, 0.0};  // not strictly positive
  expect_param(tp, true);
  tp = unit_params(2, 1.0, 2.0);
  tp.m = 0;
  expect_param(tp, true);
}

TEST_CASE("index map offsets and topology refusals") {
  const suite::IndexMap disk = suite::make_index_map(kDiskTopo, 2, 3);
  CHECK(disk.sigma0_index(1) == 3);       // r + i
  CHECK(disk.sigma_n2_index(1) == 4);     // b0 + s + i - 1
  CHECK(disk.lambda_index(1) == 5);       // b1 + r + s + i - 1
  const suite::IndexMap ann = suite::make_index_map(kAnnulusTopo, 1, 1);
  CHECK(ann.lambda_index(1) == 3);        // skips both zero modes

  CHECK(kind_of([] { suite::make_index_map(kDiskTopo, 0, 1); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([] {
          suite::make_index_map(mesh::DomainTopology{0, 1, 2, 0}, 1, 1);
        }) == ErrorKind::Topology);  // disconnected
  CHECK(kind_of([] {
          suite::make_index_map(mesh::DomainTopology{1, 1, 1, 2}, 1, 1);
        }) == ErrorKind::Topology);  // positive genus out of scope
  CHECK(kind_of([] {
          suite::make_index_map(mesh::DomainTopology{0, 2, 1, 0}, 1, 1);
        }) == ErrorKind::Topology);  // inconsistent b1
}

// ---------------------------------------------------------------------------
// Product-of-eigenvalues bounds: yy / thm1
// ---------------------------------------------------------------------------

TEST_CASE("yy: disk equalities and index handling") {
  const auto d = disk_inputs();
  const auto r11 = suite::eval_yy(d.sigma, d.sigma, d.lambda, 1, 1, kDiskTopo);
  CHECK(r11.lhs == 1.0);  // sigma_2 * sigma_2
  CHECK(r11.rhs == 1.0);  // lambda_2
  CHECK(r11.pass);
  CHECK(r11.sharp);

  const auto r12 = suite::eval_yy(d.sigma, d.sigma, d.lambda, 1, 2, kDiskTopo);
  CHECK(r12.lhs == 1.0);  // sigma_2 * sigma_3
  CHECK(r12.rhs == 1.0);  // lambda_3
  CHECK(r12.sharp);

  const auto r22 = suite::eval_yy(d.sigma, d.sigma, d.lambda, 2, 2, kDiskTopo);
  CHECK(r22.lhs == 1.0);
  CHECK(r22.rhs == 4.0);  // lambda_4
  CHECK(r22.pass);
  CHECK_FALSE(r22.sharp);

  // p = 0 reads the zero mode: trivially true.
  const auto r01 = suite::eval_yy(d.sigma, d.sigma, d.lambda, 0, 1, kDiskTopo);
  CHECK(r01.lhs == 0.0);
  CHECK(r01.pass);

  // p = q = 0 on the disk asks for lambda index b1 = 0: out of range.
  CHECK(kind_of([&] {
          suite::eval_yy(d.sigma, d.sigma, d.lambda, 0, 0, kDiskTopo);
        }) == ErrorKind::Index);
  CHECK(kind_of([&] {
          suite::eval_yy(d.sigma, d.sigma, d.lambda, -1, 1, kDiskTopo);
        }) == ErrorKind::Parameter);
}

TEST_CASE("yy: annulus offsets skip both lambda zero modes") {
  const auto a = annulus_inputs();
  const auto r = suite::eval_yy(a.sigma, a.sigma, a.lambda, 1, 1, kAnnulusTopo);
  // sigma_2^2 with sigma_2 = 0.43844718719116973; lambda_{1+2} = 1 (outer
  // circle length 2 pi).
  CHECK(r.lhs == doctest::Approx(0.43844718719116973 * 0.43844718719116973)
                     .epsilon(1e-14));
  CHECK(r.rhs == 1.0);
  CHECK(r.pass);
  CHECK_FALSE(r.sharp);
}

TEST_CASE("thm1: single-term case reduces bitwise to yy") {
  const auto d = disk_inputs();
  const auto a = annulus_inputs();
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s) {
      suite::TheoremParams tp = unit_params(1, 1.0, 2.0);
      tp.r = r;
      tp.s = s;
      const auto t_disk =
          suite::eval_thm1(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
      const auto y_disk =
          suite::eval_yy(d.sigma, d.sigma, d.lambda, r, s, kDiskTopo);
      CHECK(t_disk.lhs == y_disk.lhs);
      CHECK(t_disk.rhs == y_disk.rhs);
      const auto t_ann =
          suite::eval_thm1(a.sigma, a.sigma, a.lambda, tp, kAnnulusTopo);
      const auto y_ann =
          suite::eval_yy(a.sigma, a.sigma, a.lambda, r, s, kAnnulusTopo);
      CHECK(t_ann.lhs == y_ann.lhs);
      CHECK(t_ann.rhs == y_ann.rhs);
    }
}

TEST_CASE("thm1: disk m = 2 with unit weights is sharp") {
  const auto d = disk_inputs();
  const auto r =
      suite::eval_thm1(d.sigma, d.sigma, d.lambda, unit_params(2, 1.0, 2.0),
                       kDiskTopo);
  // lhs = 2 / sqrt(2), rhs = sqrt(2).
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.pass);
  CHECK(r.sharp);
}

TEST_CASE("thm1: nonunit weights, annulus inputs, zero weights") {
  const auto d = disk_inputs();
  suite::TheoremParams tp = unit_params(2, 2.0, 3.0);
  tp.a = {2.0, 1.0};
  const auto r = suite::eval_thm1(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
  // lhs = (sqrt(2)+1) * 2^(-1/3); rhs = (2^(3/4) + 1)^(2/3).
  CHECK(r.lhs == doctest::Approx((std::sqrt(2.0) + 1.0) * std::pow(2.0, -1.0 / 3.0))
                     .epsilon(1e-14));
  CHECK(r.rhs ==
        doctest::Approx(std::pow(std::pow(2.0, 0.75) + 1.0, 2.0 / 3.0))
            .epsilon(1e-14));
  CHECK(r.pass);
  CHECK_FALSE(r.sharp);

  const auto a = annulus_inputs();
  const auto ra = suite::eval_thm1(a.sigma, a.sigma, a.lambda,
                                   unit_params(2, 1.0, 2.0), kAnnulusTopo);
  CHECK(ra.pass);
  CHECK(ra.slack() > 0.1);  // far from sharp on this annulus

  suite::TheoremParams zero = unit_params(2, 1.0, 2.0);
  zero.a = {0.0, 0.0};
  const auto rz =
      suite::eval_thm1(d.sigma, d.sigma, d.lambda, zero, kDiskTopo);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.pass);
}

// ---------------------------------------------------------------------------
// Inverse-trace family: thm2 / power-q / cor2
// ---------------------------------------------------------------------------

TEST_CASE("thm2: disk m = k = 2 balance point is sharp") {
  const auto d = disk_inputs();
  suite::TheoremParams tp = unit_params(2, 1.0, 2.0);
  tp.k = 2;
  tp.mu = 0.5;
  const auto r = suite::eval_thm2(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
  // displayed: 1/(sigma_2 sigma_3) + 0.5*(1/sigma_2^2 + 1/sigma_3^2) = 2
  //        >=  2 * (1/(lambda_2 lambda_3))^(1/2) = 2.
  CHECK(r.pass);
  CHECK(r.sharp);
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("thm2: p = q, k = mu = 1 coincides with the power-q form") {
  const auto d = disk_inputs();
  const auto a = annulus_inputs();
  for (double q : {1.0, 2.0, 3.5}) {
    suite::TheoremParams tp = unit_params(2, q, q);
    const auto t = suite::eval_thm2(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
    const auto p = suite::eval_power_q(d.sigma, d.sigma, d.lambda, q, 1, 1, 2,
                                       kDiskTopo);
    CHECK(t.lhs == doctest::Approx(p.lhs).epsilon(1e-13));
    CHECK(t.rhs == doctest::Approx(p.rhs).epsilon(1e-13));
    const auto ta = suite::eval_thm2(a.sigma, a.sigma, a.lambda, tp,
                                     kAnnulusTopo);
    const auto pa = suite::eval_power_q(a.sigma, a.sigma, a.lambda, q, 1, 1, 2,
                                        kAnnulusTopo);
    CHECK(ta.lhs == doctest::Approx(pa.lhs).epsilon(1e-13));
    CHECK(ta.rhs == doctest::Approx(pa.rhs).epsilon(1e-13));
  }
}

TEST_CASE("thm2: reduction to the product corollary") {
  const auto d = disk_inputs(14, 14);
  for (int n = 1; n <= 3; ++n) {
    suite::TheoremParams tp = unit_params(2 * n, 1.0, 2.0 * n);
    tp.k = 2 * n;
    tp.mu = 1.0 / (2.0 * n);
    const auto t = suite::eval_thm2(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
    const auto c = suite::eval_cor2(d.sigma, d.length, n);
    CHECK(t.lhs == doctest::Approx(c.lhs).epsilon(1e-12));
    CHECK(t.rhs == doctest::Approx(c.rhs).epsilon(1e-12));
  }
}

TEST_CASE("thm2: subset enumeration scale and cap") {
  const auto d = disk_inputs(16, 16);
  suite::TheoremParams tp = unit_params(12, 1.0, 2.0);
  tp.k = 6;  // C(12,6) = 924 subsets
  const auto r = suite::eval_thm2(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
  CHECK(r.pass);

  const auto big_sigma = an::steklov_disk(1.0, 60);
  const auto big_lambda = an::laplacian_circle(2.0 * kPi, 60);
  suite::TheoremParams huge = unit_params(50, 1.0, 2.0);
  huge.k = 25;  // C(50,25) blows past the cap
  CHECK(kind_of([&] {
          suite::eval_thm2(big_sigma, big_sigma, big_lambda, huge, kDiskTopo);
        }) == ErrorKind::Unsupported);
}

TEST_CASE("thm2: passing never flips while sweeping mu, rhs increases") {
  const auto d = disk_inputs();
  double previous_rhs = 0.0;
  for (double mu : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
    suite::TheoremParams tp = unit_params(2, 1.0, 2.0);
    tp.k = 2;
    tp.mu = mu;
    const auto r = suite::eval_thm2(d.sigma, d.sigma, d.lambda, tp, kDiskTopo);
    CHECK(r.pass);
    CHECK(r.rhs > previous_rhs);
    previous_rhs = r.rhs;
  }
}

TEST_CASE("power-q: disk sharpness and the falsified literal index reading") {
  const auto d = disk_inputs();
  const auto r =
      suite::eval_power_q(d.sigma, d.sigma, d.lambda, 2.0, 1, 1, 2, kDiskTopo);
  CHECK(r.lhs == 4.0);
  CHECK(r.rhs == 4.0);
  CHECK(r.pass);
  CHECK(r.sharp);

  // The literal second-sum indexing sigma~_{b0+r+i} drops the largest inverse
  // and is violated on the unit disk (3.25 < 4): the s-based indexing above
  // is the internally consistent reading, and this probe documents why.
  const auto literal = suite::eval_power_q(d.sigma, d.sigma, d.lambda, 2.0, 1,
                                           1, 2, kDiskTopo, true);
  CHECK(literal.rhs == doctest::Approx(3.25).epsilon(1e-14));  // displayed lhs
  CHECK(literal.lhs == 4.0);                                   // displayed rhs
  CHECK_FALSE(literal.pass);

  CHECK(kind_of([&] {
          suite::eval_power_q(d.sigma, d.sigma, d.lambda, 0.5, 1, 1, 2,
                              kDiskTopo);
        }) == ErrorKind::Parameter);
  CHECK(kind_of([&] {
          suite::eval_power_q(d.sigma, d.sigma, d.lambda, 2.0, 1, 1, 0,
                              kDiskTopo);
        }) == ErrorKind::Parameter);
}

TEST_CASE("cor2: disk sharp at n = 1, strict afterwards") {
  const auto d = disk_inputs();
  const auto r1 = suite::eval_cor2(d.sigma, d.length, 1);
  CHECK(r1.pass);
  CHECK(r1.sharp);
  // displayed lhs = 1/(sigma_2 sigma_3) + (1/2)(1 + 1) = 2 = rhs = L^2/(2 pi^2).
  CHECK(r1.rhs == doctest::Approx(2.0).epsilon(1e-14));

  const auto r2 = suite::eval_cor2(d.sigma, d.length, 2);
  CHECK(r2.pass);
  CHECK_FALSE(r2.sharp);
  // displayed values: lhs = 1/4 + (1/4)(2 + 2/16) = 0.78125, rhs = 0.5.
  CHECK(r2.rhs == doctest::Approx(0.78125).epsilon(1e-14));
  CHECK(r2.lhs == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(kind_of([&] { suite::eval_cor2(d.sigma, d.length, 0); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([&] { suite::eval_cor2(d.sigma, 0.0, 1); }) ==
        ErrorKind::Parameter);
}

// ---------------------------------------------------------------------------
// sigma_{p+1} sigma_{q+1} L^2 bounds
// ---------------------------------------------------------------------------

TEST_CASE("hps: disk equalities at the classical sharp pairs") {
  const auto d = disk_inputs();
  const auto r11 = suite::eval_hps(d.sigma, d.length, 1, 1);
  CHECK(r11.lhs == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(r11.rhs == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(r11.sharp);

  const auto r12 = suite::eval_hps(d.sigma, d.length, 1, 2);  // odd sum
  CHECK(r12.rhs == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(r12.sharp);

  // Away from the sharp pairs the inequality is strict on the disk.
  const auto r22 = suite::eval_hps(d.sigma, d.length, 2, 2);
  CHECK(r22.pass);
  CHECK_FALSE(r22.sharp);
  CHECK(r22.rhs == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-14));
  const auto r23 = suite::eval_hps(d.sigma, d.length, 2, 3);
  CHECK(r23.pass);
  CHECK_FALSE(r23.sharp);
  CHECK(r23.lhs == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-14));

  CHECK(kind_of([&] { suite::eval_hps(d.sigma, d.length, 0, 1); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([&] { suite::eval_hps(d.sigma, -1.0, 1, 1); }) ==
        ErrorKind::Parameter);
}

TEST_CASE("gp and k: reductions and the sharper-bound comparison") {
  const auto d = disk_inputs();
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{
           {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 4}}) {
    const auto hps = suite::eval_hps(d.sigma, d.length, p, q);
    const auto gp = suite::eval_gp(d.sigma, d.length, 0, 1, p, q);
    const auto k = suite::eval_k(d.sigma, d.length, 0, 1, p, q);
    // Both reduce to the simply connected bound at genus 0, one component.
    CHECK(gp.rhs == hps.rhs);
    CHECK(k.rhs == hps.rhs);
    CHECK(gp.lhs == hps.lhs);
  }

  // The shifted-constant family is at least as strong as the scaled one for
  // every topology in range (p + q >= 2 even, p + q >= 3 odd).
  for (int genus = 0; genus <= 2; ++genus)
    for (int components = 1; components <= 3; ++components)
      for (int p = 1; p <= 4; ++p)
        for (int q = p; q <= 4; ++q) {
          const auto gp =
              suite::eval_gp(d.sigma, d.length, genus, components, p, q);
          const auto k =
              suite::eval_k(d.sigma, d.length, genus, components, p, q);
          CHECK(k.rhs <= gp.rhs * (1.0 + 1e-15));
        }

  CHECK(kind_of([&] { suite::eval_gp(d.sigma, d.length, -1, 1, 1, 1); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([&] { suite::eval_k(d.sigma, d.length, 0, 0, 1, 1); }) ==
        ErrorKind::Parameter);
}

// ---------------------------------------------------------------------------
// Trace family
// ---------------------------------------------------------------------------

TEST_CASE("hps-trace: disk equalities, annulus strict slack") {
  const auto d = disk_inputs();
  for (int n = 1; n <= 5; ++n) {
    const auto r = suite::eval_hps_trace(d.sigma, d.length, n);
    CHECK(r.pass);
    CHECK(r.sharp);
    CHECK(std::fabs(r.relative_slack()) <= 1e-14);
  }
  const auto r2 = suite::eval_hps_trace(d.sigma, d.length, 2);
  CHECK(r2.rhs == doctest::Approx(3.0).epsilon(1e-15));  // displayed lhs
  CHECK(r2.lhs == doctest::Approx(3.0).epsilon(1e-15));  // displayed rhs

  const auto a = annulus_inputs();
  const auto ra = suite::eval_hps_trace(a.sigma, a.length, 1);
  CHECK(ra.pass);
  CHECK_FALSE(ra.sharp);
  // displayed: 2/0.43844718719116973 = 4.5615... >= 3 pi / pi = 3.
  CHECK(ra.rhs == doctest::Approx(2.0 / 0.43844718719116973).epsilon(1e-14));
  CHECK(ra.lhs == doctest::Approx(3.0).epsilon(1e-14));

  CHECK(kind_of([&] { suite::eval_hps_trace(d.sigma, d.length, 0); }) ==
        ErrorKind::Parameter);
}

TEST_CASE("majorized form: disk gives full majorization with equal prefixes") {
  const auto d = disk_inputs();
  const auto verdict = suite::eval_majorized_form(d.sigma, d.length, 3);
  CHECK(verdict.relation == steklov::ineq::Relation::Majorized);
  REQUIRE(verdict.partial_sums_x.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(verdict.partial_sums_x[i] ==
          doctest::Approx(verdict.partial_sums_y[i]).epsilon(1e-13));

  const auto report = suite::majorized_form_report(d.sigma, d.length, 3);
  CHECK(report.pass);
  CHECK(report.sharp);

  const auto a = annulus_inputs();
  const auto va = suite::eval_majorized_form(a.sigma, a.length, 1);
  CHECK(va.relation == steklov::ineq::Relation::WeaklyMajorized);
  CHECK(suite::majorized_form_report(a.sigma, a.length, 1).pass);

  // n = 1 agrees with the trace inequality by construction.
  const auto trace1 = suite::eval_hps_trace(a.sigma, a.length, 1);
  CHECK(va.weakly_majorized() == trace1.pass);
}

TEST_CASE("inverse-trace-2: disk equalities") {
  const auto d = disk_inputs(22, 4);
  for (int n : {1, 2, 10}) {
    const auto r = suite::eval_inverse_trace_2(d.sigma, d.length, n);
    CHECK(r.pass);
    CHECK(r.sharp);
    CHECK(std::fabs(r.relative_slack()) <= 1e-13);
  }
  const auto r2 = suite::eval_inverse_trace_2(d.sigma, d.length, 2);
  CHECK(r2.rhs == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(r2.lhs == doctest::Approx(2.5).epsilon(1e-15));
}

// ---------------------------------------------------------------------------
// Weighted corollary and the open-question probe
// ---------------------------------------------------------------------------

TEST_CASE("cor1: disk equalities for every n and in the limit") {
  const auto d = disk_inputs(45, 4);
  for (int n = 1; n <= 20; ++n) {
    const auto r = suite::eval_cor1(d.sigma, d.length, n, false);
    CHECK(r.pass);
    CHECK(r.sharp);
    CHECK(std::fabs(r.relative_slack()) <= 1e-12);
  }
  const auto r1 = suite::eval_cor1(d.sigma, d.length, 1, false);
  CHECK(r1.lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r1.rhs == doctest::Approx(2.0).epsilon(1e-14));

  const auto limit = suite::eval_cor1(d.sigma, d.length, 1, true);
  CHECK(limit.pass);
  CHECK(limit.sharp);
  CHECK(limit.lhs == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-13));
  CHECK(limit.rhs == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-13));
  CHECK(std::fabs(limit.relative_slack()) <= 1e-9);
}

TEST_CASE("cor1: limit form scales with the disk radius and rejects others") {
  const auto sigma = an::steklov_disk(2.0, 12);
  const auto limit = suite::eval_cor1(sigma, 4.0 * kPi, 1, true);
  CHECK(limit.sharp);
  CHECK(limit.lhs == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));

  const auto a = annulus_inputs();
  CHECK(kind_of([&] { suite::eval_cor1(a.sigma, a.length, 1, true); }) ==
        ErrorKind::Unsupported);

  const auto d = disk_inputs();
  CHECK(kind_of([&] { suite::eval_cor1(d.sigma, d.length, 40, false); }) ==
        ErrorKind::Index);  // needs sigma_81
}

TEST_CASE("probe: disk values for the conjectured inequality") {
  const auto d = disk_inputs();
  const auto r1 = suite::probe_open_question(d.sigma, d.length, 1);
  CHECK(r1.pass);
  CHECK(r1.rhs == doctest::Approx(1.0).epsilon(1e-14));  // displayed lhs
  CHECK(r1.lhs == doctest::Approx(1.0).epsilon(1e-14));  // displayed rhs
  const auto r2 = suite::probe_open_question(d.sigma, d.length, 2);
  CHECK(r2.pass);
  CHECK(r2.rhs == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(r2.lhs == doctest::Approx(1.25).epsilon(1e-14));
  CHECK_FALSE(r2.sharp);
}

// ---------------------------------------------------------------------------
// Batch driver
// ---------------------------------------------------------------------------

TEST_CASE("run_all: disk battery passes with the expected sharp set") {
  const auto d = disk_inputs(10, 8);
  const suite::SpectraBundle bundle{d.sigma, d.lambda, d.length};
  const auto grid = suite::default_grid(kDiskTopo);
  const auto reports = suite::run_all(bundle, grid, kDiskTopo);
  REQUIRE(reports.size() == grid.size());
  REQUIRE(reports.size() == 23);

  int sharp = 0;
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
    sharp += r.sharp ? 1 : 0;
  }
  CHECK(sharp == 18);

  // Spot-check flags that pin the sharpness pattern.
  CHECK(reports[0].name == "yy");
  CHECK(reports[0].sharp);        // (1,1)
  CHECK_FALSE(reports[2].sharp);  // (2,2): lambda_4 = 4
  CHECK(reports[3].name == "thm1");
  CHECK(reports[3].sharp);        // m = 1
  CHECK_FALSE(reports[5].sharp);  // weighted m = 2 variant
  CHECK_FALSE(reports.back().sharp);  // probe n = 2
}

TEST_CASE("run_all: annulus battery passes, empty grid is empty") {
  const auto a = annulus_inputs();
  const suite::SpectraBundle bundle{a.sigma, a.lambda, a.length};
  const auto grid = suite::default_grid(kAnnulusTopo);
  REQUIRE(grid.size() == 12);  // product/trace disk-only items dropped
  const auto reports = suite::run_all(bundle, grid, kAnnulusTopo);
  REQUIRE(reports.size() == 12);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }

  CHECK(suite::run_all(bundle, {}, kAnnulusTopo).empty());
}

TEST_CASE("run_all: bundle consistency errors") {
  const auto d = disk_inputs(10, 8);
  const auto a = annulus_inputs();

  // Wrong spectrum kind in the sigma slot.
  CHECK(kind_of([&] {
          suite::run_all({d.lambda, d.lambda, d.length}, {}, kDiskTopo);
        }) == ErrorKind::Config);
  // Disk spectra presented with annulus topology: lambda shows one zero mode,
  // the topology demands two.
  CHECK(kind_of([&] {
          suite::run_all({d.sigma, d.lambda, d.length}, {}, kAnnulusTopo);
        }) == ErrorKind::Config);
  // Annulus spectra presented as a disk.
  CHECK(kind_of([&] {
          suite::run_all({a.sigma, a.lambda, a.length}, {}, kDiskTopo);
        }) == ErrorKind::Config);
  // Nonpositive boundary length.
  CHECK(kind_of([&] {
          suite::run_all({d.sigma, d.lambda, 0.0}, {}, kDiskTopo);
        }) == ErrorKind::Config);
  // Unknown inequality name.
  suite::VerifyRequest bogus;
  bogus.inequality = "nope";
  CHECK(kind_of([&] {
          suite::run_all({d.sigma, d.lambda, d.length}, {bogus}, kDiskTopo);
        }) == ErrorKind::Parameter);
}

// ---------------------------------------------------------------------------
// Finite element integration
// ---------------------------------------------------------------------------

TEST_CASE("fem inputs: perturbed disk passes the core evaluators") {
  const mesh::PerturbedDisk shape{1.0, {0.15, -0.05}, {0.1}};
  const auto m = mesh::generate(shape, 3);
  const auto topo = mesh::topology(m);
  REQUIRE(topo.boundary_components == 1);
  const Spectrum sigma = fem::steklov_spectrum(m, 8);
  const Spectrum lambda = fem::boundary_laplacian_spectrum(m, 6);
  const double length = mesh::boundary_length(m).total;

  CHECK(suite::eval_yy(sigma, sigma, lambda, 1, 1, topo).pass);
  CHECK(suite::eval_thm1(sigma, sigma, lambda, unit_params(2, 1.0, 2.0), topo)
            .pass);
  suite::TheoremParams tp = unit_params(2, 1.0, 2.0);
  tp.k = 2;
  tp.mu = 0.5;
  CHECK(suite::eval_thm2(sigma, sigma, lambda, tp, topo).pass);
  CHECK(suite::eval_hps_trace(sigma, length, 2).pass);
  CHECK(suite::eval_cor2(sigma, length, 1).pass);
  CHECK(suite::probe_open_question(sigma, length, 2).pass);

  // Near-disk FEM spectra sit within discretization error of the disk's
  // equality case, so the prefix comparison must run at the spectrum's own
  // accuracy: with an exact-arithmetic tolerance the positive prefix excess
  // (~1e-4 here) would misclassify the domain as a counterexample.
  const auto mv = suite::eval_majorized_form(sigma, length, 3);
  CHECK(mv.weakly_majorized());
  CHECK(mv.tolerance_used >= fem::kDefaultFemTolerance);
  const auto mr = suite::majorized_form_report(sigma, length, 3);
  CHECK(mr.pass);
  CHECK(mr.tolerance == mv.tolerance_used);

  // Report tolerances follow the finite element provenance.
  const auto r = suite::eval_yy(sigma, sigma, lambda, 1, 1, topo);
  CHECK(r.tolerance == fem::kDefaultFemTolerance);
  CHECK(r.sharp_tolerance == 3.0 * fem::kDefaultFemTolerance);
}

TEST_CASE("fem inputs: annulus bundle through the full battery") {
  const auto m = mesh::generate(mesh::Annulus{0.5, 1.0}, 3);
  const auto topo = mesh::topology(m);
  const suite::SpectraBundle bundle{fem::steklov_spectrum(m, 8),
                                    fem::boundary_laplacian_spectrum(m, 7),
                                    mesh::boundary_length(m).total};
  const auto reports =
      suite::run_all(bundle, suite::default_grid(topo), topo);
  REQUIRE(reports.size() == 12);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
}
