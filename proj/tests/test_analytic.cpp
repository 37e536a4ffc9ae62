#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "steklov/analytic.hpp"
#include "steklov/errors.hpp"
#include "steklov/spectrum.hpp"

using steklov::Error;
using steklov::ErrorKind;
using steklov::Spectrum;
namespace an = steklov::analytic;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

// Residual of the radial eigenvalue system for the annulus rho < r < R.
// A mode-k eigenfunction is u(r) = a*r^k + b*r^-k (or a + b*log r for k=0);
// sigma is an eigenvalue iff the 2x2 system from the two boundary conditions
//   u'(R) = sigma*u(R)        (outer normal = +r direction)
//   -u'(rho) = sigma*u(rho)   (outer normal = -r direction)
// is singular.  This evaluates that determinant directly, independently of
// the quadratic-formula route used by the implementation.
double annulus_determinant(double rho, double R, int k, double sigma) {
  if (k == 0) {
    // u = a + b log r:  rows (outer) [ -sigma, 1/R - sigma*log R ],
    //                        (inner) [ -sigma, -1/rho - sigma*log rho ].
    const double a11 = -sigma, a12 = 1.0 / R - sigma * std::log(R);
    const double a21 = -sigma, a22 = -1.0 / rho - sigma * std::log(rho);
    return a11 * a22 - a12 * a21;
  }
  const double kk = static_cast<double>(k);
  // u = a r^k + b r^-k.
  const double a11 = kk * std::pow(R, kk - 1) - sigma * std::pow(R, kk);
  const double a12 = -kk * std::pow(R, -kk - 1) - sigma * std::pow(R, -kk);
  const double a21 = -kk * std::pow(rho, kk - 1) - sigma * std::pow(rho, kk);
  const double a22 = kk * std::pow(rho, -kk - 1) - sigma * std::pow(rho, -kk);
  return a11 * a22 - a12 * a21;
}

// Scale factor making the determinant residual dimensionless near sigma.
double annulus_det_scale(double rho, double R, int k, double sigma) {
  const double h = 1e-6 * std::max(1.0, sigma);
  const double d1 = annulus_determinant(rho, R, k, sigma + h);
  const double d0 = annulus_determinant(rho, R, k, sigma - h);
  return std::max(1.0, std::fabs((d1 - d0) / (2.0 * h)));
}

}  // namespace

TEST_CASE("disk Steklov spectrum: 0, then each positive integer twice, over R") {
  const Spectrum s = an::steklov_disk(1.0, 10);
  REQUIRE(s.count() == 10);
  const std::vector<double> expected = {0, 1, 1, 2, 2, 3, 3, 4, 4, 5};
  for (int i = 1; i <= 10; ++i)
    CHECK(s.value(i) == expected[static_cast<size_t>(i - 1)]);

  const Spectrum s2 = an::steklov_disk(2.0, 6);
  for (int i = 1; i <= 6; ++i)
    CHECK(s2.value(i) == expected[static_cast<size_t>(i - 1)] / 2.0);
}

TEST_CASE("circle boundary-Laplacian spectrum: 0, then (2*pi*i/L)^2 doubled") {
  const double L = 2.0 * kPi;
  const Spectrum lam = an::laplacian_circle(L, 7);
  REQUIRE(lam.count() == 7);
  CHECK(lam.value(1) == 0.0);
  CHECK(lam.value(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lam.value(3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lam.value(4) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(lam.value(5) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(lam.value(6) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(lam.value(7) == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("unit disk identity: sigma_k^2 = lambda_k for every k") {
  const int n = 12;
  const Spectrum sig = an::steklov_disk(1.0, n);
  const Spectrum lam = an::laplacian_circle(2.0 * kPi, n);
  for (int i = 1; i <= n; ++i)
    CHECK(sig.value(i) * sig.value(i) == doctest::Approx(lam.value(i)).epsilon(1e-14));
}

TEST_CASE("multi-circle Laplacian merges per-loop spectra in ascending order") {
  // Two circles of length 2*pi each: every eigenvalue of one circle occurs
  // with doubled multiplicity in the union.
  const Spectrum merged = an::laplacian_circles({2.0 * kPi, 2.0 * kPi}, 8);
  const std::vector<double> expected = {0, 0, 1, 1, 1, 1, 4, 4};
  REQUIRE(merged.count() == 8);
  for (int i = 1; i <= 8; ++i)
    CHECK(merged.value(i) == doctest::Approx(expected[static_cast<size_t>(i - 1)])
                                 .epsilon(1e-14));

  // Different lengths interleave: L1 = 2*pi (values 0,1,1,4,4,...),
  // L2 = pi (values 0,4,4,16,16,...).
  const Spectrum mixed = an::laplacian_circles({2.0 * kPi, kPi}, 9);
  const std::vector<double> expected2 = {0, 0, 1, 1, 4, 4, 4, 4, 9};
  for (int i = 1; i <= 9; ++i)
    CHECK(mixed.value(i) == doctest::Approx(expected2[static_cast<size_t>(i - 1)])
                                .epsilon(1e-14));
}

TEST_CASE("annulus (0.5, 1): frozen eigenvalue head") {
  // Derived by hand from the mode-k quadratic
  //   sigma^2 - k*(1/R + 1/rho)*coth(k*log(R/rho))*sigma + k^2/(R*rho) = 0
  // at rho = 1/2, R = 1, where coth(k*log 2) is rational:
  //   coth(log 2) = 5/3, coth(2 log 2) = 17/15, coth(3 log 2) = 65/63.
  // Mode 1: sigma^2 - 5*sigma + 2 = 0 -> (5 +- sqrt(17))/2.
  // Mode 2: sigma^2 - 6.8*sigma + 8 = 0.
  // Mode 0: nonzero root (1/R + 1/rho)/log(R/rho) = 3/log 2.
  const double sqrt17 = std::sqrt(17.0);
  const double m1_lo = (5.0 - sqrt17) / 2.0;  // 0.4384471871911697
  const double m1_hi = (5.0 + sqrt17) / 2.0;  // 4.561552812808831
  const double m2_lo = 3.4 - std::sqrt(3.4 * 3.4 - 8.0);  // 1.5132037735886793
  const double m0_pos = 3.0 / std::log(2.0);              // 4.328085122666891

  CHECK(m1_lo == doctest::Approx(0.4384471871911697).epsilon(1e-15));
  CHECK(m1_hi == doctest::Approx(4.561552812808831).epsilon(1e-15));
  CHECK(m2_lo == doctest::Approx(1.5132037735886793).epsilon(1e-15));
  CHECK(m0_pos == doctest::Approx(4.328085122666891).epsilon(1e-15));

  const Spectrum s = an::steklov_annulus(0.5, 1.0, 12);
  REQUIRE(s.count() == 12);
  CHECK(s.value(1) == 0.0);
  CHECK(s.value(2) == doctest::Approx(m1_lo).epsilon(1e-12));
  CHECK(s.value(3) == doctest::Approx(m1_lo).epsilon(1e-12));
  CHECK(s.value(4) == doctest::Approx(m2_lo).epsilon(1e-12));
  CHECK(s.value(5) == doctest::Approx(m2_lo).epsilon(1e-12));
  CHECK(s.value(6) == doctest::Approx(2.7570887453651306).epsilon(1e-12));  // mode 3
  CHECK(s.value(7) == doctest::Approx(2.7570887453651306).epsilon(1e-12));
  CHECK(s.value(8) == doctest::Approx(3.910023396769969).epsilon(1e-12));   // mode 4
  CHECK(s.value(9) == doctest::Approx(3.910023396769969).epsilon(1e-12));
  CHECK(s.value(10) == doctest::Approx(m0_pos).epsilon(1e-12));  // mode 0, 2nd root
  CHECK(s.value(11) == doctest::Approx(m1_hi).epsilon(1e-12));   // mode 1, larger root
  CHECK(s.value(12) == doctest::Approx(m1_hi).epsilon(1e-12));
}

TEST_CASE("annulus eigenvalues satisfy the boundary-condition determinant") {
  // Independent oracle: every reported eigenvalue must make the original
  // radial 2x2 boundary system singular.
  const double rho = 0.5, R = 1.0;
  for (int k = 0; k <= 4; ++k) {
    const auto roots = an::steklov_annulus_mode(rho, R, k);
    REQUIRE(roots.size() == 2);
    for (double sigma : roots) {
      const double res = std::fabs(annulus_determinant(rho, R, k, sigma)) /
                         annulus_det_scale(rho, R, k, sigma);
      CHECK(res <= 1e-10);
    }
  }
  // A second geometry with irrational coth values.
  const double rho2 = 0.37, R2 = 1.9;
  for (int k = 0; k <= 3; ++k) {
    const auto roots = an::steklov_annulus_mode(rho2, R2, k);
    for (double sigma : roots) {
      const double res = std::fabs(annulus_determinant(rho2, R2, k, sigma)) /
                         annulus_det_scale(rho2, R2, k, sigma);
      CHECK(res <= 1e-10);
    }
  }
}

TEST_CASE("annulus mode-k lower roots approach the disk spectrum as rho -> 0") {
  const double rho = 1e-8, R = 1.0;
  for (int k = 1; k <= 4; ++k) {
    const auto roots = an::steklov_annulus_mode(rho, R, k);
    const double lo = std::min(roots[0], roots[1]);
    CHECK(lo == doctest::Approx(static_cast<double>(k)).epsilon(1e-6));
  }
}

TEST_CASE("annulus scaling: eigenvalues scale like 1/t under dilation by t") {
  const auto base = an::steklov_annulus(0.5, 1.0, 9);
  const auto scaled = an::steklov_annulus(1.5, 3.0, 9);
  for (int i = 2; i <= 9; ++i)
    CHECK(scaled.value(i) == doctest::Approx(base.value(i) / 3.0).epsilon(1e-12));
}

TEST_CASE("partial zeta sums: finite, exact infinite case, unsupported exponent") {
  CHECK(an::partial_zeta(3, 1.0) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(an::partial_zeta(2, 2.0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(an::partial_zeta(an::kInfiniteTerms, 2.0) ==
        doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
  CHECK(kind_of([] { an::partial_zeta(an::kInfiniteTerms, 3.0); }) ==
        ErrorKind::Unsupported);
  CHECK(kind_of([] { an::partial_zeta(0, 2.0); }) == ErrorKind::Parameter);
}

TEST_CASE("parameter validation") {
  CHECK(kind_of([] { an::steklov_disk(0.0, 5); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::steklov_disk(1.0, 0); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::laplacian_circle(-1.0, 5); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::laplacian_circles({}, 5); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::steklov_annulus(1.0, 0.5, 5); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::steklov_annulus(0.0, 1.0, 5); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { an::steklov_annulus_mode(0.5, 1.0, -1); }) ==
        ErrorKind::Parameter);
}

TEST_CASE("spectrum type invariants") {
  const Spectrum s = an::steklov_disk(1.0, 5);
  CHECK(s.kind() == steklov::SpectrumKind::Steklov);
  CHECK(s.source().tag == steklov::SpectrumSource::Tag::Analytic);
  CHECK(kind_of([&] { s.value(0); }) == ErrorKind::Index);
  CHECK(kind_of([&] { s.value(6); }) == ErrorKind::Index);
  // Ascending order is part of the type's contract.
  for (int i = 2; i <= 5; ++i) CHECK(s.value(i) >= s.value(i - 1));
}
