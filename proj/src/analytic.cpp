#include "steklov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_count(int count) {
  require(count >= 1, ErrorKind::Parameter,
          "spectrum count must be >= 1, got " + std::to_string(count));
}

}  // namespace

Spectrum steklov_disk(double radius, int count) {
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::Parameter,
          "disk radius must be positive");
  check_count(count);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  values.push_back(0.0);
  for (int k = 1; static_cast<int>(values.size()) < count; ++k) {
    values.push_back(k / radius);
    if (static_cast<int>(values.size()) < count) values.push_back(k / radius);
  }
  return Spectrum(SpectrumKind::Steklov, std::move(values),
                  SpectrumSource::analytic("disk:r=" + std::to_string(radius)));
}

Spectrum laplacian_circle(double length, int count) {
  return laplacian_circles({length}, count);
}

Spectrum laplacian_circles(const std::vector<double>& lengths, int count) {
  require(!lengths.empty(), ErrorKind::Parameter, "need at least one circle");
  for (double length : lengths) {
    require(std::isfinite(length) && length > 0.0, ErrorKind::Parameter,
            "circle length must be positive");
  }
  check_count(count);
  // Collect enough modes per circle, then merge ascending.  Each circle needs
  // at most count values of its own spectrum.
  std::vector<double> values;
  for (double length : lengths) {
    values.push_back(0.0);
    for (int k = 1; 2 * k - 1 < count; ++k) {
      const double lambda = (2.0 * kPi * k / length) * (2.0 * kPi * k / length);
      values.push_back(lambda);
      values.push_back(lambda);
    }
  }
  std::sort(values.begin(), values.end());
  require(static_cast<int>(values.size()) >= count, ErrorKind::Internal,
          "mode enumeration produced too few circle eigenvalues");
  values.resize(static_cast<std::size_t>(count));
  return Spectrum(SpectrumKind::BoundaryLaplacian, std::move(values),
                  SpectrumSource::analytic("circles"));
}

std::vector<double> steklov_annulus_mode(double r_inner, double r_outer, int mode) {
  require(std::isfinite(r_inner) && std::isfinite(r_outer) && r_inner > 0.0 &&
              r_inner < r_outer,
          ErrorKind::Parameter, "annulus radii must satisfy 0 < r_inner < r_outer");
  require(mode >= 0, ErrorKind::Parameter, "mode must be >= 0");
  if (mode == 0) {
    // Radial basis {1, log r}: the constant gives 0, the log solution gives
    // the positive eigenvalue below.
    const double sigma =
        (1.0 / r_outer + 1.0 / r_inner) / std::log(r_outer / r_inner);
    return {0.0, sigma};
  }
  // Basis {r^k, r^-k} with Steklov conditions on both circles reduces to
  //   sigma^2 - k*(1/R + 1/rho)*c * sigma + k^2/(R*rho) = 0,
  // where c = (t + 1/t)/(t - 1/t) and t = (R/rho)^k.
  const double k = static_cast<double>(mode);
  const double sum_inv = 1.0 / r_outer + 1.0 / r_inner;
  const double prod_inv = 1.0 / (r_outer * r_inner);
  const double c = 1.0 / std::tanh(k * std::log(r_outer / r_inner));
  const double half_b = 0.5 * k * sum_inv * c;
  const double discriminant = half_b * half_b - k * k * prod_inv;
  require(discriminant > 0.0, ErrorKind::Internal,
          "annulus mode discriminant must be positive");
  const double root = std::sqrt(discriminant);
  return {half_b - root, half_b + root};
}

Spectrum steklov_annulus(double r_inner, double r_outer, int count) {
  check_count(count);
  std::vector<double> values;
  {
    const auto mode0 = steklov_annulus_mode(r_inner, r_outer, 0);
    values.insert(values.end(), mode0.begin(), mode0.end());
  }
  // Add modes until the smallest eigenvalue of the next mode exceeds the
  // current count-th smallest value; from that point on no later mode can
  // contribute to the lowest `count` eigenvalues (mode minima increase).
  for (int k = 1;; ++k) {
    const auto mode = steklov_annulus_mode(r_inner, r_outer, k);
    if (static_cast<int>(values.size()) >= count) {
      std::sort(values.begin(), values.end());
      if (mode[0] > values[static_cast<std::size_t>(count - 1)]) break;
    }
    values.push_back(mode[0]);
    values.push_back(mode[0]);
    values.push_back(mode[1]);
    values.push_back(mode[1]);
    require(k < 4 * count + 16, ErrorKind::Internal,
            "annulus mode enumeration failed to terminate");
  }
  std::sort(values.begin(), values.end());
  values.resize(static_cast<std::size_t>(count));
  return Spectrum(SpectrumKind::Steklov, std::move(values),
                  SpectrumSource::analytic("annulus"));
}

double partial_zeta(int n, double exponent) {
  require(std::isfinite(exponent) && exponent >= 0.0, ErrorKind::Parameter,
          "zeta exponent must be nonnegative");
  if (n == kInfiniteTerms) {
    require(exponent == 2.0, ErrorKind::Unsupported,
            "infinite partial zeta is only provided for exponent 2");
    return kPi * kPi / 6.0;
  }
  require(n >= 1, ErrorKind::Parameter, "partial zeta needs n >= 1");
  // Sum smallest terms first in extended precision.
  long double sum = 0.0L;
  for (int i = n; i >= 1; --i) {
    sum += std::pow(static_cast<long double>(i), static_cast<long double>(-exponent));
  }
  return static_cast<double>(sum);
}

}  // namespace steklov::analytic
