#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

enum class SpectrumKind { Steklov, BoundaryLaplacian };

// Where a spectrum came from and how much it can be trusted.  `tolerance` is
// the relative accuracy attached to the values: essentially exact for closed
// forms, the convergence-study default for finite elements.
struct SpectrumSource {
  enum class Tag { Analytic, Fem };

  Tag tag = Tag::Analytic;
  std::string mesh_id;    // empty for analytic sources
  int refinement = 0;     // 0 for analytic sources
  double tolerance = 1e-9;

  static SpectrumSource analytic(std::string description = "") {
    SpectrumSource s;
    s.tag = Tag::Analytic;
    s.mesh_id = std::move(description);
    s.refinement = 0;
    s.tolerance = 1e-9;
    return s;
  }

  static SpectrumSource fem(std::string mesh_id, int refinement, double tolerance) {
    SpectrumSource s;
    s.tag = Tag::Fem;
    s.mesh_id = std::move(mesh_id);
    s.refinement = refinement;
    s.tolerance = tolerance;
    return s;
  }
};

// Ascending list of eigenvalues with 1-based access, so sigma(1) is the first
// eigenvalue (0 for both operator families handled here).
class Spectrum {
 public:
  Spectrum() = default;

  Spectrum(SpectrumKind kind, std::vector<double> values, SpectrumSource source)
      : kind_(kind), values_(std::move(values)), source_(std::move(source)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      require(std::isfinite(values_[i]) && values_[i] >= 0.0, ErrorKind::Internal,
              "spectrum value " + std::to_string(i + 1) + " is not finite and nonnegative");
      if (i > 0) {
        require(values_[i - 1] <= values_[i] * (1.0 + 1e-12) + 1e-12, ErrorKind::Internal,
                "spectrum values are not ascending at position " + std::to_string(i + 1));
      }
    }
  }

  SpectrumKind kind() const { return kind_; }
  const SpectrumSource& source() const { return source_; }
  int count() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }

  // 1-based indexed access; out-of-range indices are a hard error so that a
  // too-short spectrum can never be silently truncated into a wrong check.
  double value(int i) const {
    require(i >= 1 && i <= count(), ErrorKind::Index,
            "spectrum index " + std::to_string(i) + " out of range [1," +
                std::to_string(count()) + "]");
    return values_[static_cast<std::size_t>(i - 1)];
  }

 private:
  SpectrumKind kind_ = SpectrumKind::Steklov;
  std::vector<double> values_;
  SpectrumSource source_;
};

}  // namespace steklov
