#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

// Symmetric matrix wrapper used by the inequality checks and the witness
// construction.  Construction validates symmetry; positive definiteness is
// asserted only by the operations that actually need it, so indefinite
// symmetric matrices (e.g. for the diagonal-majorization check) can reuse the
// same type.
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() >= 1, ErrorKind::Parameter,
            "matrix must be square and nonempty");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    require(asym <= 1e-12 * scale, ErrorKind::Parameter,
            "matrix is not symmetric: max asymmetry " + std::to_string(asym));
    // Symmetrize exactly so downstream eigensolves see a bitwise-symmetric input.
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
  }

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::VectorXd diagonal() const { return m_.diagonal(); }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace steklov
