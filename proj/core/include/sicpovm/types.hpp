#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace sicpovm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Tolerance on the unit norm of a Fiducial or a VectorSet member.
inline constexpr double kNormTolerance = 1e-12;

/// A normalized vector in C^d whose group orbit is a candidate SIC-POVM.
///
/// Amplitudes are stored exactly as given. `gauge_fixed()` returns the
/// representative whose first nonzero amplitude is real and positive, which is
/// the form used when results are reported.
class Fiducial {
 public:
  /// Throws DomainError unless `amplitudes` is nonempty with unit norm to kNormTolerance.
  explicit Fiducial(Vector amplitudes);

  /// Scales `raw` to unit norm. Throws DomainError for an empty or zero vector.
  static Fiducial normalized(const Vector& raw);

  int dimension() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int k) const { return amplitudes_(k); }

  Fiducial gauge_fixed() const;

 private:
  Vector amplitudes_;
};

/// An ordered list of n >= 1 unit vectors in C^d, stored as the columns of a d x n matrix.
class VectorSet {
 public:
  /// Throws DomainError if there are no columns or a column is not unit norm.
  explicit VectorSet(Matrix columns);

  /// Normalizes every column first.
  static VectorSet normalized(Matrix columns);
  static VectorSet from_vectors(const std::vector<Vector>& vectors);

  int dimension() const noexcept { return static_cast<int>(columns_.rows()); }
  int size() const noexcept { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const noexcept { return columns_; }
  Vector vector(int k) const { return columns_.col(k); }

 private:
  Matrix columns_;
};

}  // namespace sicpovm
