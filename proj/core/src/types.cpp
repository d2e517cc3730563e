#include "sicpovm/types.hpp"

#include <cmath>
#include <string>

#include "sicpovm/errors.hpp"

namespace sicpovm {

namespace {

constexpr double kGaugeZero = 1e-12;

}  // namespace

Fiducial::Fiducial(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DomainError("fiducial must have at least one amplitude");
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw DomainError("fiducial is not normalized (norm " + std::to_string(norm) + ")");
  }
}

Fiducial Fiducial::normalized(const Vector& raw) {
  if (raw.size() == 0) throw DomainError("fiducial must have at least one amplitude");
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero vector");
  return Fiducial(raw / norm);
}

Fiducial Fiducial::gauge_fixed() const {
  for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
    const double magnitude = std::abs(amplitudes_(k));
    if (magnitude > kGaugeZero) {
      const Complex phase = std::conj(amplitudes_(k)) / magnitude;
      Vector fixed = amplitudes_ * phase;
      fixed(k) = Complex(magnitude, 0.0);
      return Fiducial(std::move(fixed));
    }
  }
  return *this;
}

VectorSet::VectorSet(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.cols() == 0 || columns_.rows() == 0) {
    throw DomainError("vector set must contain at least one vector of positive dimension");
  }
  for (Eigen::Index k = 0; k < columns_.cols(); ++k) {
    const double norm = columns_.col(k).norm();
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
      throw DomainError("vector " + std::to_string(k) + " is not normalized");
    }
  }
}

VectorSet VectorSet::normalized(Matrix columns) {
  for (Eigen::Index k = 0; k < columns.cols(); ++k) {
    const double norm = columns.col(k).norm();
    if (!(norm > 0.0)) throw DomainError("cannot normalize a zero vector");
    columns.col(k) /= norm;
  }
  return VectorSet(std::move(columns));
}

VectorSet VectorSet::from_vectors(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw DomainError("vector set must contain at least one vector");
  const Eigen::Index d = vectors.front().size();
  Matrix columns(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != d) throw DomainError("vectors in a set must share one dimension");
    columns.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return VectorSet(std::move(columns));
}

}  // namespace sicpovm
