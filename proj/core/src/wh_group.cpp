#include "sicpovm/wh_group.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sicpovm/errors.hpp"

namespace sicpovm {

namespace {

void require_dimension(int d) {
  if (d < 2) throw DomainError("dimension must be at least 2, got " + std::to_string(d));
}

// exp(i pi n / d) for an integer exponent reduced mod 2d.
Complex root_of_unity_2d(int d, long long n) {
  const long long period = 2LL * d;
  n %= period;
  if (n < 0) n += period;
  const double angle = std::numbers::pi * static_cast<double>(n) / d;
  return {std::cos(angle), std::sin(angle)};
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Phase alpha with op ~ e^{i alpha} I, or nullopt.
std::optional<Complex> identity_phase(const Matrix& op, double tol) {
  const Complex diag = op(0, 0);
  const double magnitude = std::abs(diag);
  if (magnitude < 0.5) return std::nullopt;
  const Complex phase = diag / magnitude;
  const Matrix residual = op - phase * Matrix::Identity(op.rows(), op.cols());
  if (max_abs(residual) <= tol) return phase;
  return std::nullopt;
}

}  // namespace

BasisLabel BasisLabel::pair(int j, int k) {
  return BasisLabel{"(" + std::to_string(j) + "," + std::to_string(k) + ")",
                    std::array<int, 2>{j, k}};
}

BasisLabel BasisLabel::named(std::string name) { return BasisLabel{std::move(name), std::nullopt}; }

ErrorBasis::ErrorBasis(int d, std::vector<Matrix> ops, std::vector<BasisLabel> labels)
    : d_(d), ops_(std::move(ops)), labels_(std::move(labels)) {
  if (d_ < 1) throw DomainError("basis dimension must be positive");
  const std::size_t expected = static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_);
  if (ops_.size() != expected) {
    throw StructuralError("basis of dimension " + std::to_string(d_) + " needs " +
                          std::to_string(expected) + " operators, got " +
                          std::to_string(ops_.size()));
  }
  if (labels_.size() != ops_.size()) {
    throw StructuralError("label count " + std::to_string(labels_.size()) +
                          " does not match operator count " + std::to_string(ops_.size()));
  }
  for (std::size_t g = 0; g < ops_.size(); ++g) {
    if (ops_[g].rows() != d_ || ops_[g].cols() != d_) {
      throw StructuralError("operator " + std::to_string(g) + " is not " + std::to_string(d_) +
                            "x" + std::to_string(d_));
    }
  }
}

Matrix displacement(int d, int j, int k) {
  require_dimension(d);
  if (j < 0 || j >= d || k < 0 || k >= d) {
    throw IndexError("displacement index (" + std::to_string(j) + "," + std::to_string(k) +
                     ") out of range for d=" + std::to_string(d));
  }
  Matrix result = Matrix::Zero(d, d);
  const Complex prefactor = root_of_unity_2d(d, static_cast<long long>(j) * k);
  for (int m = 0; m < d; ++m) {
    // omega^{jm} = mu^{2jm}
    result((k + m) % d, m) = prefactor * root_of_unity_2d(d, 2LL * j * m);
  }
  return result;
}

ErrorBasis build_wh_basis(int d) {
  require_dimension(d);
  std::vector<Matrix> ops;
  std::vector<BasisLabel> labels;
  ops.reserve(static_cast<std::size_t>(d) * d);
  labels.reserve(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      ops.push_back(displacement(d, j, k));
      labels.push_back(BasisLabel::pair(j, k));
    }
  }
  ErrorBasis basis(d, std::move(ops), std::move(labels));
  basis.weyl_heisenberg_ = true;
  return basis;
}

BasisValidation validate_error_basis(int d, std::span<const Matrix> ops, double tol) {
  if (d < 1) throw StructuralError("basis dimension must be positive");
  const std::size_t expected = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (ops.size() != expected) {
    throw StructuralError("expected " + std::to_string(expected) + " operators, got " +
                          std::to_string(ops.size()));
  }
  for (const Matrix& op : ops) {
    if (op.rows() != d || op.cols() != d) throw StructuralError("operator has the wrong shape");
  }

  BasisValidation report;
  const Matrix identity = Matrix::Identity(d, d);
  for (std::size_t g = 0; g < ops.size(); ++g) {
    report.max_unitarity_deviation =
        std::max(report.max_unitarity_deviation, max_abs(ops[g].adjoint() * ops[g] - identity));
    if (identity_phase(ops[g], tol)) {
      ++report.identity_count;
      if (report.identity_index < 0) report.identity_index = static_cast<int>(g);
    }
  }

  // Hilbert-Schmidt Gram matrix of the flattened operators.
  const Eigen::Index n = static_cast<Eigen::Index>(ops.size());
  Matrix stacked(static_cast<Eigen::Index>(d) * d, n);
  for (Eigen::Index g = 0; g < n; ++g) {
    stacked.col(g) = ops[static_cast<std::size_t>(g)].reshaped();
  }
  Matrix gram = stacked.adjoint() * stacked;
  gram.diagonal().array() -= static_cast<double>(d);
  report.max_orthogonality_deviation = max_abs(gram);

  report.passed = report.max_unitarity_deviation <= tol &&
                  report.max_orthogonality_deviation <= tol && report.identity_count == 1;
  return report;
}

BasisValidation validate_error_basis(const ErrorBasis& basis, double tol) {
  return validate_error_basis(basis.dimension(), std::span<const Matrix>(basis.ops()), tol);
}

ErrorBasis canonicalize_identity(const ErrorBasis& basis, double tol) {
  int found = -1;
  for (int g = 0; g < basis.size(); ++g) {
    if (identity_phase(basis.op(g), tol)) {
      if (found >= 0) throw StructuralError("basis has more than one identity-proportional element");
      found = g;
    }
  }
  if (found < 0) throw StructuralError("basis has no identity-proportional element");

  std::vector<Matrix> ops;
  std::vector<BasisLabel> labels;
  ops.reserve(static_cast<std::size_t>(basis.size()));
  labels.reserve(static_cast<std::size_t>(basis.size()));
  ops.push_back(Matrix::Identity(basis.dimension(), basis.dimension()));
  labels.push_back(basis.label(found));
  for (int g = 0; g < basis.size(); ++g) {
    if (g == found) continue;
    ops.push_back(basis.op(g));
    labels.push_back(basis.label(g));
  }
  return ErrorBasis(basis.dimension(), std::move(ops), std::move(labels));
}

VectorSet orbit(const Fiducial& fiducial, const ErrorBasis& basis) {
  const int d = basis.dimension();
  if (fiducial.dimension() != d) {
    throw DomainError("fiducial dimension " + std::to_string(fiducial.dimension()) +
                      " does not match basis dimension " + std::to_string(d));
  }
  Matrix columns(d, basis.size());
  for (int g = 0; g < basis.size(); ++g) {
    columns.col(g) = basis.op(g) * fiducial.amplitudes();
  }
  // Unitaries from a loaded basis may carry ~1e-13 norm drift.
  return VectorSet::normalized(std::move(columns));
}

Matrix one_design_operator(const Fiducial& psi, const ErrorBasis& basis) {
  const int d = basis.dimension();
  if (psi.dimension() != d) throw DomainError("fiducial and basis dimensions differ");
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& op : basis.ops()) {
    const Vector image = op * psi.amplitudes();
    sum.noalias() += image * image.adjoint();
  }
  return sum;
}

double one_design_deviation(const Fiducial& psi, const ErrorBasis& basis) {
  const int d = basis.dimension();
  Matrix residual = one_design_operator(psi, basis);
  residual.diagonal().array() -= static_cast<double>(d);
  return max_abs(residual);
}

ErrorBasis tensor_product(const ErrorBasis& first, const ErrorBasis& second) {
  const int d1 = first.dimension();
  const int d2 = second.dimension();
  std::vector<Matrix> ops;
  std::vector<BasisLabel> labels;
  for (int a = 0; a < first.size(); ++a) {
    for (int b = 0; b < second.size(); ++b) {
      Matrix product(d1 * d2, d1 * d2);
      for (int r = 0; r < d1; ++r) {
        for (int c = 0; c < d1; ++c) {
          product.block(r * d2, c * d2, d2, d2) = first.op(a)(r, c) * second.op(b);
        }
      }
      ops.push_back(std::move(product));
      labels.push_back(BasisLabel::named(first.label(a).name + "*" + second.label(b).name));
    }
  }
  return ErrorBasis(d1 * d2, std::move(ops), std::move(labels));
}

}  // namespace sicpovm
