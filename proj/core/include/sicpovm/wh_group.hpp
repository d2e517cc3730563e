#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sicpovm/types.hpp"

namespace sicpovm {

/// Label of one element of an error basis: an index pair (j, k) for
/// Weyl-Heisenberg operators, or an opaque name for a loaded basis.
struct BasisLabel {
  std::string name;
  std::optional<std::array<int, 2>> index;

  static BasisLabel pair(int j, int k);
  static BasisLabel named(std::string name);

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// d^2 unitary d x d matrices forming an orthogonal operator basis.
///
/// The constructor checks structure only (count and shape); numerical
/// properties are the job of validate_error_basis. Immutable once built.
class ErrorBasis {
 public:
  /// Throws DomainError for d < 1 and StructuralError on any count or shape mismatch.
  ErrorBasis(int d, std::vector<Matrix> ops, std::vector<BasisLabel> labels);

  int dimension() const noexcept { return d_; }
  int size() const noexcept { return static_cast<int>(ops_.size()); }
  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  const Matrix& op(int g) const { return ops_.at(static_cast<std::size_t>(g)); }
  const std::vector<BasisLabel>& labels() const noexcept { return labels_; }
  const BasisLabel& label(int g) const { return labels_.at(static_cast<std::size_t>(g)); }

  /// True only for bases produced by build_wh_basis; enables structured fast paths.
  bool is_weyl_heisenberg() const noexcept { return weyl_heisenberg_; }

 private:
  friend ErrorBasis build_wh_basis(int d);

  int d_;
  std::vector<Matrix> ops_;
  std::vector<BasisLabel> labels_;
  bool weyl_heisenberg_ = false;
};

/// D_jk = mu^{jk} sum_m omega^{jm} |k+m mod d><m| with omega = exp(2 pi i/d), mu = exp(i pi/d).
///
/// mu^{jk} is the fixed branch of omega^{jk/2}; it changes each D_jk by a
/// phase only, so every projector set built from these is branch independent.
Matrix displacement(int d, int j, int k);

/// All d^2 displacement operators, labelled (j, k) in row-major order; element 0 is the identity.
ErrorBasis build_wh_basis(int d);

struct BasisValidation {
  double max_unitarity_deviation = 0.0;      // max_g ||U_g^dag U_g - I||_max
  double max_orthogonality_deviation = 0.0;  // max_{g,h} |Tr[U_g^dag U_h] - d delta_gh|
  int identity_count = 0;                    // elements proportional to I (up to phase)
  int identity_index = -1;
  bool passed = false;
};

/// passed requires both deviations <= tol and exactly one identity-proportional element.
BasisValidation validate_error_basis(const ErrorBasis& basis, double tol = 1e-10);

/// Same check on raw matrices; throws StructuralError if there are not d^2 d x d matrices.
BasisValidation validate_error_basis(int d, std::span<const Matrix> ops, double tol = 1e-10);

/// Moves the identity-proportional element to position 0 and strips its phase.
/// Throws StructuralError unless exactly one such element exists at `tol`.
ErrorBasis canonicalize_identity(const ErrorBasis& basis, double tol = 1e-10);

/// The d^2 vectors U_g|phi> in label order.
VectorSet orbit(const Fiducial& fiducial, const ErrorBasis& basis);

/// S = sum_g U_g |psi><psi| U_g^dag. Equals d*I for any valid orthogonal unitary basis.
Matrix one_design_operator(const Fiducial& psi, const ErrorBasis& basis);

/// max-entry distance of one_design_operator from d*I.
double one_design_deviation(const Fiducial& psi, const ErrorBasis& basis);

/// Kronecker products U_a (x) V_b of two bases, labelled "a*b".
ErrorBasis tensor_product(const ErrorBasis& first, const ErrorBasis& second);

}  // namespace sicpovm
