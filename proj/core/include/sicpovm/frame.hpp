#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sicpovm/types.hpp"

namespace sicpovm {

/// Certification profiles for SIC overlap errors.
inline constexpr double kNumericalSicTolerance = 1e-8;
inline constexpr double kAnalyticSicTolerance = 1e-12;

/// Singular values below tol * (largest) count as zero.
inline constexpr double kGramRankTolerance = 1e-8;

enum class CertificateFlag {
  none,
  insufficient_support,  // n < dim Sym^t(C^d): no t-design of this size exists
  wrong_cardinality,     // SIC check on a set with n != d^2
};

struct DesignCertificate {
  int t = 0;
  long long n = 0;
  int d = 0;
  double potential = 0.0;   // sum_{j,k} |<phi_j|phi_k>|^{2t}
  double threshold = 0.0;   // n^2 t! (d-1)! / (t+d-1)!
  double deviation = 0.0;   // potential - threshold, signed
  std::optional<double> max_overlap_error;  // SIC certificates only
  bool passed = false;
  double tol = 0.0;
  CertificateFlag flag = CertificateFlag::none;
};

/// S = sum_k |psi_k><psi_k|.
Matrix frame_operator(const VectorSet& set);

/// sum_{j,k} |<psi_j|psi_k>|^{2t} from pairwise overlaps, compensated summation.
/// Throws DomainError for t < 1.
double frame_potential(const VectorSet& set, int t);

/// max(n, n^2/d).
double bf_lower_bound(long long n, int d);

/// n^2 t! (d-1)! / (t+d-1)!, evaluated as a running product. Throws DomainError on non-positive input.
double t_design_threshold(long long n, int d, int t);

/// binomial(t+d-1, d-1). Throws DomainError on non-positive input or overflow.
std::uint64_t symmetric_subspace_dim(int d, int t);

/// passed iff n >= symmetric_subspace_dim(d, t) and potential - threshold <= tol.
DesignCertificate certify_design(const VectorSet& set, int t, double tol);

/// passed iff max_{j != k} | |<phi_j|phi_k>|^2 - 1/(d+1) | <= tol; t = 2 potential fields filled.
DesignCertificate certify_sic(const VectorSet& set, double tol = kNumericalSicTolerance);

/// certify_design tolerance paired with a SIC overlap tolerance.
///
/// At n = d^2 the excess potential is sum_{j != k} (lambda_jk - 1/(d+1))^2
/// plus a non-negative tight-frame term, so overlap error tol corresponds to
/// an excess of at most n(n-1) tol^2. Floored at the roundoff level of the potential.
double design_tolerance_for_sic(long long n, int d, double sic_tol);

/// n x n real matrix of (Pi_j, Pi_k) = |<phi_j|phi_k>|^2.
RealMatrix projector_gram(const VectorSet& set);

struct CompletenessReport {
  int rank = 0;
  std::vector<double> gram_eigenvalues;  // ascending
  bool informationally_complete = false;  // rank == d^2
};

CompletenessReport informational_completeness(const VectorSet& set,
                                              double tol = kGramRankTolerance);

struct SimplexEmbedding {
  std::vector<Matrix> sigmas;  // sqrt(d/(d-1)) (Pi_j - I/d)
  RealMatrix gram;             // Tr[sigma_j sigma_k]
};

/// Throws DomainError for d < 2.
SimplexEmbedding simplex_embedding(const VectorSet& set);

/// (1/n) sum_k <phi_k|A|phi_k> Pi_k. For a 2-design this is (A + Tr[A] I) / (d(d+1)).
Matrix design_average(const VectorSet& set, const Matrix& a);

/// max-entry distance between design_average and (A + Tr[A] I) / (d(d+1)).
double design_average_deviation(const VectorSet& set, const Matrix& a);

}  // namespace sicpovm
