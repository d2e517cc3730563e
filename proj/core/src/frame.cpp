#include "sicpovm/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sicpovm/errors.hpp"
#include "sicpovm/numeric.hpp"

namespace sicpovm {

namespace {

void require_same_dimension(const VectorSet& set, const Matrix& a) {
  if (a.rows() != set.dimension() || a.cols() != set.dimension()) {
    throw DomainError("operator shape does not match the vector set dimension");
  }
}

}  // namespace

Matrix frame_operator(const VectorSet& set) {
  return set.columns() * set.columns().adjoint();
}

RealMatrix projector_gram(const VectorSet& set) {
  const Matrix overlaps = set.columns().adjoint() * set.columns();
  return overlaps.cwiseAbs2();
}

double frame_potential(const VectorSet& set, int t) {
  if (t < 1) throw DomainError("frame potential order must be >= 1");
  const RealMatrix gram = projector_gram(set);
  const Eigen::Index n = gram.rows();
  CompensatedSum diagonal;
  CompensatedSum off_diagonal;
  for (Eigen::Index j = 0; j < n; ++j) {
    diagonal += int_pow(gram(j, j), t);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      // the overlap matrix is Hermitian; average the two roundoff copies
      off_diagonal += int_pow(0.5 * (gram(j, k) + gram(k, j)), t);
    }
  }
  return diagonal.value() + 2.0 * off_diagonal.value();
}

double bf_lower_bound(long long n, int d) {
  const double nn = static_cast<double>(n);
  return std::max(nn, nn * nn / d);
}

double t_design_threshold(long long n, int d, int t) {
  if (n < 1 || d < 1 || t < 1) throw DomainError("t_design_threshold needs n, d, t >= 1");
  // t! (d-1)! / (t+d-1)! = prod_{i=1}^{t} i / (d-1+i)
  double ratio = 1.0;
  for (int i = 1; i <= t; ++i) {
    ratio *= static_cast<double>(i) / static_cast<double>(d - 1 + i);
  }
  const double nn = static_cast<double>(n);
  return nn * nn * ratio;
}

std::uint64_t symmetric_subspace_dim(int d, int t) {
  if (d < 1 || t < 1) throw DomainError("symmetric_subspace_dim needs d, t >= 1");
  // binomial(t+d-1, t) by the exact multiplicative recurrence
  const std::uint64_t k = static_cast<std::uint64_t>(std::min(t, d - 1));
  const std::uint64_t top = static_cast<std::uint64_t>(t) + static_cast<std::uint64_t>(d) - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (top - k + i) is divisible by i; split the division to stay in range
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (top - k + i) / (i / g);
    if (result / g > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw DomainError("symmetric subspace dimension overflows 64 bits");
    }
    result = (result / g) * factor;
  }
  return result;
}

DesignCertificate certify_design(const VectorSet& set, int t, double tol) {
  DesignCertificate cert;
  cert.t = t;
  cert.n = set.size();
  cert.d = set.dimension();
  cert.tol = tol;
  cert.potential = frame_potential(set, t);
  cert.threshold = t_design_threshold(cert.n, cert.d, t);
  cert.deviation = cert.potential - cert.threshold;

  std::uint64_t support = 0;
  try {
    support = symmetric_subspace_dim(cert.d, t);
  } catch (const DomainError&) {
    support = std::numeric_limits<std::uint64_t>::max();
  }
  if (static_cast<std::uint64_t>(cert.n) < support) {
    cert.flag = CertificateFlag::insufficient_support;
    cert.passed = false;
  } else {
    cert.passed = cert.deviation <= tol;
  }
  return cert;
}

DesignCertificate certify_sic(const VectorSet& set, double tol) {
  const int d = set.dimension();
  const long long n = set.size();
  DesignCertificate cert;
  cert.t = 2;
  cert.n = n;
  cert.d = d;
  cert.tol = tol;
  cert.threshold = t_design_threshold(n, d, 2);

  const RealMatrix gram = projector_gram(set);
  const double target = 1.0 / (d + 1);
  CompensatedSum potential;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < gram.rows(); ++j) {
    for (Eigen::Index k = 0; k < gram.cols(); ++k) {
      potential += gram(j, k) * gram(j, k);
      if (j != k) worst = std::max(worst, std::abs(gram(j, k) - target));
    }
  }
  cert.potential = potential.value();
  cert.deviation = cert.potential - cert.threshold;
  cert.max_overlap_error = worst;

  if (n != static_cast<long long>(d) * d) {
    cert.flag = CertificateFlag::wrong_cardinality;
    cert.passed = false;
  } else {
    cert.passed = worst <= tol;
  }
  return cert;
}

double design_tolerance_for_sic(long long n, int d, double sic_tol) {
  const double nn = static_cast<double>(n);
  // Exact SIC orbits land within a few ulps of the threshold (measured up to d = 27).
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * t_design_threshold(n, d, 2);
  return std::max(nn * (nn - 1.0) * sic_tol * sic_tol, floor);
}

CompletenessReport informational_completeness(const VectorSet& set, double tol) {
  const RealMatrix gram = projector_gram(set);
  const RealMatrix symmetric = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetric, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd eigenvalues = solver.eigenvalues();

  CompletenessReport report;
  report.gram_eigenvalues.assign(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  const double largest = eigenvalues.cwiseAbs().maxCoeff();
  for (double value : report.gram_eigenvalues) {
    if (std::abs(value) > tol * largest) ++report.rank;
  }
  const int d = set.dimension();
  report.informationally_complete = report.rank == d * d;
  return report;
}

SimplexEmbedding simplex_embedding(const VectorSet& set) {
  const int d = set.dimension();
  if (d < 2) throw DomainError("simplex embedding needs d >= 2");
  const double scale = std::sqrt(static_cast<double>(d) / (d - 1));
  const Matrix identity_part = Matrix::Identity(d, d) / static_cast<double>(d);

  SimplexEmbedding embedding;
  embedding.sigmas.reserve(static_cast<std::size_t>(set.size()));
  for (int k = 0; k < set.size(); ++k) {
    const Vector v = set.columns().col(k);
    embedding.sigmas.push_back(scale * (v * v.adjoint() - identity_part));
  }
  const int n = set.size();
  embedding.gram.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      // Tr[sigma_j^dag sigma_k] as a flattened inner product; real for Hermitian sigmas
      const double value = embedding.sigmas[j].reshaped().dot(embedding.sigmas[k].reshaped()).real();
      embedding.gram(j, k) = value;
      embedding.gram(k, j) = value;
    }
  }
  return embedding;
}

Matrix design_average(const VectorSet& set, const Matrix& a) {
  require_same_dimension(set, a);
  const int d = set.dimension();
  Matrix sum = Matrix::Zero(d, d);
  for (int k = 0; k < set.size(); ++k) {
    const Vector v = set.columns().col(k);
    const Complex weight = (v.adjoint() * a * v).value();
    sum.noalias() += weight * (v * v.adjoint());
  }
  return sum / static_cast<double>(set.size());
}

double design_average_deviation(const VectorSet& set, const Matrix& a) {
  const int d = set.dimension();
  Matrix expected = a;
  expected.diagonal().array() += a.trace();
  expected /= static_cast<double>(d) * (d + 1);
  return (design_average(set, a) - expected).cwiseAbs().maxCoeff();
}

}  // namespace sicpovm
