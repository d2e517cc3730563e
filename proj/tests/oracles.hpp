#pragma once

// Brute-force reference computations used only by the tests. Everything here
// is written from the definitions with dense matrices and plain loops, so it
// shares no code path with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// D_jk entry by entry: column m has mu^{jk} omega^{jm} in row (k + m) mod d.
inline Mat displacement(int d, int j, int k) {
  const double pi = std::numbers::pi;
  Mat out = Mat::Zero(d, d);
  const cd mu_jk = std::polar(1.0, pi * j * k / d);
  for (int m = 0; m < d; ++m) out((k + m) % d, m) = mu_jk * std::polar(1.0, 2.0 * pi * j * m / d);
  return out;
}

inline std::vector<Mat> wh_ops(int d) {
  std::vector<Mat> ops;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) ops.push_back(displacement(d, j, k));
  return ops;
}

inline Vec random_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(n(rng), n(rng));
  return v / v.norm();
}

inline Mat random_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cd(n(rng), n(rng));
  return a;
}

inline double overlap2(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

// d^2 orbit vectors as columns.
inline Mat orbit(const Vec& phi, const std::vector<Mat>& ops) {
  Mat out(phi.size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t g = 0; g < ops.size(); ++g) out.col(static_cast<Eigen::Index>(g)) = ops[g] * phi;
  return out;
}

inline double max_sic_error(const Mat& cols) {
  const double target = 1.0 / (static_cast<double>(cols.rows()) + 1.0);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < cols.cols(); ++a)
    for (Eigen::Index b = 0; b < cols.cols(); ++b)
      if (a != b) worst = std::max(worst, std::abs(overlap2(cols.col(a), cols.col(b)) - target));
  return worst;
}

// Tr[S_t^2] with S_t = sum_k |psi_k^{(x)t}><psi_k^{(x)t}| built explicitly.
inline double frame_potential_explicit(const Mat& cols, int t) {
  const Eigen::Index d = cols.rows();
  Eigen::Index dim = 1;
  for (int i = 0; i < t; ++i) dim *= d;
  Mat s = Mat::Zero(dim, dim);
  for (Eigen::Index k = 0; k < cols.cols(); ++k) {
    Vec power = cols.col(k);
    for (int i = 1; i < t; ++i) {
      Vec next(power.size() * d);
      for (Eigen::Index a = 0; a < power.size(); ++a)
        for (Eigen::Index b = 0; b < d; ++b) next(a * d + b) = power(a) * cols(b, k);
      power = next;
    }
    s += power * power.adjoint();
  }
  return (s * s).trace().real();
}

// n^2 t! (d-1)! / (t+d-1)! through lgamma.
inline double threshold_lgamma(double n, int d, int t) {
  return n * n * std::exp(std::lgamma(t + 1.0) + std::lgamma(static_cast<double>(d)) -
                          std::lgamma(static_cast<double>(t + d)));
}

inline double objective(const Vec& phi, const std::vector<Mat>& ops) {
  double f = 0.0;
  for (const auto& u : ops) f += std::pow(std::norm(phi.dot(u * phi)), 2);
  return f;
}

// Central differences of F(x) = f(x/|x|) in the 2d real coordinates, packed
// as complex (dF/dRe, dF/dIm). At |x| = 1 this is the tangent gradient.
inline Vec finite_difference_gradient(const Vec& phi, const std::vector<Mat>& ops, double h = 1e-5) {
  const auto f = [&](const Vec& x) { return objective(x / x.norm(), ops); };
  Vec out(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    Vec p = phi, m = phi;
    p(i) += h;
    m(i) -= h;
    const double re = (f(p) - f(m)) / (2 * h);
    p = phi;
    m = phi;
    p(i) += cd(0, h);
    m(i) -= cd(0, h);
    const double im = (f(p) - f(m)) / (2 * h);
    out(i) = cd(re, im);
  }
  return out;
}

// max_g |<b|U_g|a>|^2 over a basis, straight from the definition.
inline double best_alignment(const Vec& a, const Vec& b, const std::vector<Mat>& ops) {
  double best = 0.0;
  for (const auto& u : ops) best = std::max(best, overlap2(b, u * a));
  return best;
}

}  // namespace oracle
