#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sicpovm/analytic.hpp"
#include "sicpovm/errors.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/wh_group.hpp"

using namespace sicpovm;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Displacement, QubitShiftAndClock) {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  EXPECT_LE(max_abs(displacement(2, 0, 1) - x), 1e-15);
  EXPECT_LE(max_abs(displacement(2, 1, 0) - z), 1e-15);
}

TEST(Displacement, ZeroLabelIsIdentity) {
  for (int d = 2; d <= 9; ++d) EXPECT_LE(max_abs(displacement(d, 0, 0) - Matrix::Identity(d, d)), 0.0);
}

TEST(Displacement, MatchesEntrywiseDefinition) {
  for (int d = 2; d <= 7; ++d)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) EXPECT_LE(max_abs(displacement(d, j, k) - oracle::displacement(d, j, k)), 1e-14);
}

TEST(Displacement, RejectsBadArguments) {
  EXPECT_THROW(displacement(1, 0, 0), DomainError);
  EXPECT_THROW(displacement(3, 3, 0), IndexError);
  EXPECT_THROW(displacement(3, 0, -1), IndexError);
}

TEST(Displacement, UnitaryUpToFifty) {
  for (int d = 2; d <= 50; ++d) {
    const ErrorBasis basis = build_wh_basis(d);
    double worst = 0.0;
    for (const auto& u : basis.ops()) worst = std::max(worst, max_abs(u.adjoint() * u - Matrix::Identity(d, d)));
    EXPECT_LE(worst, 1e-12) << "d=" << d;
  }
}

TEST(WhBasis, QubitElements) {
  const ErrorBasis b = build_wh_basis(2);
  ASSERT_EQ(b.size(), 4);
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  const Matrix y = Complex(0, 1) * (x * z);
  EXPECT_LE(max_abs(b.op(0) - Matrix::Identity(2, 2)), 0.0);
  EXPECT_LE(max_abs(b.op(1) - x), 1e-15);   // (0,1)
  EXPECT_LE(max_abs(b.op(2) - z), 1e-15);   // (1,0)
  EXPECT_LE(max_abs(b.op(3) - y), 1e-15);   // (1,1)
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h)
      EXPECT_NEAR(std::abs((b.op(g).adjoint() * b.op(h)).trace()), g == h ? 2.0 : 0.0, 1e-15);
}

TEST(WhBasis, RowMajorLabelsAndSingleIdentity) {
  for (int d = 2; d <= 8; ++d) {
    const ErrorBasis b = build_wh_basis(d);
    EXPECT_TRUE(b.is_weyl_heisenberg());
    for (int g = 0; g < b.size(); ++g) {
      ASSERT_TRUE(b.label(g).index.has_value());
      EXPECT_EQ((*b.label(g).index)[0], g / d);
      EXPECT_EQ((*b.label(g).index)[1], g % d);
    }
    const BasisValidation v = validate_error_basis(b);
    EXPECT_TRUE(v.passed);
    EXPECT_EQ(v.identity_count, 1);
    EXPECT_EQ(v.identity_index, 0);
  }
  EXPECT_THROW(build_wh_basis(1), DomainError);
}

TEST(WhBasis, OrthogonalityDefinition) {
  for (int d : {3, 5, 10}) {
    const ErrorBasis b = build_wh_basis(d);
    double worst = 0.0;
    for (int g = 0; g < b.size(); ++g)
      for (int h = 0; h < b.size(); ++h)
        worst = std::max(worst, std::abs((b.op(g).adjoint() * b.op(h)).trace() - Complex(g == h ? d : 0)));
    EXPECT_LE(worst, 1e-10);
    EXPECT_LE(validate_error_basis(b).max_orthogonality_deviation, 1e-10);
  }
}

TEST(Validate, PassesAndFailsOnPerturbation) {
  EXPECT_TRUE(validate_error_basis(build_wh_basis(5), 1e-10).passed);

  std::vector<Matrix> ops = build_wh_basis(5).ops();
  ops[7](2, 3) += 1e-3;
  const BasisValidation v = validate_error_basis(5, ops, 1e-10);
  EXPECT_FALSE(v.passed);
  EXPECT_GT(v.max_unitarity_deviation, 5e-4);
  EXPECT_LT(v.max_unitarity_deviation, 5e-3);
}

TEST(Validate, WrongCountIsStructural) {
  std::vector<Matrix> ops = build_wh_basis(3).ops();
  ops.pop_back();
  EXPECT_THROW(validate_error_basis(3, ops), StructuralError);
  std::vector<Matrix> shapes = build_wh_basis(3).ops();
  shapes[4] = Matrix::Identity(2, 2);
  EXPECT_THROW(validate_error_basis(3, shapes), StructuralError);
}

TEST(Validate, DuplicateIdentityFails) {
  std::vector<Matrix> ops = build_wh_basis(2).ops();
  ops[3] = Complex(0, 1) * Matrix::Identity(2, 2);
  const BasisValidation v = validate_error_basis(2, ops);
  EXPECT_EQ(v.identity_count, 2);
  EXPECT_FALSE(v.passed);
}

TEST(Canonicalize, MovesPhasedIdentityToFront) {
  std::vector<Matrix> ops = build_wh_basis(3).ops();
  std::vector<BasisLabel> labels;
  for (int g = 0; g < 9; ++g) labels.push_back(BasisLabel::named("op" + std::to_string(g)));
  std::swap(ops[0], ops[5]);
  ops[5] *= std::polar(1.0, 0.7);
  const ErrorBasis c = canonicalize_identity(ErrorBasis(3, ops, labels));
  EXPECT_LE(max_abs(c.op(0) - Matrix::Identity(3, 3)), 1e-15);
  EXPECT_EQ(c.label(0).name, "op5");
  EXPECT_TRUE(validate_error_basis(c).passed);
}

TEST(Orbit, QubitSicIsTetrahedron) {
  const ErrorBasis b = build_wh_basis(2);
  const VectorSet o = orbit(fiducial_d2(0), b);
  ASSERT_EQ(o.size(), 4);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      if (a != c) EXPECT_NEAR(std::norm(o.vector(a).dot(o.vector(c))), 1.0 / 3.0, 1e-15);
  // Bloch vectors sum to zero with pairwise dot -1/3.
  std::vector<std::array<double, 3>> bloch;
  for (int a = 0; a < 4; ++a) bloch.push_back(bloch_vector(Fiducial(o.vector(a))));
  for (int a = 0; a < 4; ++a)
    for (int c = a + 1; c < 4; ++c) {
      double dot = 0;
      for (int i = 0; i < 3; ++i) dot += bloch[a][i] * bloch[c][i];
      EXPECT_NEAR(dot, -1.0 / 3.0, 1e-14);
    }
}

TEST(Orbit, BasisStateIsNotSic) {
  Vector zero = Vector::Zero(2);
  zero(0) = 1;
  const VectorSet o = orbit(Fiducial(zero), build_wh_basis(2));
  int ones = 0;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      const double v = std::norm(o.vector(a).dot(o.vector(c)));
      EXPECT_TRUE(std::abs(v) < 1e-15 || std::abs(v - 1) < 1e-15);
      if (a != c && std::abs(v - 1) < 1e-15) ++ones;
    }
  EXPECT_EQ(ones, 4);  // {I,X} -> |0>,|1>; Z,Y repeat them
  EXPECT_FALSE(certify_sic(o).passed);
}

TEST(Orbit, IdentityElementIsFiducialAndDimensionChecked) {
  std::mt19937_64 rng(3);
  const Fiducial f(oracle::random_state(4, rng));
  const VectorSet o = orbit(f, build_wh_basis(4));
  EXPECT_LE((o.vector(0) - f.amplitudes()).norm(), 0.0);
  EXPECT_THROW(orbit(f, build_wh_basis(3)), DomainError);
}

TEST(OneDesign, RandomStatesGiveDIdentity) {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 10; ++d) {
    const ErrorBasis b = build_wh_basis(d);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, one_design_deviation(Fiducial(oracle::random_state(d, rng)), b));
    EXPECT_LE(worst, 1e-12) << "d=" << d;
  }
  Vector zero = Vector::Zero(2);
  zero(0) = 1;
  EXPECT_LE(max_abs(one_design_operator(Fiducial(zero), build_wh_basis(2)) - 2.0 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(OneDesign, NonOrthogonalBasisDeviates) {
  std::vector<Matrix> ops = build_wh_basis(3).ops();
  std::vector<BasisLabel> labels = build_wh_basis(3).labels();
  ops[4] = ops[3];  // unitary but no longer orthogonal
  const ErrorBasis broken(3, ops, labels);
  EXPECT_FALSE(validate_error_basis(broken).passed);
  std::mt19937_64 rng(5);
  EXPECT_GT(one_design_deviation(Fiducial(oracle::random_state(3, rng)), broken), 1e-3);
}

TEST(ProjectiveClosure, ProductIsDisplacementUpToPhase) {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 7; ++d) {
    const Vector phi = oracle::random_state(d, rng);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m) {
            const Vector a = displacement(d, j, k) * displacement(d, l, m) * phi;
            const Vector b = displacement(d, (j + l) % d, (k + m) % d) * phi;
            EXPECT_LE(max_abs(a * a.adjoint() - b * b.adjoint()), 1e-12);
          }
  }
}

TEST(TensorProduct, QubitTimesQutritIsValid) {
  const ErrorBasis t = tensor_product(build_wh_basis(2), build_wh_basis(3));
  EXPECT_EQ(t.dimension(), 6);
  EXPECT_EQ(t.size(), 36);
  EXPECT_FALSE(t.is_weyl_heisenberg());
  const BasisValidation v = validate_error_basis(t);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.identity_index, 0);
  std::mt19937_64 rng(2);
  EXPECT_LE(one_design_deviation(Fiducial(oracle::random_state(6, rng)), t), 1e-12);
}
