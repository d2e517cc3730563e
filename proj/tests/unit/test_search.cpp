#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sicpovm/analytic.hpp"
#include "sicpovm/errors.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/wh_group.hpp"

using namespace sicpovm;

TEST(Objective, Examples) {
  const ErrorBasis b2 = build_wh_basis(2);
  EXPECT_NEAR(objective(fiducial_d2(0), b2), 4.0 / 3.0, 1e-15);
  Vector zero = Vector::Zero(2);
  zero(0) = 1;
  EXPECT_NEAR(objective(Fiducial(zero), b2), 2.0, 1e-15);
  for (int d = 2; d <= 12; ++d) EXPECT_DOUBLE_EQ(objective_global_minimum(d), 2.0 * d / (d + 1));
  EXPECT_THROW(objective(fiducial_d2(0), build_wh_basis(3)), DomainError);
}

TEST(Objective, MatchesOracleAndBound) {
  std::mt19937_64 rng(12);
  for (int d = 2; d <= 9; ++d) {
    const ErrorBasis b = build_wh_basis(d);
    const auto ops = oracle::wh_ops(d);
    for (int i = 0; i < 10; ++i) {
      const Vector phi = oracle::random_state(d, rng);
      const double f = objective(Fiducial(phi), b);
      EXPECT_NEAR(f, oracle::objective(phi, ops), 1e-13);
      EXPECT_GE(f, objective_global_minimum(d) - 1e-9);
    }
  }
}

TEST(Objective, DenseBasisPathAgrees) {
  std::mt19937_64 rng(13);
  const ErrorBasis wh = build_wh_basis(5);
  const ErrorBasis plain(5, wh.ops(), wh.labels());
  ASSERT_FALSE(plain.is_weyl_heisenberg());
  const Fiducial phi(oracle::random_state(5, rng));
  EXPECT_NEAR(objective(phi, wh), objective(phi, plain), 1e-14);
  EXPECT_LE((gradient(phi, wh) - gradient(phi, plain)).norm(), 1e-13);
}

TEST(Objective, PhaseInvariance) {
  std::mt19937_64 rng(14);
  for (int d = 2; d <= 8; ++d) {
    const ErrorBasis b = build_wh_basis(d);
    const Vector phi = oracle::random_state(d, rng);
    const Complex phase = std::polar(1.0, 0.37 * d);
    const Fiducial a(phi), c(phase * phi);
    EXPECT_NEAR(objective(a, b), objective(c, b), 1e-14);
    EXPECT_LE((phase * gradient(a, b) - gradient(c, b)).norm(), 1e-13);
  }
}

TEST(Gradient, VanishesAtSic) {
  EXPECT_LE(gradient(fiducial_d2(0), build_wh_basis(2)).norm(), 1e-10);
  EXPECT_LE(gradient(fiducial_d4({}), build_wh_basis(4)).norm(), 1e-10);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 7;
    const ErrorBasis b = build_wh_basis(d);
    const Vector phi = oracle::random_state(d, rng);
    const Vector g = gradient(Fiducial(phi), b);
    const Vector fd = oracle::finite_difference_gradient(phi, oracle::wh_ops(d));
    const double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
    for (int i = 0; i < d; ++i) {
      EXPECT_LE(std::abs(g(i).real() - fd(i).real()) / scale, 1e-5) << "d=" << d;
      EXPECT_LE(std::abs(g(i).imag() - fd(i).imag()) / scale, 1e-5) << "d=" << d;
    }
    EXPECT_LE(std::abs(phi.dot(g)), 1e-13);
  }
}

TEST(SearchConfig, Validation) {
  SearchConfig c = SearchConfig::defaults(5, 1);
  EXPECT_EQ(c.restarts, 160);
  EXPECT_EQ(c.max_iterations, 5000);
  EXPECT_DOUBLE_EQ(c.gradient_tol, 1e-9);
  EXPECT_DOUBLE_EQ(c.objective_tol, 1e-10);
  EXPECT_NO_THROW(c.validate());
  c.restarts = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig::defaults(5);
  c.objective_tol = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig::defaults(5);
  c.basis = std::make_shared<const ErrorBasis>(build_wh_basis(4));
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(minimize(SearchConfig::defaults(1)), DomainError);
}

TEST(HaarStart, DeterministicAndNormalized) {
  const Fiducial a = haar_random_fiducial(6, 99), b = haar_random_fiducial(6, 99);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NE(haar_random_fiducial(6, 100).amplitudes(), a.amplitudes());
}

TEST(Minimize, ConvergesFromAnalyticStart) {
  SearchConfig c = SearchConfig::defaults(4, 0);
  const SearchResult r = minimize(c, fiducial_d4({0, 1, 1, 2, false, 1}));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 3);
  EXPECT_LE(r.sic_deviation, 1e-12);
}

TEST(Minimize, DescentTraceIsNonIncreasing) {
  for (int d : {3, 5, 7}) {
    SearchConfig c = SearchConfig::defaults(d, 5);
    c.record_trace = true;
    const SearchResult r = minimize(c, haar_random_fiducial(d, 123 + d));
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]) << "step " << i;
    EXPECT_GE(r.objective, r.global_min - 1e-9);
    EXPECT_NEAR(r.objective - r.global_min, r.objective_gap, 1e-12);
  }
}

TEST(Minimize, ReportsLocalMinimumHonestly) {
  SearchConfig c = SearchConfig::defaults(6, 0);
  c.max_iterations = 3;
  c.refine = false;
  const SearchResult r = minimize(c, haar_random_fiducial(6, 1));
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.sic_deviation, 1e-8);
  EXPECT_LE(r.iterations, 3);
}

TEST(Minimize, QutritLandsOnContinuum) {
  SearchConfig c = SearchConfig::defaults(3, 8);
  std::vector<Fiducial> found;
  for (int i = 0; i < 6; ++i) {
    const SearchResult r = minimize(c, haar_random_fiducial(3, 1000 + i));
    if (r.converged) found.push_back(r.fiducial);
  }
  ASSERT_GE(found.size(), 2u);
  for (const Fiducial& f : found)
    EXPECT_LE(oracle::max_sic_error(oracle::orbit(f.amplitudes(), oracle::wh_ops(3))), 1e-8);
  EXPECT_GT((found[0].amplitudes() - found[1].amplitudes()).norm(), 1e-6);
}

TEST(Minimize, BitwiseReproducible) {
  SearchConfig c = SearchConfig::defaults(7, 3);
  c.record_trace = true;
  const SearchResult a = minimize(c, haar_random_fiducial(7, 42));
  const SearchResult b = minimize(c, haar_random_fiducial(7, 42));
  EXPECT_TRUE(a == b);
}

TEST(MultiStart, FindsFiveDimensionalFiducial) {
  SearchConfig c = SearchConfig::defaults(5, 42);
  c.restarts = 64;
  std::vector<int> seen;
  const MultiStartResult m = multi_start(c, [&](const SearchResult& r) { seen.push_back(r.restart_index); });
  ASSERT_EQ(m.all.size(), 64u);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(seen[static_cast<std::size_t>(i)], i);
  EXPECT_TRUE(m.best.converged);
  EXPECT_LE(m.best.sic_deviation, 1e-8);
  EXPECT_GT(m.success_fraction(), 0.0);
  for (const auto& r : m.all) {
    EXPECT_GE(r.objective, r.global_min - 1e-9);
    EXPECT_EQ(r.seed, restart_seed(42, static_cast<std::uint64_t>(r.restart_index)));
    EXPECT_LE(m.best.objective_gap, r.objective_gap);
    if (r.converged) {
      const VectorSet o = orbit(r.fiducial, build_wh_basis(5));
      EXPECT_TRUE(certify_sic(o, 1e-8).passed);
      EXPECT_TRUE(certify_design(o, 2, design_tolerance_for_sic(25, 5, 1e-8)).passed);
    }
  }
}

TEST(MultiStart, SevenDimensionsWithTwoHundredRestarts) {
  SearchConfig c = SearchConfig::defaults(7, 1);
  c.restarts = 200;
  EXPECT_TRUE(multi_start(c).best.converged);
}

TEST(MultiStart, FiducialGaugeIsFixed) {
  SearchConfig c = SearchConfig::defaults(4, 2);
  c.restarts = 4;
  for (const auto& r : multi_start(c).all) {
    EXPECT_EQ(r.fiducial[0].imag(), 0.0);
    EXPECT_GT(r.fiducial[0].real(), 0.0);
  }
}
