#include "sicpovm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sicpovm/errors.hpp"

namespace sicpovm {

namespace {

using std::numbers::pi;

constexpr double kPhaseMatchTol = 1e-9;

Complex polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

void require_permutation(const std::array<int, 3>& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) {
    throw DomainError("perm must be a permutation of {0,1,2}");
  }
}

bool is_allowed_d3_phase(double theta) {
  const double wrapped = std::remainder(theta, 2.0 * pi);
  for (double allowed : kD3Phases) {
    if (std::abs(std::remainder(wrapped - allowed, 2.0 * pi)) <= kPhaseMatchTol) return true;
  }
  return false;
}

Vector permuted(const Vector& column, const std::array<int, 3>& perm) {
  Vector out(3);
  for (int i = 0; i < 3; ++i) out(i) = column(perm[static_cast<std::size_t>(i)]);
  return out;
}

constexpr std::array<std::array<int, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

Fiducial fiducial_d2(int which) {
  const double s3 = std::sqrt(3.0);
  const double big = std::sqrt(3.0 + s3);
  const double small = std::sqrt(3.0 - s3);
  const Complex phase = polar_unit(pi / 4.0);
  Vector v(2);
  switch (which) {
    case 0:
      v << big, phase * small;
      break;
    case 1:
      v << -small, phase * big;
      break;
    default:
      throw DomainError("d=2 fiducial index must be 0 or 1");
  }
  return Fiducial(v / std::sqrt(6.0));
}

std::array<double, 3> bloch_vector(const Fiducial& qubit) {
  if (qubit.dimension() != 2) throw DomainError("Bloch vector needs a qubit state");
  const Complex a = qubit[0];
  const Complex b = qubit[1];
  const Complex coherence = std::conj(a) * b;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(a) - std::norm(b)};
}

std::array<double, 2> d3_radii(double r0) {
  const double lower = 1.0 / std::sqrt(2.0);
  const double upper = std::sqrt(2.0 / 3.0);
  if (!(r0 > lower && r0 <= upper)) {
    throw DomainError("d=3 r0 must lie in (1/sqrt2, sqrt(2/3)], got " + std::to_string(r0));
  }
  // At r0 = sqrt(2/3) the discriminant is rounding noise of either sign, and
  // its square root would turn 1e-16 into 1e-8.
  const double disc = 2.0 - 3.0 * r0 * r0;
  const double root = disc <= 8.0 * std::numeric_limits<double>::epsilon() ? 0.0 : std::sqrt(disc);
  return {0.5 * r0 + 0.5 * root, 0.5 * r0 - 0.5 * root};
}

Fiducial fiducial_d3(const D3Params& params) {
  require_permutation(params.perm);
  Vector column(3);
  if (params.boundary_theta) {
    const double h = 1.0 / std::sqrt(2.0);
    column << h, h * polar_unit(*params.boundary_theta), 0.0;
  } else {
    const auto [rplus, rminus] = d3_radii(params.r0);
    if (!is_allowed_d3_phase(params.theta1) || !is_allowed_d3_phase(params.theta2)) {
      throw DomainError("d=3 phases must be one of pi/3, pi, 5pi/3");
    }
    column << params.r0, rplus * polar_unit(params.theta1), rminus * polar_unit(params.theta2);
  }
  // r0^2 + r+^2 + r-^2 = 1 holds identically; renormalize away the last ulp.
  return Fiducial::normalized(permuted(column, params.perm));
}

D4Constants d4_constants() {
  const double s5 = std::sqrt(5.0);
  const double s2 = std::sqrt(2.0);
  D4Constants c{};
  c.r0 = std::sqrt(1.0 - 1.0 / s5) / (2.0 * std::sqrt(2.0 - s2));
  c.r1 = (s2 - 1.0) * c.r0;
  const double inner = std::sqrt(1.0 / 5.0 + 1.0 / s5);
  c.rplus = 0.5 * std::sqrt(1.0 + 1.0 / s5 + inner);
  c.rminus = 0.5 * std::sqrt(1.0 + 1.0 / s5 - inner);
  c.a = std::acos(2.0 / std::sqrt(5.0 + s5));
  c.b = std::asin(2.0 / s5);
  return c;
}

double d4_printed_r0() {
  const double s5 = std::sqrt(5.0);
  return (1.0 - 1.0 / s5) / (2.0 * std::sqrt(2.0 - std::sqrt(2.0)));
}

std::array<double, 3> d4_phase_triple(int j, int k, int m, int n) {
  if (j < 0 || j > 1 || k < 0 || k > 1 || m < 0 || m > 1 || n < 0 || n > 3) {
    throw DomainError("d=4 phase indices need j,k,m in {0,1} and n in {0..3}");
  }
  const D4Constants c = d4_constants();
  const double sign = (m == 0) ? 1.0 : -1.0;
  const double theta_plus = sign * (c.a / 2.0 + c.b / 4.0) + pi * (m + 2 * n + 7 * j + 1) / 4.0;
  const double theta_one = pi * (2 * k + 1) / 2.0;
  const double theta_minus =
      sign * (-c.a / 2.0 + c.b / 4.0) + pi * (m + 2 * n + 3 * j + 4 * k + 1) / 4.0;
  return {theta_plus, theta_one, theta_minus};
}

Fiducial fiducial_d4(const D4Params& params) {
  if (params.cycle < 0 || params.cycle > 3) throw DomainError("d=4 cycle must be in {0..3}");
  const auto [theta_plus, theta_one, theta_minus] =
      d4_phase_triple(params.j, params.k, params.m, params.n);
  const D4Constants c = d4_constants();
  const Complex plus = c.rplus * polar_unit(theta_plus);
  const Complex one = c.r1 * polar_unit(theta_one);
  const Complex minus = c.rminus * polar_unit(theta_minus);

  Vector column(4);
  if (params.swap) {
    column << c.r0, minus, one, plus;
  } else {
    column << c.r0, plus, one, minus;
  }
  Vector cycled(4);
  for (int i = 0; i < 4; ++i) cycled(i) = column((i + params.cycle) % 4);
  return Fiducial::normalized(cycled);
}

std::vector<Fiducial> all_fiducials_d2() { return {fiducial_d2(0), fiducial_d2(1)}; }

std::vector<Fiducial> all_fiducials_d3(double r0) {
  std::vector<Fiducial> out;
  for (double theta1 : kD3Phases) {
    for (double theta2 : kD3Phases) {
      for (const auto& perm : kPermutations) {
        out.push_back(fiducial_d3(D3Params{r0, theta1, theta2, perm, std::nullopt}));
      }
    }
  }
  return out;
}

std::vector<Fiducial> all_boundary_fiducials_d3(double theta) {
  std::vector<Fiducial> out;
  for (const auto& perm : kPermutations) {
    out.push_back(fiducial_d3(D3Params{0.75, 0.0, 0.0, perm, theta}));
  }
  return out;
}

std::vector<Fiducial> all_fiducials_d4() {
  std::vector<Fiducial> out;
  out.reserve(256);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 4; ++n)
          for (int swap = 0; swap < 2; ++swap)
            for (int cycle = 0; cycle < 4; ++cycle)
              out.push_back(fiducial_d4(D4Params{j, k, m, n, swap == 1, cycle}));
  return out;
}

}  // namespace sicpovm
