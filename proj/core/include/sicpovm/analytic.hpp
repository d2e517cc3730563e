#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sicpovm/types.hpp"

namespace sicpovm {

/// One of the two qubit fiducials (which = 0 or 1), exactly as the closed form prints them.
/// Throws DomainError for any other value.
Fiducial fiducial_d2(int which);

/// Bloch vector (<X>, <Y>, <Z>) of a qubit state.
std::array<double, 3> bloch_vector(const Fiducial& qubit);

/// Parameters of a d = 3 fiducial.
///
/// Main family: (r0, r+ e^{i theta1}, r- e^{i theta2}) with
/// r+- = r0/2 +- sqrt(2 - 3 r0^2)/2, 1/sqrt2 < r0 <= sqrt(2/3) and
/// theta1, theta2 in {pi/3, pi, 5pi/3}. When boundary_theta is set, the
/// second family (1/sqrt2, e^{i theta}/sqrt2, 0) is used and r0/theta1/theta2
/// are ignored. In both cases component i of the result is entry perm[i] of
/// that column.
struct D3Params {
  double r0 = 0.75;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::array<int, 3> perm{0, 1, 2};
  std::optional<double> boundary_theta;
};

/// Throws DomainError for r0 outside (1/sqrt2, sqrt(2/3)], a phase outside the
/// three allowed values, or a perm that is not a permutation.
Fiducial fiducial_d3(const D3Params& params);

/// r_+(r0) and r_-(r0) of the d = 3 main family.
std::array<double, 2> d3_radii(double r0);

inline constexpr std::array<double, 3> kD3Phases = {
    1.0471975511965976,  // pi/3
    3.1415926535897931,  // pi
    5.2359877559829887,  // 5pi/3
};

/// Parameters of a d = 4 fiducial: the phase triple of the set Omega is
/// selected by j, k, m in {0,1} and n in {0..3}; `swap` exchanges the r+ and
/// r- entries; `cycle` rotates the column, component i <- entry (i + cycle) mod 4.
struct D4Params {
  int j = 0;
  int k = 0;
  int m = 0;
  int n = 0;
  bool swap = false;
  int cycle = 0;
};

struct D4Constants {
  double r0;      // sqrt(1 - 1/sqrt5) / (2 sqrt(2 - sqrt2))
  double r1;      // (sqrt2 - 1) r0
  double rplus;   // (1/2) sqrt(1 + 1/sqrt5 + sqrt(1/5 + 1/sqrt5))
  double rminus;  // (1/2) sqrt(1 + 1/sqrt5 - sqrt(1/5 + 1/sqrt5))
  double a;       // arccos(2 / sqrt(5 + sqrt5))
  double b;       // arcsin(2 / sqrt5)
};

/// The r0 used here fixes the unit norm of the column. The widely printed
/// form (1 - 1/sqrt5) / (2 sqrt(2 - sqrt2)) drops a square root and leaves
/// norm^2 = 0.8764; it is kept as d4_printed_r0() so tests can pin that down.
D4Constants d4_constants();
double d4_printed_r0();

/// (theta_+, theta_1, theta_-) for one element of Omega.
std::array<double, 3> d4_phase_triple(int j, int k, int m, int n);

/// Throws DomainError for out-of-range indices.
Fiducial fiducial_d4(const D4Params& params);

std::vector<Fiducial> all_fiducials_d2();
/// 54 main-family vectors (9 phase pairs x 6 permutations) at the given r0.
std::vector<Fiducial> all_fiducials_d3(double r0);
/// 6 boundary-family vectors (all permutations) at the given phase.
std::vector<Fiducial> all_boundary_fiducials_d3(double theta);
/// All 256 vectors: 32 phase triples x {plain, swapped} x 4 cyclic shifts.
std::vector<Fiducial> all_fiducials_d4();

}  // namespace sicpovm
