#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sicpovm/search.hpp"
#include "sicpovm/types.hpp"
#include "sicpovm/wh_group.hpp"

namespace sicpovm {

/// Two noisy copies of one fiducial must merge at this tolerance.
inline constexpr double kDedupTolerance = 1e-6;

/// 1 - max_g |<b|U_g|a>|^2: zero iff b's projector lies in a's orbit.
double orbit_distance(const Fiducial& a, const Fiducial& b, const ErrorBasis& basis);

/// True iff the orbits of a and b coincide as projector sets,
/// i.e. orbit_distance(a, b) <= tol. Throws DomainError unless both orbits
/// pass certify_sic at the numerical profile.
bool same_sic(const Fiducial& a, const Fiducial& b, const ErrorBasis& basis,
              double tol = kDedupTolerance);

struct Census {
  int d = 0;
  std::vector<Fiducial> representatives;
  int count = 0;
  int runs = 0;
  int converged_runs = 0;
  std::vector<std::pair<int, int>> new_solution_curve;  // (1-based run index, count) at each discovery
  bool continuum_suspected = false;
  bool low_confidence = false;
  double min_inter_class_distance = 1.0;  // over all representative pairs; 1 if fewer than two
};

struct CensusConfig {
  int d = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<const ErrorBasis> basis;  // null: Weyl-Heisenberg
  double dedup_tol = kDedupTolerance;
  unsigned threads = 0;
  /// Per-run search settings; d, seed, basis and threads are overwritten.
  std::optional<SearchConfig> search;
};

/// Order-preserving dedup fold over candidate fiducials (one slot per run,
/// nullopt for a run that did not converge). Candidates must already be
/// certified; the continuum flag and curve are computed over slot positions.
Census tabulate(int d, const std::vector<std::optional<Fiducial>>& candidates,
                const ErrorBasis& basis, double dedup_tol = kDedupTolerance);

/// `runs` independent minimizations (run i seeded with restart_seed(seed, i)),
/// folded into distinct SIC-POVMs in run order.
Census census(const CensusConfig& config);
Census census(int d, int runs, std::uint64_t seed, const ErrorBasis& basis);

}  // namespace sicpovm
