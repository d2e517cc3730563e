#include "sicpovm/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "sicpovm/errors.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/parallel.hpp"

namespace sicpovm {

namespace {

// Discoveries in the last 20% of the runs mean the count has not plateaued.
constexpr double kPlateauWindow = 0.2;
constexpr int kConfidentRuns = 100;
constexpr double kConfidentConvergedFraction = 0.1;

double max_orbit_overlap(const Fiducial& a, const Fiducial& b, const ErrorBasis& basis) {
  double best = 0.0;
  for (const Matrix& op : basis.ops()) {
    best = std::max(best, std::norm(b.amplitudes().dot(op * a.amplitudes())));
  }
  return best;
}

void require_certified(const Fiducial& f, const ErrorBasis& basis) {
  if (!certify_sic(orbit(f, basis), kNumericalSicTolerance).passed) {
    throw DomainError("same_sic needs fiducials whose orbits certify as SIC-POVMs");
  }
}

}  // namespace

double orbit_distance(const Fiducial& a, const Fiducial& b, const ErrorBasis& basis) {
  if (a.dimension() != basis.dimension() || b.dimension() != basis.dimension()) {
    throw DomainError("fiducial and basis dimensions differ");
  }
  return 1.0 - max_orbit_overlap(a, b, basis);
}

bool same_sic(const Fiducial& a, const Fiducial& b, const ErrorBasis& basis, double tol) {
  if (a.dimension() != basis.dimension() || b.dimension() != basis.dimension()) {
    throw DomainError("fiducial and basis dimensions differ");
  }
  require_certified(a, basis);
  require_certified(b, basis);
  return orbit_distance(a, b, basis) <= tol;
}

Census tabulate(int d, const std::vector<std::optional<Fiducial>>& candidates,
                const ErrorBasis& basis, double dedup_tol) {
  if (basis.dimension() != d) throw DomainError("census basis dimension mismatch");
  Census out;
  out.d = d;
  out.runs = static_cast<int>(candidates.size());

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i]) continue;
    ++out.converged_runs;
    const Fiducial& candidate = *candidates[i];
    const bool known = std::any_of(out.representatives.begin(), out.representatives.end(),
                                   [&](const Fiducial& rep) {
                                     return orbit_distance(rep, candidate, basis) <= dedup_tol;
                                   });
    if (!known) {
      out.representatives.push_back(candidate);
      out.new_solution_curve.emplace_back(static_cast<int>(i) + 1,
                                          static_cast<int>(out.representatives.size()));
    }
  }
  out.count = static_cast<int>(out.representatives.size());

  const double window_start = (1.0 - kPlateauWindow) * out.runs;
  out.continuum_suspected = std::any_of(
      out.new_solution_curve.begin(), out.new_solution_curve.end(),
      [&](const auto& point) { return point.first > window_start; });
  out.low_confidence = out.runs < kConfidentRuns ||
                       out.converged_runs < kConfidentConvergedFraction * out.runs;

  for (std::size_t a = 0; a < out.representatives.size(); ++a) {
    for (std::size_t b = a + 1; b < out.representatives.size(); ++b) {
      out.min_inter_class_distance =
          std::min(out.min_inter_class_distance,
                   orbit_distance(out.representatives[a], out.representatives[b], basis));
    }
  }
  return out;
}

Census census(const CensusConfig& config) {
  if (config.runs < 1) throw DomainError("census needs at least one run");
  SearchConfig search = config.search.value_or(SearchConfig::defaults(config.d));
  search.d = config.d;
  search.restarts = 1;
  search.threads = 1;
  search.basis = config.basis;
  search.basis = search.resolved_basis();
  search.validate();

  std::vector<std::optional<Fiducial>> candidates(static_cast<std::size_t>(config.runs));
  parallel_for(candidates.size(), resolve_thread_count(config.threads), [&](std::size_t i) {
    SearchConfig local = search;
    local.rng_seed = restart_seed(config.seed, i);
    SearchResult r = minimize(local);
    if (r.converged) candidates[i] = std::move(r.fiducial);
  });
  return tabulate(config.d, candidates, *search.basis, config.dedup_tol);
}

Census census(int d, int runs, std::uint64_t seed, const ErrorBasis& basis) {
  CensusConfig config;
  config.d = d;
  config.runs = runs;
  config.seed = seed;
  config.basis = std::make_shared<const ErrorBasis>(basis);
  return census(config);
}

}  // namespace sicpovm
