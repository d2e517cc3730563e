#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sicpovm/types.hpp"
#include "sicpovm/wh_group.hpp"

namespace sicpovm {

struct SearchConfig {
  int d = 0;
  int max_iterations = 5000;
  double gradient_tol = 1e-9;
  double objective_tol = 1e-10;  // allowed f - 2d/(d+1)
  int restarts = 0;
  std::uint64_t rng_seed = 0;
  std::shared_ptr<const ErrorBasis> basis;  // null means the Weyl-Heisenberg basis of d
  double sic_tol = 1e-8;                    // certify_sic tolerance for `converged`
  int restart_period = 0;                   // steepest-descent restart period; 0 means d
  unsigned threads = 0;                     // 0: hardware concurrency, capped by SIC_THREADS
  bool record_trace = false;

  /// Conjugate gradient stops once the gap improves by less than a factor
  /// (1 - 1e-3) over this many steps (0 means max(50, 10 d)); below
  /// refine_threshold a factor of 1/2 is required instead.
  int stagnation_window = 0;
  /// Gauss-Newton refinement of the residuals |<phi|U_g|phi>|^2 - 1/(d+1),
  /// run when conjugate gradient stops with a gap at or below refine_threshold.
  /// Needed where the solution set is degenerate (d = 3).
  bool refine = true;
  double refine_threshold = 1e-6;
  int max_refine_steps = 100;

  /// max_iterations 5000, gradient_tol 1e-9, objective_tol 1e-10, restarts 32 d.
  static SearchConfig defaults(int d, std::uint64_t seed = 0);

  /// Throws DomainError on a non-positive tolerance, restarts < 1, d < 2 or a basis of another dimension.
  void validate() const;

  /// The configured basis, or a shared Weyl-Heisenberg basis of dimension d.
  std::shared_ptr<const ErrorBasis> resolved_basis() const;
};

struct SearchResult {
  Fiducial fiducial{Vector::Ones(1)};  // gauge fixed
  double objective = 0.0;              // sum_g |<phi|U_g|phi>|^4
  double global_min = 0.0;             // 2d/(d+1)
  double objective_gap = 0.0;          // sum_{g != e} (|<phi|U_g|phi>|^2 - 1/(d+1))^2
  double sic_deviation = 0.0;          // certify_sic max overlap error on the orbit
  double gradient_norm = 0.0;
  int iterations = 0;         // accepted conjugate gradient steps
  int refinement_steps = 0;   // accepted Gauss-Newton steps
  int restart_index = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<double> trace;  // objective_gap after every accepted step, if requested

  friend bool operator==(const SearchResult& a, const SearchResult& b);
};

struct MultiStartResult {
  SearchResult best;
  std::vector<SearchResult> all;

  /// Fraction of restarts that converged to a SIC fiducial.
  double success_fraction() const;
};

/// 2d/(d+1), the minimum of `objective` over unit vectors.
double objective_global_minimum(int d);

/// f(phi) = sum over all d^2 group elements of |<phi|U_g|phi>|^4.
double objective(const Fiducial& fiducial, const ErrorBasis& basis);

/// Gradient of f in the real coordinates (Re phi_m, Im phi_m), packed as the
/// complex vector 2 df/d(conj phi), projected orthogonally to phi.
Vector gradient(const Fiducial& fiducial, const ErrorBasis& basis);

/// Standard complex-Gaussian components, normalized.
Fiducial haar_random_fiducial(int d, std::uint64_t seed);

/// Per-restart seed, a fixed mix of (base, index).
std::uint64_t restart_seed(std::uint64_t base, std::uint64_t index);

/// Polak-Ribiere conjugate gradient on the unit sphere.
///
/// Directions restart to steepest descent on loss of descent or every
/// restart_period steps; each step renormalizes the iterate and uses
/// Armijo backtracking (c = 1e-4, shrink 0.5). Starts from `start` or, when
/// absent, a Haar-random vector drawn from config.rng_seed. A run that ends
/// close to a global minimum is finished with damped Gauss-Newton steps
/// (see SearchConfig::refine). Non-convergence is reported in the result,
/// not thrown.
SearchResult minimize(const SearchConfig& config, const std::optional<Fiducial>& start = std::nullopt);

/// config.restarts independent minimizations from restart_seed(config.rng_seed, i).
/// `on_result` sees every result in restart order.
MultiStartResult multi_start(const SearchConfig& config,
                             const std::function<void(const SearchResult&)>& on_result = {});

}  // namespace sicpovm
