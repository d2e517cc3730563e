#include "sicpovm/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "sicpovm/errors.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/numeric.hpp"
#include "sicpovm/parallel.hpp"

namespace sicpovm {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxBacktracks = 60;
constexpr double kMaxStep = 1.0;  // radians, roughly
constexpr double kStagnationRatio = 1e-3;
constexpr double kNearMinimumStagnationRatio = 0.5;
constexpr double kResidualFloor = 1e-15;

// Overlaps a_g = <x|U_g|x> and the Wirtinger sums
//   sum_g w_g (conj(a_g) U_g x + a_g U_g^dag x)
// for a fixed basis. Weyl-Heisenberg bases use the shift/clock structure
// (O(d^3)); other bases fall back to dense products (O(d^4)).
class OverlapEngine {
 public:
  explicit OverlapEngine(const ErrorBasis& basis)
      : basis_(basis), d_(basis.dimension()), structured_(basis.is_weyl_heisenberg()) {
    if (structured_) {
      clock_.resize(static_cast<std::size_t>(2 * d_));
      for (int n = 0; n < 2 * d_; ++n) {
        const double angle = std::numbers::pi * n / d_;
        clock_[static_cast<std::size_t>(n)] = Complex(std::cos(angle), std::sin(angle));
      }
      identity_ = 0;
    } else {
      const BasisValidation v = validate_error_basis(basis, 1e-10);
      identity_ = v.identity_index;
      if (identity_ < 0) throw DomainError("search basis has no identity element");
    }
  }

  int dimension() const { return d_; }
  int group_size() const { return d_ * d_; }
  int identity() const { return identity_; }

  void overlaps(const Vector& x, std::vector<Complex>& a) const {
    a.resize(static_cast<std::size_t>(d_) * d_);
    if (!structured_) {
      for (int g = 0; g < group_size(); ++g) {
        a[static_cast<std::size_t>(g)] = x.dot(basis_.op(g) * x);
      }
      return;
    }
    // a_{jk} = mu^{jk} sum_m omega^{jm} conj(x_{m+k}) x_m
    std::vector<Complex> c(static_cast<std::size_t>(d_));
    for (int k = 0; k < d_; ++k) {
      for (int m = 0; m < d_; ++m) c[m] = std::conj(x((m + k) % d_)) * x(m);
      for (int j = 0; j < d_; ++j) {
        Complex sum = 0.0;
        for (int m = 0; m < d_; ++m) sum += omega(j * m) * c[m];
        a[static_cast<std::size_t>(j * d_ + k)] = mu(j * k) * sum;
      }
    }
  }

  // U_g x
  Vector apply(int g, const Vector& x) const {
    if (!structured_) return basis_.op(g) * x;
    const int j = g / d_;
    const int k = g % d_;
    Vector out(d_);
    // (D_jk x)_{m+k} = mu^{jk} omega^{jm} x_m
    for (int m = 0; m < d_; ++m) out((m + k) % d_) = mu(j * k) * omega(j * m) * x(m);
    return out;
  }

  // U_g^dag x
  Vector apply_adjoint(int g, const Vector& x) const {
    if (!structured_) return basis_.op(g).adjoint() * x;
    const int j = g / d_;
    const int k = g % d_;
    Vector out(d_);
    for (int m = 0; m < d_; ++m) out(m) = std::conj(mu(j * k) * omega(j * m)) * x((m + k) % d_);
    return out;
  }

  Vector wirtinger(const Vector& x, const std::vector<Complex>& a,
                   const std::vector<double>& w) const {
    Vector out = Vector::Zero(d_);
    if (!structured_) {
      for (int g = 0; g < group_size(); ++g) {
        const std::size_t gi = static_cast<std::size_t>(g);
        if (w[gi] == 0.0) continue;
        const Matrix& u = basis_.op(g);
        out += w[gi] * (std::conj(a[gi]) * (u * x) + a[gi] * (u.adjoint() * x));
      }
      return out;
    }
    // B_k(m) = sum_j w_jk conj(a_jk) mu^{jk} omega^{jm}
    //   first term:  sum_k x_{n-k} B_k(n-k)
    //   second term: sum_k x_{m+k} conj(B_k(m))
    std::vector<Complex> coeff(static_cast<std::size_t>(d_));
    for (int k = 0; k < d_; ++k) {
      for (int j = 0; j < d_; ++j) {
        const std::size_t g = static_cast<std::size_t>(j * d_ + k);
        coeff[j] = w[g] * std::conj(a[g]) * mu(j * k);
      }
      for (int m = 0; m < d_; ++m) {
        Complex b = 0.0;
        for (int j = 0; j < d_; ++j) b += coeff[j] * omega(j * m);
        out((m + k) % d_) += x(m) * b;
        out(m) += x((m + k) % d_) * std::conj(b);
      }
    }
    return out;
  }

 private:
  Complex mu(int n) const { return clock_[static_cast<std::size_t>(n % (2 * d_))]; }
  Complex omega(int n) const { return clock_[static_cast<std::size_t>(2 * (n % d_))]; }

  const ErrorBasis& basis_;
  int d_;
  bool structured_;
  int identity_ = 0;
  std::vector<Complex> clock_;
};

struct Evaluation {
  double gap = 0.0;
  Vector gradient;  // projected, real-coordinate gradient of the gap
};

class GapFunction {
 public:
  explicit GapFunction(const OverlapEngine& engine)
      : engine_(engine), target_(1.0 / (engine.dimension() + 1)) {}

  double value(const Vector& x) const {
    engine_.overlaps(x, a_);
    CompensatedSum gap;
    for (int g = 0; g < engine_.group_size(); ++g) {
      if (g == engine_.identity()) continue;
      const double excess = std::norm(a_[static_cast<std::size_t>(g)]) - target_;
      gap += excess * excess;
    }
    return gap.value();
  }

  Evaluation evaluate(const Vector& x) const {
    Evaluation ev;
    ev.gap = value(x);
    w_.assign(a_.size(), 0.0);
    for (int g = 0; g < engine_.group_size(); ++g) {
      if (g == engine_.identity()) continue;
      const std::size_t gi = static_cast<std::size_t>(g);
      w_[gi] = 2.0 * (std::norm(a_[gi]) - target_);
    }
    const Vector full = 2.0 * engine_.wirtinger(x, a_, w_);
    ev.gradient = full - x.dot(full) * x;
    return ev;
  }

  // Residuals r_g = |a_g|^2 - 1/(d+1) over g != e, and their real-coordinate
  // gradients (rows, tangent-projected) laid out as [Re | Im].
  void residuals(const Vector& x, Eigen::VectorXd& r, RealMatrix& jacobian) const {
    engine_.overlaps(x, a_);
    const int d = engine_.dimension();
    const int rows = engine_.group_size() - 1;
    r.resize(rows);
    jacobian.resize(rows, 2 * d);
    int row = 0;
    for (int g = 0; g < engine_.group_size(); ++g) {
      if (g == engine_.identity()) continue;
      const Complex ag = a_[static_cast<std::size_t>(g)];
      r(row) = std::norm(ag) - target_;
      Vector grad = 2.0 * (std::conj(ag) * engine_.apply(g, x) + ag * engine_.apply_adjoint(g, x));
      grad -= x.dot(grad) * x;
      jacobian.row(row).head(d) = grad.real().transpose();
      jacobian.row(row).tail(d) = grad.imag().transpose();
      ++row;
    }
  }

 private:
  const OverlapEngine& engine_;
  double target_;
  mutable std::vector<Complex> a_;
  mutable std::vector<double> w_;
};

double real_inner(const Vector& a, const Vector& b) { return a.dot(b).real(); }

Vector project_tangent(const Vector& v, const Vector& x) { return v - x.dot(v) * x; }

// Levenberg-Marquardt on the residual vector; every accepted step lowers the gap.
int refine_residuals(const GapFunction& gap, int d, int max_steps, Vector& x, double& current_gap,
                     std::vector<double>* trace) {
  Eigen::VectorXd r;
  RealMatrix jacobian;
  gap.residuals(x, r, jacobian);
  double damping = -1.0;
  int steps = 0;
  while (steps < max_steps && r.cwiseAbs().maxCoeff() > kResidualFloor) {
    const RealMatrix normal = jacobian.transpose() * jacobian;
    const Eigen::VectorXd rhs = -(jacobian.transpose() * r);
    if (damping < 0.0) damping = 1e-3 * std::max(normal.diagonal().maxCoeff(), 1e-300);

    bool improved = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      RealMatrix system = normal;
      system.diagonal().array() += damping;
      const Eigen::VectorXd step = system.ldlt().solve(rhs);
      Vector s(d);
      for (int m = 0; m < d; ++m) s(m) = Complex(step(m), step(d + m));
      const Vector trial = (x + s).normalized();
      const double trial_gap = gap.value(trial);
      if (trial_gap < current_gap) {
        x = trial;
        current_gap = trial_gap;
        damping = std::max(damping / 3.0, 1e-12);
        improved = true;
        break;
      }
      damping *= 4.0;
    }
    if (!improved) break;
    ++steps;
    if (trace) trace->push_back(current_gap);
    gap.residuals(x, r, jacobian);
  }
  return steps;
}

std::shared_ptr<const ErrorBasis> cached_wh_basis(int d) {
  static std::mutex mutex;
  static std::map<int, std::weak_ptr<const ErrorBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (auto existing = slot.lock()) return existing;
  auto built = std::make_shared<const ErrorBasis>(build_wh_basis(d));
  slot = built;
  return built;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

SearchConfig SearchConfig::defaults(int d, std::uint64_t seed) {
  SearchConfig config;
  config.d = d;
  config.restarts = 32 * d;
  config.rng_seed = seed;
  return config;
}

void SearchConfig::validate() const {
  if (d < 2) throw DomainError("search dimension must be at least 2");
  if (d > 64) throw DomainError("search dimension above the supported envelope of 64");
  if (!(gradient_tol > 0.0) || !(objective_tol > 0.0) || !(sic_tol > 0.0)) {
    throw DomainError("search tolerances must be positive");
  }
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (max_iterations < 0) throw DomainError("max_iterations must be non-negative");
  if (restart_period < 0) throw DomainError("restart_period must be non-negative");
  if (stagnation_window < 0 || max_refine_steps < 0) {
    throw DomainError("stagnation_window and max_refine_steps must be non-negative");
  }
  if (basis && basis->dimension() != d) throw DomainError("search basis dimension mismatch");
}

std::shared_ptr<const ErrorBasis> SearchConfig::resolved_basis() const {
  return basis ? basis : cached_wh_basis(d);
}

bool operator==(const SearchResult& a, const SearchResult& b) {
  if (a.fiducial.dimension() != b.fiducial.dimension()) return false;
  for (int k = 0; k < a.fiducial.dimension(); ++k) {
    if (!bitwise_equal(a.fiducial[k].real(), b.fiducial[k].real()) ||
        !bitwise_equal(a.fiducial[k].imag(), b.fiducial[k].imag())) {
      return false;
    }
  }
  if (a.trace.size() != b.trace.size()) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    if (!bitwise_equal(a.trace[i], b.trace[i])) return false;
  }
  return bitwise_equal(a.objective, b.objective) && bitwise_equal(a.global_min, b.global_min) &&
         bitwise_equal(a.objective_gap, b.objective_gap) &&
         bitwise_equal(a.sic_deviation, b.sic_deviation) &&
         bitwise_equal(a.gradient_norm, b.gradient_norm) && a.iterations == b.iterations && a.refinement_steps == b.refinement_steps &&
         a.restart_index == b.restart_index && a.converged == b.converged && a.seed == b.seed;
}

double MultiStartResult::success_fraction() const {
  if (all.empty()) return 0.0;
  const auto hits = std::count_if(all.begin(), all.end(), [](const SearchResult& r) { return r.converged; });
  return static_cast<double>(hits) / static_cast<double>(all.size());
}

double objective_global_minimum(int d) { return 2.0 * d / (d + 1.0); }

double objective(const Fiducial& fiducial, const ErrorBasis& basis) {
  if (fiducial.dimension() != basis.dimension()) throw DomainError("fiducial and basis dimensions differ");
  const OverlapEngine engine(basis);
  std::vector<Complex> a;
  engine.overlaps(fiducial.amplitudes(), a);
  CompensatedSum sum;
  for (const Complex& value : a) {
    const double lambda = std::norm(value);
    sum += lambda * lambda;
  }
  return sum.value();
}

Vector gradient(const Fiducial& fiducial, const ErrorBasis& basis) {
  if (fiducial.dimension() != basis.dimension()) throw DomainError("fiducial and basis dimensions differ");
  const OverlapEngine engine(basis);
  const Vector& x = fiducial.amplitudes();
  std::vector<Complex> a;
  engine.overlaps(x, a);
  std::vector<double> w(a.size());
  for (std::size_t g = 0; g < a.size(); ++g) w[g] = 2.0 * std::norm(a[g]);
  const Vector full = 2.0 * engine.wirtinger(x, a, w);
  return project_tangent(full, x);
}

Fiducial haar_random_fiducial(int d, std::uint64_t seed) {
  if (d < 1) throw DomainError("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int k = 0; k < d; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return Fiducial::normalized(v);
}

std::uint64_t restart_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 1));
}

SearchResult minimize(const SearchConfig& config, const std::optional<Fiducial>& start) {
  config.validate();
  const auto basis = config.resolved_basis();
  const OverlapEngine engine(*basis);
  const GapFunction gap(engine);
  const int d = config.d;

  Vector x = start ? start->amplitudes() : haar_random_fiducial(d, config.rng_seed).amplitudes();
  if (x.size() != d) throw DomainError("start vector dimension mismatch");
  x.normalize();

  const int period = config.restart_period > 0 ? config.restart_period : d;
  const int window = config.stagnation_window > 0 ? config.stagnation_window : std::max(50, 10 * d);

  SearchResult result;
  result.seed = config.rng_seed;
  result.global_min = objective_global_minimum(d);

  Evaluation current = gap.evaluate(x);
  Vector direction = -current.gradient;
  bool steepest = true;
  int since_restart = 0;
  double previous_alpha = 0.0;
  double previous_slope = 0.0;
  int iteration = 0;
  int window_start = 0;
  double window_gap = current.gap;

  while (iteration < config.max_iterations) {
    const double gnorm = current.gradient.norm();
    if (gnorm <= config.gradient_tol || current.gap == 0.0) break;

    double slope = real_inner(current.gradient, direction);
    if (!(slope < 0.0)) {
      direction = -current.gradient;
      slope = -gnorm * gnorm;
      steepest = true;
      since_restart = 0;
    }

    const double pnorm = direction.norm();
    double alpha = (steepest || previous_slope == 0.0)
                       ? std::min(1.0, 0.1 / gnorm)
                       : previous_alpha * previous_slope / slope;
    alpha = std::min(alpha, kMaxStep / pnorm);

    bool accepted = false;
    Vector trial;
    double trial_gap = 0.0;
    for (int attempt = 0; attempt < kMaxBacktracks; ++attempt) {
      trial = (x + alpha * direction).normalized();
      trial_gap = gap.value(trial);
      if (trial_gap <= current.gap + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= kShrink;
    }

    if (!accepted) {
      if (steepest) break;  // no decrease available at working precision
      direction = -current.gradient;
      steepest = true;
      since_restart = 0;
      previous_slope = 0.0;
      continue;
    }

    ++iteration;
    Evaluation next = gap.evaluate(trial);
    const Vector old_gradient = project_tangent(current.gradient, trial);
    const Vector carried = project_tangent(direction, trial);
    const double old_norm2 = current.gradient.squaredNorm();
    double beta = real_inner(next.gradient, next.gradient - old_gradient) / old_norm2;
    beta = std::max(0.0, beta);
    ++since_restart;
    if (since_restart >= period) {
      beta = 0.0;
      since_restart = 0;
    }

    previous_alpha = alpha;
    previous_slope = slope;
    x = trial;
    current = std::move(next);
    direction = -current.gradient + beta * carried;
    steepest = beta == 0.0;
    if (config.record_trace) result.trace.push_back(current.gap);

    if (iteration - window_start >= window) {
      const double ratio = current.gap <= config.refine_threshold ? kNearMinimumStagnationRatio
                                                                  : kStagnationRatio;
      if (window_gap - current.gap <= ratio * window_gap) break;
      window_start = iteration;
      window_gap = current.gap;
    }
  }
  result.iterations = iteration;

  if (config.refine && current.gap <= config.refine_threshold && current.gap > 0.0) {
    result.refinement_steps = refine_residuals(gap, d, config.max_refine_steps, x, current.gap,
                                               config.record_trace ? &result.trace : nullptr);
  }

  result.fiducial = Fiducial::normalized(x).gauge_fixed();
  result.objective_gap = gap.value(result.fiducial.amplitudes());
  result.gradient_norm = gap.evaluate(result.fiducial.amplitudes()).gradient.norm();
  result.objective = objective(result.fiducial, *basis);
  const DesignCertificate cert = certify_sic(orbit(result.fiducial, *basis), config.sic_tol);
  result.sic_deviation = cert.max_overlap_error.value_or(1.0);
  result.converged = result.objective_gap <= config.objective_tol && cert.passed;
  return result;
}

MultiStartResult multi_start(const SearchConfig& config,
                             const std::function<void(const SearchResult&)>& on_result) {
  config.validate();
  SearchConfig shared = config;
  shared.basis = config.resolved_basis();

  MultiStartResult out;
  out.all.resize(static_cast<std::size_t>(config.restarts));
  parallel_for(
      out.all.size(), resolve_thread_count(config.threads),
      [&](std::size_t i) {
        SearchConfig local = shared;
        local.rng_seed = restart_seed(config.rng_seed, i);
        SearchResult r = minimize(local);
        r.restart_index = static_cast<int>(i);
        out.all[i] = std::move(r);
      },
      [&](std::size_t i) {
        if (on_result) on_result(out.all[i]);
      });

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.all.size(); ++i) {
    if (out.all[i].objective_gap < out.all[best].objective_gap) best = i;
  }
  out.best = out.all[best];
  return out;
}

}  // namespace sicpovm
