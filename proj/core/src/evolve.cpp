#include "iongate/evolve.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "iongate/format.hpp"

namespace iongate {

namespace {

constexpr double kStabilityFactor = 0.05;  // (spectral bound of H) * h
constexpr int kMaxRefinements = 10;
constexpr long kMaxSteps = 1L << 23;

// Upper bound on the spectral radius: max absolute row sum.
double spectral_bound(const SparseMatrix& h) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(h.rows());
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(h, k); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  return row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

using StepObserver = std::function<void(long step, const Eigen::VectorXcd&)>;

// Classical RK4 on d psi/dt = -i H psi with n uniform steps.
Eigen::VectorXcd rk4(const SparseMatrix& h, const Eigen::VectorXcd& psi0,
                     double t_final, long n_steps,
                     const StepObserver& observer = {}) {
  const double dt = t_final / static_cast<double>(n_steps);
  const Complex minus_i{0.0, -1.0};
  Eigen::VectorXcd psi = psi0;
  Eigen::VectorXcd k1(psi.size()), k2(psi.size()), k3(psi.size()),
      k4(psi.size()), buf(psi.size());
  if (observer) observer(0, psi);
  for (long s = 0; s < n_steps; ++s) {
    k1.noalias() = h * psi;
    k1 *= minus_i;
    buf = psi + (0.5 * dt) * k1;
    k2.noalias() = h * buf;
    k2 *= minus_i;
    buf = psi + (0.5 * dt) * k2;
    k3.noalias() = h * buf;
    k3 *= minus_i;
    buf = psi + dt * k3;
    k4.noalias() = h * buf;
    k4 *= minus_i;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(s + 1, psi);
  }
  return psi;
}

long initial_steps(const SparseMatrix& h, double t_final) {
  const double bound = spectral_bound(h);
  if (bound <= 0.0) return 1;
  return std::max<long>(1, static_cast<long>(
                               std::ceil(t_final * bound / kStabilityFactor)));
}

void validate_inputs(const Operator& op, const StateVector& psi0,
                     double t_final, double tol) {
  if (psi0.dimension() != op.dimension()) {
    throw std::invalid_argument("evolve: operator and state dimensions differ");
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("evolve: t_final must be finite and > 0");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("evolve: tol must be > 0");
  }
}

// Step-halving ladder shared by evolve and evolve_trajectory. Each candidate
// run doubles the step count of the previous one; the run is accepted when
// the max amplitude difference against its predecessor drops below tol (the
// accepted finer run is then a factor ~15 inside tol by Richardson).
template <typename RunFn>
std::pair<Eigen::VectorXcd, long> certify(double tol, long n0,
                                          const RunFn& run) {
  long n = n0;
  Eigen::VectorXcd coarse = run(n);
  double delta = 0.0;
  for (int level = 0; level < kMaxRefinements; ++level) {
    if (2 * n > kMaxSteps) break;
    Eigen::VectorXcd fine = run(2 * n);
    delta = (coarse - fine).cwiseAbs().maxCoeff();
    if (delta <= tol) {
      return {std::move(fine), 2 * n};
    }
    coarse = std::move(fine);
    n *= 2;
  }
  std::ostringstream msg;
  msg << "evolve: step halving did not reach tol=" << tol << " within budget"
      << " (achieved error estimate " << delta << " at " << n << " steps)";
  throw IntegrationError(msg.str(), delta, tol, n);
}

}  // namespace

IntegrationError::IntegrationError(const std::string& what,
                                   double achieved_error, double requested_tol,
                                   long steps)
    : std::runtime_error(what),
      achieved_error_(achieved_error),
      requested_tol_(requested_tol),
      steps_(steps) {}

StateVector integrate_fixed(const Operator& op, const StateVector& psi0,
                            double t_final, long n_steps) {
  validate_inputs(op, psi0, t_final, 1.0);
  if (n_steps < 1) {
    throw std::invalid_argument("integrate_fixed: n_steps must be >= 1");
  }
  return StateVector(rk4(op.matrix(), psi0.amplitudes(), t_final, n_steps),
                     psi0.n_max());
}

EvolutionResult evolve(const Operator& op, const StateVector& psi0,
                       double t_final, double tol) {
  validate_inputs(op, psi0, t_final, tol);
  const SparseMatrix& h = op.matrix();
  auto [psi, steps] =
      certify(tol, initial_steps(h, t_final),
              [&](long n) { return rk4(h, psi0.amplitudes(), t_final, n); });
  StateVector final_state(std::move(psi), psi0.n_max());
  const double norm2 = final_state.norm_squared();
  return EvolutionResult{std::move(final_state), norm2, steps,
                         t_final / static_cast<double>(steps)};
}

std::vector<TrajectorySample> evolve_trajectory(const Operator& op,
                                                const StateVector& psi0,
                                                double t_final, double tol,
                                                int samples) {
  validate_inputs(op, psi0, t_final, tol);
  if (samples < 1) {
    throw std::invalid_argument("evolve_trajectory: samples must be >= 1");
  }
  const HilbertSpace space(psi0.n_max());
  const Eigen::VectorXcd a = named_state(space, NamedState::A).amplitudes();
  const Eigen::VectorXcd s = named_state(space, NamedState::S).amplitudes();
  const int i000 = space.to_linear({0, 0, 0});
  const int i001 = space.to_linear({0, 0, 1});
  const int i010 = space.to_linear({0, 1, 0});
  const int i011 = space.to_linear({0, 1, 1});

  const SparseMatrix& h = op.matrix();
  long n0 = initial_steps(h, t_final);
  n0 = ((n0 + samples - 1) / samples) * samples;  // keep checkpoints on-grid

  std::vector<TrajectorySample> trajectory;
  auto run = [&](long n) {
    const long stride = n / samples;
    trajectory.clear();
    trajectory.reserve(samples + 1);
    return rk4(h, psi0.amplitudes(), t_final, n,
               [&](long step, const Eigen::VectorXcd& psi) {
                 if (step % stride != 0) return;
                 const double t =
                     t_final * static_cast<double>(step) / static_cast<double>(n);
                 trajectory.push_back(TrajectorySample{
                     t, psi.squaredNorm(), std::norm(psi[i000]),
                     std::norm(psi[i001]), std::norm(psi[i010]),
                     std::norm(psi[i011]), std::norm(a.dot(psi)),
                     std::norm(s.dot(psi))});
               });
  };
  certify(tol, n0, run);
  return trajectory;
}

void write_trajectory(std::ostream& os,
                      const std::vector<TrajectorySample>& trajectory) {
  os << "t,norm2,p000,p001,p010,p011,p0a,p0s\n";
  for (const auto& sample : trajectory) {
    os << format_double(sample.t) << ',' << format_double(sample.norm_squared)
       << ',' << format_double(sample.p000) << ',' << format_double(sample.p001)
       << ',' << format_double(sample.p010) << ',' << format_double(sample.p011)
       << ',' << format_double(sample.p0a) << ',' << format_double(sample.p0s)
       << '\n';
  }
}

std::pair<StateVector, double> project_phonon_ground(const StateVector& psi,
                                                     bool strict) {
  const double norm2_in = psi.norm_squared();
  if (norm2_in <= 0.0) {
    throw std::invalid_argument("project_phonon_ground: zero-norm state");
  }
  StateVector projected = psi;
  const HilbertSpace space(psi.n_max());
  for (int i = 0; i < psi.dimension(); ++i) {
    const BasisIndex b = space.from_linear(i);
    const bool keep = b.n == 0 && (!strict || (b.l1 <= 1 && b.l2 <= 1));
    if (!keep) projected[i] = 0.0;
  }
  const double success = projected.norm_squared() / norm2_in;
  return {std::move(projected), success};
}

TruncationReport check_truncation(const OperatorBuilder& builder,
                                  const GateParams& params,
                                  const StateVector& psi0, double t_final,
                                  double tol) {
  if (params.n_max < 2) {
    throw std::invalid_argument(
        "check_truncation: n_max must be >= 2 to compare truncations");
  }
  if (psi0.n_max() != params.n_max) {
    throw std::invalid_argument(
        "check_truncation: psi0 must live in the params.n_max space");
  }
  const HilbertSpace low(params.n_max);
  const HilbertSpace high(params.n_max + 1);
  GateParams wide = params;
  wide.n_max = params.n_max + 1;

  // Canonical ordering makes the low space a prefix of the high one.
  StateVector psi0_high(high);
  psi0_high.amplitudes().head(low.dimension()) = psi0.amplitudes();

  const EvolutionResult res_low =
      evolve(builder(low, params), psi0, t_final, tol);
  const EvolutionResult res_high =
      evolve(builder(high, wide), psi0_high, t_final, tol);

  TruncationReport report;
  report.n_max_low = params.n_max;
  report.n_max_high = params.n_max + 1;
  report.max_abs_diff = (res_low.final_state.amplitudes() -
                         res_high.final_state.amplitudes().head(low.dimension()))
                            .cwiseAbs()
                            .maxCoeff();
  report.passed = report.max_abs_diff < report.threshold;
  return report;
}

}  // namespace iongate
