#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iongate/hamiltonian.hpp"

namespace iongate {

inline constexpr double kDefaultTol = 1e-8;

struct EvolutionResult {
  StateVector final_state;  // never renormalized; the norm is the observable
  double norm_squared;
  long steps_taken;
  double step_size;  // units of 1/g2
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double achieved_error,
                   double requested_tol, long steps);

  double achieved_error() const { return achieved_error_; }
  double requested_tol() const { return requested_tol_; }
  long steps() const { return steps_; }

 private:
  double achieved_error_;
  double requested_tol_;
  long steps_;
};

// One fixed-step RK4 pass over d psi/dt = -i H psi, no error control.
// Building block for evolve() and the convergence diagnostics.
StateVector integrate_fixed(const Operator& op, const StateVector& psi0,
                            double t_final, long n_steps);

// exp(-iHt)|psi0> with max per-amplitude error certified below tol by
// repeated step halving (Richardson comparison of successive runs). The
// initial step satisfies (spectral bound of H) * h <= 0.05. Throws
// IntegrationError when halving exhausts the step budget.
EvolutionResult evolve(const Operator& op, const StateVector& psi0,
                       double t_final, double tol = kDefaultTol);

struct TrajectorySample {
  double t;
  double norm_squared;
  double p000, p001, p010, p011, p0a, p0s;  // slow-sector populations
};

// Same contract as evolve(), additionally recording `samples`+1 uniform
// checkpoints (including t = 0) of the accepted run.
std::vector<TrajectorySample> evolve_trajectory(const Operator& op,
                                                const StateVector& psi0,
                                                double t_final, double tol,
                                                int samples);

// Plain-text series: t, norm^2 and the slow-sector populations.
void write_trajectory(std::ostream& os,
                      const std::vector<TrajectorySample>& trajectory);

// Zeroes every amplitude with n > 0; strict mode additionally rejects ion
// levels 2 and 3 at n = 0. Returns the unnormalized projection and its
// success probability relative to the input norm. The input is untouched.
std::pair<StateVector, double> project_phonon_ground(const StateVector& psi,
                                                     bool strict = false);

struct TruncationReport {
  int n_max_low = 0;
  int n_max_high = 0;
  double max_abs_diff = 0.0;
  double threshold = 1e-6;
  bool passed = false;
};

using OperatorBuilder =
    std::function<Operator(const HilbertSpace&, const GateParams&)>;

// Repeats the evolution at n_max and n_max + 1 and reports the largest
// amplitude difference on the shared index range. Requires n_max >= 2;
// psi0 must live in the n_max space. The threshold result is reported,
// not enforced.
TruncationReport check_truncation(const OperatorBuilder& builder,
                                  const GateParams& params,
                                  const StateVector& psi0, double t_final,
                                  double tol = kDefaultTol);

}  // namespace iongate
