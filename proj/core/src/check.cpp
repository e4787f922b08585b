#include "iongate/check.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "iongate/format.hpp"
#include "iongate/gates.hpp"

namespace iongate {

namespace {

using Clause = std::function<std::pair<bool, std::string>()>;

CheckResult run_clause(const std::string& name, const Clause& clause) {
  try {
    auto [passed, detail] = clause();
    return {name, passed, detail};
  } catch (const std::exception& err) {
    return {name, false, err.what()};
  }
}

std::string fmt(double v) { return format_double(v); }

std::pair<bool, std::string> index_bijectivity(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  if (space.dimension() != kInternalDim * (opts.n_max + 1)) {
    return {false, "dimension mismatch"};
  }
  for (int i = 0; i < space.dimension(); ++i) {
    if (space.to_linear(space.from_linear(i)) != i) {
      return {false, "round-trip failed at index " + std::to_string(i)};
    }
  }
  return {true, "dimension " + std::to_string(space.dimension())};
}

std::pair<bool, std::string> named_state_gram(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const NamedState all[] = {NamedState::Q00, NamedState::Q01, NamedState::Q10,
                            NamedState::Q11, NamedState::A, NamedState::S};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Complex g =
          inner(named_state(space, all[i]), named_state(space, all[j]));
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return {worst < 1e-15, "max Gram deviation " + fmt(worst)};
}

std::pair<bool, std::string> hermiticity(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.2, 0.0, 0.0, opts.n_max};
  const Operator op = build_coherent(space, params);
  const Eigen::MatrixXcd h(op.matrix());
  const double worst = (h - h.adjoint()).cwiseAbs().maxCoeff();
  return {worst < 1e-15, "max |H - H^dag| = " + fmt(worst)};
}

std::pair<bool, std::string> decay_block(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.2, 1.0, 20.0, opts.n_max};
  const Eigen::MatrixXcd h =
      Eigen::MatrixXcd(build_conditional_phase(space, params).matrix());
  const Eigen::MatrixXcd anti = h - h.adjoint();
  double worst = 0.0;
  for (int r = 0; r < space.dimension(); ++r) {
    for (int c = 0; c < space.dimension(); ++c) {
      Complex expected = 0.0;
      if (r == c) {
        const BasisIndex b = space.from_linear(r);
        const int count = (b.l1 == 3 ? 1 : 0) + (b.l2 == 3 ? 1 : 0);
        expected = Complex(0.0, -params.gamma3 * count);
      }
      worst = std::max(worst, std::abs(anti(r, c) - expected));
    }
  }
  return {worst < 1e-15, "max deviation from level-3 decay block " + fmt(worst)};
}

std::pair<bool, std::string> norm_conservation(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.1, 0.0, 0.0, opts.n_max};
  StateVector psi0(space);
  psi0.amplitudes() = 0.5 * (named_state(space, NamedState::Q00).amplitudes() +
                             named_state(space, NamedState::Q01).amplitudes() +
                             named_state(space, NamedState::Q10).amplitudes() +
                             named_state(space, NamedState::Q11).amplitudes());
  const EvolutionResult res =
      evolve(build_coherent(space, params), psi0, 40.0, opts.tol);
  const double drift = std::abs(res.norm_squared - 1.0);
  return {drift < 1e-9, "|norm^2 - 1| = " + fmt(drift) + " over t = 40/g2"};
}

std::pair<bool, std::string> norm_monotonic(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.15, 1.0, 20.0, opts.n_max};
  const auto trajectory = evolve_trajectory(
      build_conditional_phase(space, params),
      named_state(space, NamedState::Q00), gate_time(GateKind::Phase, 0.15),
      opts.tol, 100);
  double prev = 1.0 + 1e-9;
  for (const auto& sample : trajectory) {
    if (sample.norm_squared > prev + 1e-9 || sample.norm_squared < 0.0) {
      return {false, "norm^2 not monotone at t = " + fmt(sample.t)};
    }
    prev = sample.norm_squared;
  }
  return {true, "norm^2 non-increasing over 101 checkpoints, final " +
                    fmt(trajectory.back().norm_squared)};
}

std::pair<bool, std::string> oracle_equivalence(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.01, 0.0, 0.0, opts.n_max};
  double worst = 0.0;
  for (const NamedState s : {NamedState::Q00, NamedState::Q01}) {
    const StateVector psi0 = named_state(space, s);
    const GateReport report =
        run_gate(GateKind::Phase, params, psi0, RunMode::Coherent, opts.tol);
    worst = std::max(worst, std::abs(report.fidelity_numeric -
                                     *report.fidelity_analytic));
  }
  return {worst < 1e-3,
          "max |numeric - analytic| fidelity = " + fmt(worst) + " at omega = 0.01"};
}

std::pair<bool, std::string> integrator_convergence(const CheckOptions& opts) {
  if (opts.tol > 1e-6) {
    return {false, "tol = " + fmt(opts.tol) +
                       " too loose for the validation suite (need <= 1e-6)"};
  }
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.2, 0.0, 0.0, opts.n_max};
  const Operator op = build_coherent(space, params);
  StateVector psi0(space);
  psi0.amplitudes() =
      (named_state(space, NamedState::Q00).amplitudes() +
       named_state(space, NamedState::Q01).amplitudes()) /
      std::sqrt(2.0);
  const double t = 10.0;
  const StateVector r1 = integrate_fixed(op, psi0, t, 200);
  const StateVector r2 = integrate_fixed(op, psi0, t, 400);
  const StateVector r3 = integrate_fixed(op, psi0, t, 800);
  const StateVector r4 = integrate_fixed(op, psi0, t, 1600);
  const double e1 = (r1.amplitudes() - r2.amplitudes()).cwiseAbs().maxCoeff();
  const double e2 = (r2.amplitudes() - r3.amplitudes()).cwiseAbs().maxCoeff();
  const double e3 = (r3.amplitudes() - r4.amplitudes()).cwiseAbs().maxCoeff();
  const double slope1 = std::log2(e1 / e2);
  const double slope2 = std::log2(e2 / e3);
  const bool ok = slope1 > 3.5 && slope1 < 4.6 && slope2 > 3.5 && slope2 < 4.6;
  return {ok, "step-halving orders " + fmt(slope1) + ", " + fmt(slope2) +
                  " (nominal 4)"};
}

std::pair<bool, std::string> truncation_sensitivity(const CheckOptions& opts) {
  const HilbertSpace space(opts.n_max);
  const GateParams params{0.1, 0.0, 0.0, opts.n_max};
  const TruncationReport report = check_truncation(
      [](const HilbertSpace& s, const GateParams& p) {
        return build_conditional_swap(s, p);
      },
      params, named_state(space, NamedState::Q00),
      gate_time(GateKind::Swap, params.omega), opts.tol);
  std::ostringstream detail;
  detail << "max amplitude difference n_max " << report.n_max_low << " vs "
         << report.n_max_high << " = " << fmt(report.max_abs_diff);
  return {report.passed, detail.str()};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const CheckOptions& opts) {
  std::vector<CheckResult> results;
  results.push_back(
      run_clause("index_bijectivity", [&] { return index_bijectivity(opts); }));
  results.push_back(
      run_clause("named_state_gram", [&] { return named_state_gram(opts); }));
  results.push_back(run_clause("hermiticity", [&] { return hermiticity(opts); }));
  results.push_back(run_clause("decay_block", [&] { return decay_block(opts); }));
  results.push_back(run_clause("integrator_convergence",
                               [&] { return integrator_convergence(opts); }));
  results.push_back(
      run_clause("norm_conservation", [&] { return norm_conservation(opts); }));
  results.push_back(
      run_clause("norm_monotonic", [&] { return norm_monotonic(opts); }));
  results.push_back(run_clause("truncation_sensitivity",
                               [&] { return truncation_sensitivity(opts); }));
  results.push_back(
      run_clause("oracle_equivalence", [&] { return oracle_equivalence(opts); }));
  return results;
}

}  // namespace iongate
