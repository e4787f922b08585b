#include "iongate/gates.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "iongate/format.hpp"

namespace iongate {

namespace {

constexpr Complex kI{0.0, 1.0};

struct QubitAmplitudes {
  Complex c000, c001, c010, c011;
};

QubitAmplitudes qubit_amplitudes(const StateVector& psi) {
  const HilbertSpace space(psi.n_max());
  return {psi[space.to_linear({0, 0, 0})], psi[space.to_linear({0, 0, 1})],
          psi[space.to_linear({0, 1, 0})], psi[space.to_linear({0, 1, 1})]};
}

void require_qubit_sector(const StateVector& psi, const char* who) {
  if (!in_qubit_sector(psi)) {
    throw std::invalid_argument(std::string(who) +
                                ": state has support outside the qubit "
                                "sector (n = 0, ion levels 0/1)");
  }
}

// |c000|^2 + |c001|^2/4 on the normalized input; the weight driving both
// the fidelity and success-rate deficits.
double leakage_weight(const StateVector& psi) {
  const auto [c000, c001, c010, c011] = qubit_amplitudes(psi);
  const double n2 = psi.norm_squared();
  return (std::norm(c000) + 0.25 * std::norm(c001)) / n2;
}

Operator build_for_mode(const HilbertSpace& space, GateKind kind,
                        const GateParams& params, RunMode mode) {
  if (mode == RunMode::Conditional) {
    return kind == GateKind::Phase ? build_conditional_phase(space, params)
                                   : build_conditional_swap(space, params);
  }
  if (kind == GateKind::Phase) return build_coherent(space, params);
  GateParams no_dissipation = params;
  no_dissipation.g3 = 0.0;
  no_dissipation.gamma3 = 0.0;
  return build_conditional_swap(space, no_dissipation);
}

double overlap_fidelity(const StateVector& target, const StateVector& psi) {
  const double n2 = psi.norm_squared();
  if (n2 <= 0.0) return 0.0;
  return std::norm(inner(target, psi)) / n2;
}

}  // namespace

double gate_time(GateKind kind, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("gate_time: omega must be finite and > 0");
  }
  const double swap_time = 2.0 * std::numbers::pi / omega;
  return kind == GateKind::Swap ? swap_time : std::sqrt(2.0) * swap_time;
}

std::string to_string(GateKind kind) {
  return kind == GateKind::Phase ? "phase" : "swap";
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Coherent:
      return "coherent";
    case RunMode::Conditional:
      return "conditional";
    case RunMode::CoherentProjection:
      return "coherent+projection";
  }
  return "?";
}

bool in_qubit_sector(const StateVector& psi, double tol) {
  const HilbertSpace space(psi.n_max());
  double outside = 0.0;
  for (int i = 0; i < psi.dimension(); ++i) {
    const BasisIndex b = space.from_linear(i);
    if (b.n != 0 || b.l1 > 1 || b.l2 > 1) outside += std::norm(psi[i]);
  }
  return outside <= tol * std::max(psi.norm_squared(), 1.0);
}

StateVector ideal_gate(GateKind kind, const StateVector& psi0) {
  require_qubit_sector(psi0, "ideal_gate");
  const HilbertSpace space(psi0.n_max());
  StateVector out = psi0;
  const int i001 = space.to_linear({0, 0, 1});
  const int i010 = space.to_linear({0, 1, 0});
  if (kind == GateKind::Phase) {
    out[i001] = -out[i001];
  } else {
    std::swap(out[i001], out[i010]);
  }
  return out;
}

double analytic_fidelity(const GateParams& params, const StateVector& psi0) {
  params.validate();
  require_qubit_sector(psi0, "analytic_fidelity");
  const double r = params.omega / GateParams::g2;
  return 1.0 - 0.25 * r * r * leakage_weight(psi0);
}

double analytic_success(const GateParams& params, const StateVector& psi0) {
  params.validate();
  require_qubit_sector(psi0, "analytic_success");
  if (params.g3 == 0.0) return 1.0;
  const double rate =
      params.omega * params.g3 * params.g3 / (GateParams::g2 * GateParams::g2 * params.gamma3);
  return 1.0 - 2.0 * std::sqrt(2.0) * std::numbers::pi * rate * leakage_weight(psi0);
}

std::map<std::string, Complex> perturbative_leakage(const GateParams& params,
                                                    const StateVector& psi0,
                                                    bool dissipative) {
  params.validate();
  require_qubit_sector(psi0, "perturbative_leakage");
  const auto [c000, c001, c010, c011] = qubit_amplitudes(psi0);
  const double r = params.omega / GateParams::g2;

  std::map<std::string, Complex> amps;
  amps["110"] = -kI * (r / 2.0) * c000;
  amps["111"] = -kI * (r / 4.0) * c001;
  if (!dissipative) return amps;

  if (!(params.gamma3 > 0.0)) {
    throw std::invalid_argument(
        "perturbative_leakage: dissipative amplitudes require gamma3 > 0");
  }
  const double g3r = params.g3 / params.gamma3;       // g3/Gamma3
  const double g3r2 = params.g3 * g3r / GateParams::g2;  // g3^2/(g2 Gamma3)
  amps["020"] = -kI * r * g3r2 * c000;
  amps["030"] = kI * r * g3r * c000;
  amps["0s"] = -kI * (r / 2.0) * std::sqrt(2.0) * g3r2 * c001;
  // Adiabatic slaving of the decaying level-3 amplitudes under the
  // conditional dynamics gives +i here (c013 = -2 g3/Gamma3 * c111).
  amps["013"] = kI * (r / 2.0) * g3r * c001;
  amps["031"] = kI * (r / 2.0) * g3r * c001;
  return amps;
}

StateVector adiabatic_oracle(GateKind kind, const GateParams& params,
                             const StateVector& psi0, double t) {
  params.validate();
  const HilbertSpace space(psi0.n_max());
  const StateVector a = named_state(space, NamedState::A);
  const StateVector s = named_state(space, NamedState::S);
  const Complex ca = inner(a, psi0);

  double outside = 0.0;
  const int i012 = space.to_linear({0, 1, 2});
  const int i021 = space.to_linear({0, 2, 1});
  for (int i = 0; i < psi0.dimension(); ++i) {
    const BasisIndex b = space.from_linear(i);
    const bool qubit = b.n == 0 && b.l1 <= 1 && b.l2 <= 1;
    if (!qubit && i != i012 && i != i021) outside += std::norm(psi0[i]);
  }
  if (outside > 1e-12 || std::norm(inner(s, psi0)) > 1e-12) {
    throw std::invalid_argument(
        "adiabatic_oracle: state must be supported on the qubit sector and A");
  }

  const int i001 = space.to_linear({0, 0, 1});
  const int i010 = space.to_linear({0, 1, 0});
  StateVector out = psi0;
  if (kind == GateKind::Phase) {
    const double theta = params.omega * t / (2.0 * std::sqrt(2.0));
    const Complex c001 = psi0[i001];
    const Complex c001_new = std::cos(theta) * c001 + kI * std::sin(theta) * ca;
    const Complex ca_new = std::cos(theta) * ca + kI * std::sin(theta) * c001;
    out[i001] = c001_new;
    out.amplitudes() += (ca_new - ca) * a.amplitudes();
  } else {
    // Dark state (Q01+Q10)/sqrt(2) is stationary; the bright state
    // (Q10-Q01)/sqrt(2) rotates against A with coupling Omega/2.
    const double theta = params.omega * t / 2.0;
    const Complex c001 = psi0[i001];
    const Complex c010 = psi0[i010];
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex bright = (c010 - c001) * inv_sqrt2;
    const Complex dark = (c010 + c001) * inv_sqrt2;
    const Complex bright_new =
        std::cos(theta) * bright - kI * std::sin(theta) * ca;
    const Complex ca_new = std::cos(theta) * ca - kI * std::sin(theta) * bright;
    out[i001] = (dark - bright_new) * inv_sqrt2;
    out[i010] = (dark + bright_new) * inv_sqrt2;
    out.amplitudes() += (ca_new - ca) * a.amplitudes();
  }
  return out;
}

GateReport run_gate(GateKind kind, const GateParams& params,
                    const StateVector& psi0, RunMode mode, double tol) {
  params.validate();
  require_qubit_sector(psi0, "run_gate");
  if (psi0.n_max() != params.n_max) {
    throw std::invalid_argument("run_gate: psi0 and params n_max disagree");
  }
  const HilbertSpace space(params.n_max);
  const double duration = gate_time(kind, params.omega);
  const Operator op = build_for_mode(space, kind, params, mode);
  const EvolutionResult evolved = evolve(op, psi0, duration, tol);

  GateReport report;
  report.kind = kind;
  report.mode = mode;
  report.params = params;
  report.gate_duration = duration;
  report.norm_final = evolved.norm_squared;
  report.steps_taken = evolved.steps_taken;

  const StateVector target = ideal_gate(kind, psi0);
  switch (mode) {
    case RunMode::Coherent:
      report.fidelity_numeric = overlap_fidelity(target, evolved.final_state);
      report.success_numeric = 1.0;
      break;
    case RunMode::Conditional:
      report.fidelity_numeric = overlap_fidelity(target, evolved.final_state);
      report.success_numeric = evolved.norm_squared;
      break;
    case RunMode::CoherentProjection: {
      auto [projected, success] = project_phonon_ground(evolved.final_state);
      report.fidelity_numeric = overlap_fidelity(target, projected);
      report.success_numeric = success;
      break;
    }
  }

  if (kind == GateKind::Phase) {
    report.fidelity_analytic = analytic_fidelity(params, psi0);
    switch (mode) {
      case RunMode::Coherent:
        report.success_analytic = 1.0;
        break;
      case RunMode::Conditional:
        report.success_analytic = analytic_success(params, psi0);
        break;
      case RunMode::CoherentProjection:
        // First-order weight left above n = 0 equals the fidelity deficit.
        report.success_analytic = analytic_fidelity(params, psi0);
        break;
    }
  }

  const StateVector s = named_state(space, NamedState::S);
  auto population = [&](const BasisIndex& b) {
    return std::norm(evolved.final_state.amp(b));
  };
  report.leaked_populations["020"] = population({0, 2, 0});
  report.leaked_populations["110"] = population({1, 1, 0});
  report.leaked_populations["030"] = population({0, 3, 0});
  report.leaked_populations["0s"] = std::norm(inner(s, evolved.final_state));
  report.leaked_populations["111"] = population({1, 1, 1});
  report.leaked_populations["013"] = population({0, 1, 3});
  report.leaked_populations["031"] = population({0, 3, 1});
  return report;
}

void write_report(std::ostream& os, const GateReport& report) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("na");
  };
  os << "gate=" << to_string(report.kind) << '\n'
     << "mode=" << to_string(report.mode) << '\n'
     << "omega_over_g2=" << format_double(report.params.omega) << '\n'
     << "g3=" << format_double(report.params.g3) << '\n'
     << "gamma3=" << format_double(report.params.gamma3) << '\n'
     << "n_max=" << report.params.n_max << '\n'
     << "gate_time=" << format_double(report.gate_duration) << '\n'
     << "fidelity_numeric=" << format_double(report.fidelity_numeric) << '\n'
     << "fidelity_analytic=" << opt(report.fidelity_analytic) << '\n'
     << "fidelity_delta="
     << (report.fidelity_analytic
             ? format_double(report.fidelity_numeric - *report.fidelity_analytic)
             : std::string("na"))
     << '\n'
     << "success_numeric=" << format_double(report.success_numeric) << '\n'
     << "success_analytic=" << opt(report.success_analytic) << '\n'
     << "success_delta="
     << (report.success_analytic
             ? format_double(report.success_numeric - *report.success_analytic)
             : std::string("na"))
     << '\n'
     << "norm_final=" << format_double(report.norm_final) << '\n'
     << "steps_taken=" << report.steps_taken << '\n';
  for (const auto& [label, value] : report.leaked_populations) {
    os << "leak_" << label << '=' << format_double(value) << '\n';
  }
}

}  // namespace iongate
