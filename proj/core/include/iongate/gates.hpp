#pragma once

#include <map>
#include <optional>
#include <string>

#include "iongate/evolve.hpp"

namespace iongate {

// Pulse duration: 2*sqrt(2)*pi/Omega for the phase gate, 2*pi/Omega for
// SWAP. Their ratio is sqrt(2) exactly.
double gate_time(GateKind kind, double omega);

enum class RunMode { Coherent, Conditional, CoherentProjection };

std::string to_string(GateKind kind);
std::string to_string(RunMode mode);

struct GateReport {
  GateKind kind;
  RunMode mode;
  GateParams params;
  double gate_duration;

  double fidelity_numeric;
  // Analytic route, phase gate only; empty (not applicable) for SWAP.
  std::optional<double> fidelity_analytic;

  double success_numeric;
  std::optional<double> success_analytic;

  double norm_final;  // norm^2 of the evolved state before any projection
  long steps_taken;

  // |amplitude|^2 on the leakage channels {020,110,030,0s,111,013,031},
  // measured on the raw (unnormalized) evolved state.
  std::map<std::string, double> leaked_populations;
};

// True when the state is supported on the four n = 0, levels {0,1} states.
bool in_qubit_sector(const StateVector& psi, double tol = 1e-12);

// phase: negates the Q01 amplitude; swap: exchanges Q01 and Q10.
StateVector ideal_gate(GateKind kind, const StateVector& psi0);

// Evolves psi0 for gate_time(kind, omega) under the operator selected by
// mode, then scores it against ideal_gate. Conditional fidelity is taken on
// the renormalized no-photon state; its success is the final norm^2.
GateReport run_gate(GateKind kind, const GateParams& params,
                    const StateVector& psi0, RunMode mode,
                    double tol = kDefaultTol);

// 1 - (Omega^2/4g2^2) (|c000|^2 + |c001|^2/4), the adiabatic phase-gate
// fidelity. psi0 must be in the qubit sector.
double analytic_fidelity(const GateParams& params, const StateVector& psi0);

// 1 - 2*sqrt(2)*pi (Omega g3^2/(g2^2 gamma3)) (|c000|^2 + |c001|^2/4),
// the no-photon probability of the conditional phase gate.
double analytic_success(const GateParams& params, const StateVector& psi0);

// First-order leaked amplitudes driven by c000 and c001. Without
// dissipation only c110 and c111 accumulate; with dissipation the full set
// {020,110,030,0s,111,013,031} is returned. Requires gamma3 > 0 when
// dissipative.
std::map<std::string, Complex> perturbative_leakage(const GateParams& params,
                                                    const StateVector& psi0,
                                                    bool dissipative);

// Closed-form solution of the adiabatically eliminated dynamics. psi0 must
// be supported on the qubit sector plus the antisymmetric state A.
StateVector adiabatic_oracle(GateKind kind, const GateParams& params,
                             const StateVector& psi0, double t);

// Flat key=value form of a report, including oracle-vs-numeric deltas.
void write_report(std::ostream& os, const GateReport& report);

}  // namespace iongate
