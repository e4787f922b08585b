#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iongate/gates.hpp"

namespace iongate {

inline constexpr const char* kCsvHeader =
    "omega_over_g2,initial_state,mode,fidelity_numeric,fidelity_analytic,"
    "success_numeric,success_analytic,norm_final,steps_taken,status";

struct SweepSpec {
  GateKind gate = GateKind::Phase;
  std::vector<RunMode> modes = {RunMode::Coherent};

  // Linear grid in Omega/g2, both endpoints included.
  double omega_start = 0.01;
  double omega_stop = 0.4;
  int omega_count = 40;

  double g3 = 0.0;
  double gamma3 = 0.0;
  int n_max = 3;
  double tol = kDefaultTol;

  std::vector<std::string> initial_states = {"00", "01"};
  std::string output_path;

  void validate() const;
};

// fig2: coherent phase-gate fidelity curve; fig4: conditional fidelity with
// g3 = g2, gamma3 = 20; fig5: success rates for continuous monitoring vs a
// single end-of-gate measurement.
SweepSpec preset(const std::string& name);

struct RunRecord {
  double omega;
  std::string initial_state;
  RunMode mode;
  std::optional<GateReport> report;  // empty when the point failed
  std::string error;
};

// Accepts "00","01","10","11","a","s" and two-term qubit superpositions
// such as "00+01" or "01-10" (normalized by 1/sqrt(2)).
StateVector parse_initial_state(const HilbertSpace& space,
                                const std::string& token);

// One record per (omega, initial state, mode), omega ascending, states and
// modes in declared order. Integration failures become error records
// instead of aborting the sweep.
std::vector<RunRecord> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& os, const std::vector<RunRecord>& records);

// Flat "key=value" lines, '#' comments. Keys mirror CLI flag names; repeated
// keys are kept in order (repeatable flags). Throws on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(std::istream& is);

}  // namespace iongate
