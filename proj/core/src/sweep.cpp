#include "iongate/sweep.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "iongate/format.hpp"

namespace iongate {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

StateVector named_token(const HilbertSpace& space, const std::string& token) {
  if (token == "00") return named_state(space, NamedState::Q00);
  if (token == "01") return named_state(space, NamedState::Q01);
  if (token == "10") return named_state(space, NamedState::Q10);
  if (token == "11") return named_state(space, NamedState::Q11);
  if (token == "a") return named_state(space, NamedState::A);
  if (token == "s") return named_state(space, NamedState::S);
  throw std::invalid_argument("unknown initial state '" + token + "'");
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("na");
}

}  // namespace

void SweepSpec::validate() const {
  if (!(omega_start > 0.0)) {
    throw std::invalid_argument("sweep: omega_start must be > 0");
  }
  if (!(omega_stop <= 1.0)) {
    throw std::invalid_argument("sweep: omega_stop must be <= 1 (= g2)");
  }
  if (!(omega_stop >= omega_start)) {
    throw std::invalid_argument("sweep: omega_stop must be >= omega_start");
  }
  if (omega_count < 2) {
    throw std::invalid_argument("sweep: omega_count must be >= 2");
  }
  if (modes.empty()) {
    throw std::invalid_argument("sweep: at least one mode required");
  }
  if (initial_states.empty()) {
    throw std::invalid_argument("sweep: at least one initial state required");
  }
  GateParams probe{omega_start, g3, gamma3, n_max};
  probe.validate();
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sweep: tol must be > 0");
  }
}

SweepSpec preset(const std::string& name) {
  SweepSpec spec;
  if (name == "fig2") {
    spec.gate = GateKind::Phase;
    spec.modes = {RunMode::Coherent};
    spec.g3 = 0.0;
    spec.gamma3 = 0.0;
  } else if (name == "fig4") {
    spec.gate = GateKind::Phase;
    spec.modes = {RunMode::Conditional};
    spec.g3 = 1.0;
    spec.gamma3 = 20.0;
  } else if (name == "fig5") {
    spec.gate = GateKind::Phase;
    spec.modes = {RunMode::Conditional, RunMode::CoherentProjection};
    spec.g3 = 1.0;
    spec.gamma3 = 20.0;
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected fig2, fig4 or fig5)");
  }
  return spec;
}

StateVector parse_initial_state(const HilbertSpace& space,
                                const std::string& raw) {
  const std::string token = trim(raw);
  if (token.empty()) {
    throw std::invalid_argument("empty initial-state token");
  }
  const auto plus = token.find('+', 1);
  const auto minus = token.find('-', 1);
  const auto split = plus != std::string::npos ? plus : minus;
  if (split == std::string::npos) return named_token(space, token);

  const std::string lhs = trim(token.substr(0, split));
  const std::string rhs = trim(token.substr(split + 1));
  if (lhs == rhs) {
    throw std::invalid_argument("superposition '" + token +
                                "' repeats the same state");
  }
  const double sign = token[split] == '+' ? 1.0 : -1.0;
  StateVector psi = named_token(space, lhs);
  psi.amplitudes() += sign * named_token(space, rhs).amplitudes();
  psi.amplitudes() /= std::sqrt(2.0);
  return psi;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const HilbertSpace space(spec.n_max);

  std::vector<StateVector> states;
  states.reserve(spec.initial_states.size());
  for (const auto& token : spec.initial_states) {
    StateVector psi = parse_initial_state(space, token);
    if (!in_qubit_sector(psi)) {
      throw std::invalid_argument("initial state '" + token +
                                  "' lies outside the qubit sector");
    }
    states.push_back(std::move(psi));
  }

  std::vector<RunRecord> records;
  records.reserve(static_cast<size_t>(spec.omega_count) * states.size() *
                  spec.modes.size());
  for (int k = 0; k < spec.omega_count; ++k) {
    const double omega =
        spec.omega_start + (spec.omega_stop - spec.omega_start) *
                               static_cast<double>(k) /
                               static_cast<double>(spec.omega_count - 1);
    const GateParams params{omega, spec.g3, spec.gamma3, spec.n_max};
    for (size_t si = 0; si < states.size(); ++si) {
      for (const RunMode mode : spec.modes) {
        RunRecord record;
        record.omega = omega;
        record.initial_state = spec.initial_states[si];
        record.mode = mode;
        try {
          record.report =
              run_gate(spec.gate, params, states[si], mode, spec.tol);
        } catch (const IntegrationError& err) {
          record.error = err.what();
        }
        records.push_back(std::move(record));
      }
    }
  }
  return records;
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << format_double(r.omega) << ',' << r.initial_state << ','
       << to_string(r.mode) << ',';
    if (r.report) {
      const GateReport& rep = *r.report;
      os << format_double(rep.fidelity_numeric) << ','
         << csv_cell(rep.fidelity_analytic) << ','
         << format_double(rep.success_numeric) << ','
         << csv_cell(rep.success_analytic) << ','
         << format_double(rep.norm_final) << ',' << rep.steps_taken << ",ok";
    } else {
      os << "na,na,na,na,na,na,error";
    }
    os << '\n';
  }
}

std::vector<std::pair<std::string, std::string>> read_config(std::istream& is) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    entries.emplace_back(trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
  }
  return entries;
}

}  // namespace iongate
