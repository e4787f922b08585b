#pragma once

#include <string>
#include <vector>

#include "iongate/evolve.hpp"

namespace iongate {

struct CheckOptions {
  int n_max = 3;
  double tol = kDefaultTol;
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Fast self-validation pass: index bijectivity, named-state orthonormality,
// Hermiticity and decay-block structure, norm invariants, oracle
// equivalence, integrator convergence order and truncation sensitivity.
std::vector<CheckResult> run_validation_suite(const CheckOptions& opts);

}  // namespace iongate
