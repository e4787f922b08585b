#include "iongate/hilbert.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iongate/format.hpp"

namespace iongate {

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument(
        "HilbertSpace: n_max must be >= 1 (the sideband coupling creates a "
        "phonon, so n_max = 0 holds no dynamics)");
  }
}

bool HilbertSpace::contains(const BasisIndex& b) const {
  return b.n >= 0 && b.n <= n_max_ && b.l1 >= 0 && b.l1 < kIonLevels &&
         b.l2 >= 0 && b.l2 < kIonLevels;
}

int HilbertSpace::to_linear(const BasisIndex& b) const {
  if (!contains(b)) {
    throw std::out_of_range("HilbertSpace::to_linear: index out of range");
  }
  return (b.n * kIonLevels + b.l1) * kIonLevels + b.l2;
}

BasisIndex HilbertSpace::from_linear(int index) const {
  if (index < 0 || index >= dimension()) {
    throw std::out_of_range("HilbertSpace::from_linear: index out of range");
  }
  const int l2 = index % kIonLevels;
  const int l1 = (index / kIonLevels) % kIonLevels;
  const int n = index / kInternalDim;
  return BasisIndex{n, l1, l2};
}

StateVector::StateVector(const HilbertSpace& space)
    : amps_(Eigen::VectorXcd::Zero(space.dimension())), n_max_(space.n_max()) {}

StateVector::StateVector(Eigen::VectorXcd amplitudes, int n_max)
    : amps_(std::move(amplitudes)), n_max_(n_max) {
  if (n_max_ < 1 || amps_.size() != kInternalDim * (n_max_ + 1)) {
    throw std::invalid_argument(
        "StateVector: amplitude count must be 16*(n_max+1)");
  }
}

Complex StateVector::amp(const BasisIndex& b) const {
  return amps_[HilbertSpace(n_max_).to_linear(b)];
}

StateVector basis_state(const HilbertSpace& space, const BasisIndex& b) {
  StateVector psi(space);
  psi[space.to_linear(b)] = 1.0;
  return psi;
}

StateVector named_state(const HilbertSpace& space, NamedState s) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (s) {
    case NamedState::Q00:
      return basis_state(space, {0, 0, 0});
    case NamedState::Q01:
      return basis_state(space, {0, 0, 1});
    case NamedState::Q10:
      return basis_state(space, {0, 1, 0});
    case NamedState::Q11:
      return basis_state(space, {0, 1, 1});
    case NamedState::A: {
      StateVector psi(space);
      psi[space.to_linear({0, 1, 2})] = inv_sqrt2;
      psi[space.to_linear({0, 2, 1})] = -inv_sqrt2;
      return psi;
    }
    case NamedState::S: {
      StateVector psi(space);
      psi[space.to_linear({0, 1, 2})] = inv_sqrt2;
      psi[space.to_linear({0, 2, 1})] = inv_sqrt2;
      return psi;
    }
  }
  throw std::invalid_argument("named_state: unknown state");
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

void write_state(std::ostream& os, const StateVector& psi) {
  const HilbertSpace space(psi.n_max());
  for (int i = 0; i < psi.dimension(); ++i) {
    const BasisIndex b = space.from_linear(i);
    os << b.n << ',' << b.l1 << ',' << b.l2 << ','
       << format_double(psi[i].real()) << ',' << format_double(psi[i].imag())
       << '\n';
  }
}

StateVector read_state(std::istream& is) {
  std::vector<Complex> amps;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int n = 0, l1 = 0, l2 = 0;
    double re = 0.0, im = 0.0;
    char sep = 0;
    if (!(row >> n >> sep >> l1 >> sep >> l2 >> sep >> re >> sep >> im)) {
      throw std::invalid_argument("read_state: malformed row '" + line + "'");
    }
    const int expected = static_cast<int>(amps.size());
    if ((n * kIonLevels + l1) * kIonLevels + l2 != expected) {
      throw std::invalid_argument("read_state: rows out of canonical order");
    }
    amps.emplace_back(re, im);
  }
  if (amps.empty() || amps.size() % kInternalDim != 0) {
    throw std::invalid_argument("read_state: amplitude count not 16*(n_max+1)");
  }
  const int n_max = static_cast<int>(amps.size()) / kInternalDim - 1;
  if (n_max < 1) {
    throw std::invalid_argument("read_state: state smaller than n_max = 1");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = amps[i];
  return StateVector(std::move(v), n_max);
}

}  // namespace iongate
