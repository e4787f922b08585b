#pragma once

#include <Eigen/Core>

#include <complex>
#include <iosfwd>

namespace iongate {

using Complex = std::complex<double>;

// Two trapped ions with four internal levels each, sharing one quantized
// vibrational mode truncated at n_max phonons. Canonical ordering puts the
// phonon number outermost, then ion 1, then ion 2.
inline constexpr int kIonLevels = 4;
inline constexpr int kInternalDim = kIonLevels * kIonLevels;

struct BasisIndex {
  int n;   // phonon occupation, 0..n_max
  int l1;  // ion-1 internal level, 0..3
  int l2;  // ion-2 internal level, 0..3

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

class HilbertSpace {
 public:
  // n_max >= 1: the sideband coupling creates one phonon, so a truncation
  // below one phonon cannot hold any dynamics.
  explicit HilbertSpace(int n_max);

  int n_max() const { return n_max_; }
  int dimension() const { return kInternalDim * (n_max_ + 1); }

  bool contains(const BasisIndex& b) const;
  int to_linear(const BasisIndex& b) const;
  BasisIndex from_linear(int index) const;

 private:
  int n_max_;
};

// Qubit states live at n = 0 in ion levels {0,1}. A and S are the
// antisymmetric and symmetric unit combinations of |12> and |21> at n = 0.
enum class NamedState { Q00, Q01, Q10, Q11, A, S };

class StateVector {
 public:
  explicit StateVector(const HilbertSpace& space);
  StateVector(Eigen::VectorXcd amplitudes, int n_max);

  int n_max() const { return n_max_; }
  int dimension() const { return static_cast<int>(amps_.size()); }
  double norm_squared() const { return amps_.squaredNorm(); }

  Complex amp(const BasisIndex& b) const;
  Complex& operator[](int i) { return amps_[i]; }
  Complex operator[](int i) const { return amps_[i]; }

  Eigen::VectorXcd& amplitudes() { return amps_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

 private:
  Eigen::VectorXcd amps_;
  int n_max_;
};

StateVector basis_state(const HilbertSpace& space, const BasisIndex& b);
StateVector named_state(const HilbertSpace& space, NamedState s);

// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

// Plain-text serialization: one row "n,l1,l2,re,im" per amplitude in
// canonical index order.
void write_state(std::ostream& os, const StateVector& psi);
StateVector read_state(std::istream& is);

}  // namespace iongate
