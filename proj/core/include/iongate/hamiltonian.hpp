#pragma once

#include <Eigen/SparseCore>

#include <iosfwd>

#include "iongate/hilbert.hpp"

namespace iongate {

enum class GateKind { Phase, Swap };

// Physical rates in units of g2, the sideband coupling of the 1-2 transition
// to the vibrational mode. g2 = 1 fixes the unit of time to 1/g2; hbar = 1.
struct GateParams {
  double omega = 0.1;   // weak-pulse Rabi frequency
  double g3 = 0.0;      // sideband coupling of the 1-3 transition
  double gamma3 = 0.0;  // spontaneous decay rate of level 3
  int n_max = 3;        // phonon-number truncation

  static constexpr double g2 = 1.0;

  void validate() const;

  // g3 within a factor of two of g2 and 10 <= gamma3 <= 100. Parameters
  // outside this window are legal but the damping mechanism degrades.
  bool in_recommended_regime() const;
};

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Sparse operator over the canonical basis. Conditional (non-Hermitian)
// operators carry their anti-Hermitian part only on level-3 diagonals.
class Operator {
 public:
  Operator(SparseMatrix matrix, bool hermitian);

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  bool hermitian() const { return hermitian_; }
  const SparseMatrix& matrix() const { return matrix_; }

  StateVector apply(const StateVector& psi) const;

  // Plain-text triplets "row,col,re,im" sorted by (row, col); byte-stable
  // across runs for identical inputs. Debug and golden tests only.
  void dump(std::ostream& os) const;

 private:
  SparseMatrix matrix_;
  bool hermitian_;
};

// H = sum_i i*g2 |1>_i<2| b+  +  (1/2) Omega |0>_1<2|  +  h.c.
Operator build_coherent(const HilbertSpace& space, const GateParams& params);

// Adds the 1-3 sideband (g3) on both ions and the -i/2 gamma3 |3>_i<3|
// decay term; laser on ion 1 only.
Operator build_conditional_phase(const HilbertSpace& space, const GateParams& params);

// Same as the conditional phase operator with the laser on both ions.
Operator build_conditional_swap(const HilbertSpace& space, const GateParams& params);

// Adiabatically eliminated generator on the n = 0 sector:
//   phase:  -Omega/(2*sqrt(2)) (|Q01><A| + h.c.)
//   swap:   +Omega/(2*sqrt(2)) (-|Q01><A| + |Q10><A| + h.c.)
Operator build_effective(const HilbertSpace& space, const GateParams& params, GateKind kind);

}  // namespace iongate
