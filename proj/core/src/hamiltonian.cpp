#include "iongate/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "iongate/format.hpp"

namespace iongate {

namespace {

constexpr Complex kI{0.0, 1.0};

using Triplets = std::vector<Eigen::Triplet<Complex>>;

void add_entry(Triplets& t, int row, int col, Complex value) {
  t.emplace_back(row, col, value);
}

// g * |1>_ion<level| b+ and its Hermitian conjugate.
void add_sideband(Triplets& t, const HilbertSpace& space, int ion, int level,
                  double g) {
  if (g == 0.0) return;
  for (int n = 0; n + 1 <= space.n_max(); ++n) {
    const double elem = g * std::sqrt(static_cast<double>(n + 1));
    for (int other = 0; other < kIonLevels; ++other) {
      const BasisIndex from = ion == 1 ? BasisIndex{n, level, other}
                                       : BasisIndex{n, other, level};
      const BasisIndex to = ion == 1 ? BasisIndex{n + 1, 1, other}
                                     : BasisIndex{n + 1, other, 1};
      const int row = space.to_linear(to);
      const int col = space.to_linear(from);
      add_entry(t, row, col, kI * elem);
      add_entry(t, col, row, -kI * elem);
    }
  }
}

// (omega/2) |0>_ion<2| and its Hermitian conjugate.
void add_laser(Triplets& t, const HilbertSpace& space, int ion, double omega) {
  if (omega == 0.0) return;
  for (int n = 0; n <= space.n_max(); ++n) {
    for (int other = 0; other < kIonLevels; ++other) {
      const BasisIndex from =
          ion == 1 ? BasisIndex{n, 2, other} : BasisIndex{n, other, 2};
      const BasisIndex to =
          ion == 1 ? BasisIndex{n, 0, other} : BasisIndex{n, other, 0};
      const int row = space.to_linear(to);
      const int col = space.to_linear(from);
      add_entry(t, row, col, 0.5 * omega);
      add_entry(t, col, row, 0.5 * omega);
    }
  }
}

// -(i/2) gamma3 |3>_i<3| summed over both ions.
void add_decay(Triplets& t, const HilbertSpace& space, double gamma3) {
  if (gamma3 == 0.0) return;
  for (int i = 0; i < space.dimension(); ++i) {
    const BasisIndex b = space.from_linear(i);
    const int count = (b.l1 == 3 ? 1 : 0) + (b.l2 == 3 ? 1 : 0);
    if (count > 0) add_entry(t, i, i, -0.5 * kI * (gamma3 * count));
  }
}

Operator assemble(const HilbertSpace& space, Triplets& t, bool hermitian) {
  SparseMatrix m(space.dimension(), space.dimension());
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return Operator(std::move(m), hermitian);
}

Operator build_conditional(const HilbertSpace& space, const GateParams& params,
                           bool laser_both_ions) {
  params.validate();
  if (space.n_max() != params.n_max) {
    throw std::invalid_argument("build: space and params n_max disagree");
  }
  Triplets t;
  for (int ion = 1; ion <= 2; ++ion) {
    add_sideband(t, space, ion, 2, GateParams::g2);
    add_sideband(t, space, ion, 3, params.g3);
  }
  add_laser(t, space, 1, params.omega);
  if (laser_both_ions) add_laser(t, space, 2, params.omega);
  add_decay(t, space, params.gamma3);
  return assemble(space, t, params.gamma3 == 0.0);
}

}  // namespace

void GateParams::validate() const {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("GateParams: omega must be finite and >= 0");
  }
  if (!(g3 >= 0.0) || !std::isfinite(g3)) {
    throw std::invalid_argument("GateParams: g3 must be finite and >= 0");
  }
  if (!(gamma3 >= 0.0) || !std::isfinite(gamma3)) {
    throw std::invalid_argument("GateParams: gamma3 must be finite and >= 0");
  }
  if (n_max < 1) {
    throw std::invalid_argument("GateParams: n_max must be >= 1");
  }
}

bool GateParams::in_recommended_regime() const {
  return g3 >= 0.5 * g2 && g3 <= 2.0 * g2 && gamma3 >= 10.0 * g2 &&
         gamma3 <= 100.0 * g2;
}

Operator::Operator(SparseMatrix matrix, bool hermitian)
    : matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("Operator: matrix must be square");
  }
}

StateVector Operator::apply(const StateVector& psi) const {
  if (psi.dimension() != dimension()) {
    throw std::invalid_argument("Operator::apply: dimension mismatch");
  }
  return StateVector(matrix_ * psi.amplitudes(), psi.n_max());
}

void Operator::dump(std::ostream& os) const {
  std::vector<std::tuple<int, int, Complex>> entries;
  entries.reserve(matrix_.nonZeros());
  for (int k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      entries.emplace_back(static_cast<int>(it.row()),
                           static_cast<int>(it.col()), it.value());
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [row, col, value] : entries) {
    os << row << ',' << col << ',' << format_double(value.real()) << ','
       << format_double(value.imag()) << '\n';
  }
}

Operator build_coherent(const HilbertSpace& space, const GateParams& params) {
  params.validate();
  if (space.n_max() != params.n_max) {
    throw std::invalid_argument("build: space and params n_max disagree");
  }
  Triplets t;
  for (int ion = 1; ion <= 2; ++ion) {
    add_sideband(t, space, ion, 2, GateParams::g2);
  }
  add_laser(t, space, 1, params.omega);
  return assemble(space, t, true);
}

Operator build_conditional_phase(const HilbertSpace& space,
                                 const GateParams& params) {
  return build_conditional(space, params, false);
}

Operator build_conditional_swap(const HilbertSpace& space,
                                const GateParams& params) {
  return build_conditional(space, params, true);
}

Operator build_effective(const HilbertSpace& space, const GateParams& params,
                         GateKind kind) {
  params.validate();
  if (space.n_max() != params.n_max) {
    throw std::invalid_argument("build: space and params n_max disagree");
  }
  const int i001 = space.to_linear({0, 0, 1});
  const int i010 = space.to_linear({0, 1, 0});
  const int i012 = space.to_linear({0, 1, 2});
  const int i021 = space.to_linear({0, 2, 1});
  // |Q01><A| decomposes onto |001><012| - |001><021| with weight 1/sqrt(2),
  // so the matrix elements carry omega/4.
  const double w = params.omega / 4.0;
  Triplets t;
  if (params.omega != 0.0) {
    if (kind == GateKind::Phase) {
      add_entry(t, i001, i012, -w);
      add_entry(t, i001, i021, w);
      add_entry(t, i012, i001, -w);
      add_entry(t, i021, i001, w);
    } else {
      add_entry(t, i001, i012, -w);
      add_entry(t, i001, i021, w);
      add_entry(t, i010, i012, w);
      add_entry(t, i010, i021, -w);
      add_entry(t, i012, i001, -w);
      add_entry(t, i021, i001, w);
      add_entry(t, i012, i010, w);
      add_entry(t, i021, i010, -w);
    }
  }
  return assemble(space, t, true);
}

}  // namespace iongate
