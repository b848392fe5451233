#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "sqv/fockspace.hpp"

namespace sqv {

/// Uniform square grid over [-extent, extent]^2; row index i runs along y,
/// column index j along x.
struct GridSpec {
  double extent = 6.0;
  int resolution = 512;

  double spacing() const { return 2.0 * extent / (resolution - 1); }
  double coord(int idx) const { return -extent + idx * spacing(); }

  /// Enforces extent > 0 and an even resolution >= 16. The raw struct is left
  /// unchecked so that writers can be exercised on tiny hand-built grids.
  static GridSpec checked(double extent, int resolution);
};

enum class FieldProvenance { fock_expansion, lg_superposition, synthetic };

std::string_view to_string(FieldProvenance p);

class ComplexField {
 public:
  /// Throws std::invalid_argument when the sample count is not resolution^2 or
  /// a sample is not finite.
  ComplexField(GridSpec grid, std::vector<cplx> values, FieldProvenance provenance);

  const GridSpec& grid() const { return grid_; }
  FieldProvenance provenance() const { return provenance_; }
  int resolution() const { return grid_.resolution; }
  const std::vector<cplx>& values() const { return values_; }
  const cplx& at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.resolution + j]; }

  ComplexField conjugated() const;

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
  FieldProvenance provenance_;
};

/// Samples f(x, y) on every grid node; provenance = synthetic.
ComplexField make_synthetic(const GridSpec& grid, const std::function<cplx(double, double)>& f);

/// Normalized 1D harmonic-oscillator eigenfunction
/// pi^{-1/4} / sqrt(2^n n!) H_n(x) exp(-x^2/2).
double ho_eigenfunction(int n, double x);

/// psi(x, y) = sum amplitude(n1, n2) phi_n1(x) phi_n2(y).
ComplexField eval_fock_field(const TwoModeState& state, const GridSpec& grid);

/// L_radial^charge(rho^2) e^{i charge theta} e^{-rho^2/2}, with no rho^charge prefactor.
cplx lg_term(int radial, int charge, double x, double y);

/// How the j <= N/2 upper limit of the LG superposition is read for odd N.
enum class OddNReading {
  /// j = 0..floor(N/2), plus one charge-1 term weighted by A_{N/2} (Gamma-extended).
  floor_with_residual,
  /// j = N/2, N/2 - 1, ... >= 0 (half-integers for odd N), A_j via Gamma,
  /// integer m <= floor(j), radial order floor(j) - m.
  half_integer_gamma,
};

std::string_view to_string(OddNReading r);
OddNReading odd_n_reading_from_string(std::string_view s);

inline constexpr OddNReading kDefaultOddNReading = OddNReading::floor_with_residual;

/// (1/cosh r) sum_j sum_{m<=j} A_j L_{j-m}^{2m}(rho^2) e^{i 2m theta} e^{-rho^2/2},
/// normalized so that sum |psi|^2 h^2 = 1 on the grid.
ComplexField eval_lg_superposition(const SqueezeConfig& cfg, const GridSpec& grid,
                                   OddNReading odd_reading = kDefaultOddNReading);

struct PhaseMap {
  GridSpec grid;
  std::vector<double> values;       // in (-pi, pi]
  std::vector<std::uint8_t> zero;   // 1 where re = im = 0 (phase set to 0)
  std::size_t zero_count = 0;
};

PhaseMap phase_map(const ComplexField& field);
std::vector<double> amplitude_map(const ComplexField& field);

/// Riemann sum of |psi|^2 h^2 over the grid.
double grid_norm(const ComplexField& field);

}  // namespace sqv
