#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sqv {

using cplx = std::complex<double>;

/// Raised when a state or distribution breaks its normalization contract.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when operands live on different truncated bases.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Photon cap N, squeezing r and rotation angle phi (radians, stored in [0, 2pi)).
class SqueezeConfig {
 public:
  SqueezeConfig(int n_total, double r, double phi);

  int n_total() const { return n_total_; }
  double r() const { return r_; }
  double phi() const { return phi_; }

 private:
  int n_total_;
  double r_;
  double phi_;
};

// Kets |n1,n2> with n1 + n2 <= truncation, ordered by total photon number
// k = n1 + n2 and then by n1 ascending. Block k occupies [k(k+1)/2, (k+1)(k+2)/2).
namespace basis {

inline std::size_t dim(int truncation) {
  const auto t = static_cast<std::size_t>(truncation);
  return (t + 1) * (t + 2) / 2;
}

inline std::size_t block_offset(int total) {
  const auto k = static_cast<std::size_t>(total);
  return k * (k + 1) / 2;
}

inline std::size_t index(int n1, int n2) { return block_offset(n1 + n2) + static_cast<std::size_t>(n1); }

std::pair<int, int> ket(std::size_t index);

}  // namespace basis

class TwoModeState {
 public:
  enum class Origin { constructed, oracle_rotation, analytic };

  /// Rescales the amplitudes to unit norm. Throws InvariantViolation for a zero vector.
  static TwoModeState normalized(int truncation, std::vector<cplx> amplitudes,
                                 Origin origin = Origin::constructed);
  /// Wraps amplitudes as given; used for unitary outputs whose norm is the thing under test.
  static TwoModeState raw(int truncation, std::vector<cplx> amplitudes,
                          Origin origin = Origin::constructed);
  static TwoModeState basis_ket(int truncation, int n1, int n2);

  int truncation() const { return truncation_; }
  std::size_t dim() const { return amplitudes_.size(); }
  Origin origin() const { return origin_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  /// Zero outside the truncation simplex. Negative indices throw std::out_of_range.
  cplx amplitude(int n1, int n2) const;
  double norm_squared() const;

 private:
  TwoModeState(int truncation, std::vector<cplx> amplitudes, Origin origin);

  int truncation_;
  std::vector<cplx> amplitudes_;
  Origin origin_;
};

struct PhotonDistribution {
  int truncation = 0;
  std::vector<double> joint;           // basis-indexed P(n1, n2)
  std::vector<double> marginal_total;  // P(n1 + n2 = k), k = 0..truncation

  double p(int n1, int n2) const;
};

enum class Mode { first, second };

/// Squeezed input: amplitudes proportional to tanh(r)^j on |j,j>, j = 0..floor(N/2).
TwoModeState make_squeezed_input(const SqueezeConfig& cfg);

PhotonDistribution joint_distribution(const TwoModeState& state);

/// Fraction of the probability on |j,j>: Sum_j P(j,j) / Sum P.
double diagonal_weight(const TwoModeState& state);

/// Photon-number distribution of one mode, n = 0..truncation.
std::vector<double> mode_marginal(const PhotonDistribution& dist, Mode mode);

/// Mandel Q = Var(n)/<n> - 1. Throws std::domain_error when <n> = 0 and
/// InvariantViolation when the weights do not sum to one.
double mandel_q(std::span<const double> distribution);

}  // namespace sqv
