#include "sqv/fockspace.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sqv {

namespace {

constexpr double kNormTolerance = 1e-9;

}  // namespace

SqueezeConfig::SqueezeConfig(int n_total, double r, double phi) : n_total_(n_total), r_(r) {
  if (n_total < 0) throw std::invalid_argument("photon cap must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("squeezing parameter must be finite and >= 0");
  if (!std::isfinite(phi)) throw std::invalid_argument("rotation angle must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
  if (phi_ >= two_pi) phi_ = 0.0;
}

namespace basis {

std::pair<int, int> ket(std::size_t index) {
  int k = 0;
  while (block_offset(k + 1) <= index) ++k;
  const int n1 = static_cast<int>(index - block_offset(k));
  return {n1, k - n1};
}

}  // namespace basis

TwoModeState::TwoModeState(int truncation, std::vector<cplx> amplitudes, Origin origin)
    : truncation_(truncation), amplitudes_(std::move(amplitudes)), origin_(origin) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (amplitudes_.size() != basis::dim(truncation)) {
    throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) +
                         " does not match truncation " + std::to_string(truncation));
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
  }
}

TwoModeState TwoModeState::normalized(int truncation, std::vector<cplx> amplitudes, Origin origin) {
  TwoModeState s(truncation, std::move(amplitudes), origin);
  const double n2 = s.norm_squared();
  if (!(n2 > 0.0)) throw InvariantViolation("cannot normalize a zero state");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : s.amplitudes_) a *= scale;
  return s;
}

TwoModeState TwoModeState::raw(int truncation, std::vector<cplx> amplitudes, Origin origin) {
  return TwoModeState(truncation, std::move(amplitudes), origin);
}

TwoModeState TwoModeState::basis_ket(int truncation, int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 > truncation) throw std::out_of_range("ket outside truncation");
  std::vector<cplx> amps(basis::dim(truncation));
  amps[basis::index(n1, n2)] = 1.0;
  return TwoModeState(truncation, std::move(amps), Origin::constructed);
}

cplx TwoModeState::amplitude(int n1, int n2) const {
  if (n1 < 0 || n2 < 0) throw std::out_of_range("negative photon number");
  if (n1 + n2 > truncation_) return {};
  return amplitudes_[basis::index(n1, n2)];
}

double TwoModeState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

double PhotonDistribution::p(int n1, int n2) const {
  if (n1 < 0 || n2 < 0) throw std::out_of_range("negative photon number");
  if (n1 + n2 > truncation) return 0.0;
  return joint[basis::index(n1, n2)];
}

TwoModeState make_squeezed_input(const SqueezeConfig& cfg) {
  const int n = cfg.n_total();
  std::vector<cplx> amps(basis::dim(n));
  const double t = std::tanh(cfg.r());
  // The 1/cosh r prefactor cancels in the normalization.
  double w = 1.0;
  for (int j = 0; 2 * j <= n; ++j) {
    amps[basis::index(j, j)] = w;
    w *= t;
  }
  return TwoModeState::normalized(n, std::move(amps));
}

PhotonDistribution joint_distribution(const TwoModeState& state) {
  const double n2 = state.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw InvariantViolation("state norm^2 = " + std::to_string(n2) + " deviates from 1");
  }
  PhotonDistribution d;
  d.truncation = state.truncation();
  d.joint.resize(state.dim());
  d.marginal_total.assign(static_cast<std::size_t>(state.truncation()) + 1, 0.0);
  for (int k = 0; k <= state.truncation(); ++k) {
    for (int n1 = 0; n1 <= k; ++n1) {
      const auto idx = basis::index(n1, k - n1);
      d.joint[idx] = std::norm(state.amplitudes()[idx]);
      d.marginal_total[static_cast<std::size_t>(k)] += d.joint[idx];
    }
  }
  return d;
}

double diagonal_weight(const TwoModeState& state) {
  // One pass in basis order, so a purely diagonal state gives exactly 1.
  double diag = 0.0, total = 0.0;
  for (int k = 0; k <= state.truncation(); ++k) {
    for (int n1 = 0; n1 <= k; ++n1) {
      const double p = std::norm(state.amplitude(n1, k - n1));
      total += p;
      if (2 * n1 == k) diag += p;
    }
  }
  if (total == 0.0) throw InvariantViolation("diagonal weight of a zero state");
  return diag / total;
}

std::vector<double> mode_marginal(const PhotonDistribution& dist, Mode mode) {
  std::vector<double> out(static_cast<std::size_t>(dist.truncation) + 1, 0.0);
  for (int k = 0; k <= dist.truncation; ++k) {
    for (int n1 = 0; n1 <= k; ++n1) {
      const int n = mode == Mode::first ? n1 : k - n1;
      out[static_cast<std::size_t>(n)] += dist.p(n1, k - n1);
    }
  }
  return out;
}

double mandel_q(std::span<const double> distribution) {
  double total = 0.0;
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t n = 0; n < distribution.size(); ++n) {
    const double p = distribution[n];
    if (!(p >= 0.0)) throw InvariantViolation("negative or NaN probability");
    const auto nd = static_cast<double>(n);
    total += p;
    mean += nd * p;
    second += nd * nd * p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw InvariantViolation("distribution does not sum to 1");
  if (mean == 0.0) throw std::domain_error("Mandel Q undefined for zero mean photon number");
  return (second - mean * mean) / mean - 1.0;
}

}  // namespace sqv
