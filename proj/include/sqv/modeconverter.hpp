#pragma once

// Quadrature rotation exp(i phi (a^dag b + a b^dag)) on the truncated two-mode
// Fock basis, two ways:
//   * an exact oracle: block-wise Hermitian eigendecomposition of the generator;
//   * the closed-form binomial coefficient expansion (A, B, C coefficients),
//     implemented term-for-term without corrections.
// run_audit() measures how far the second departs from the first.

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sqv/fockspace.hpp"

namespace sqv {

struct GeneratorMatrix {
  int truncation = 0;
  Eigen::MatrixXcd entries;  // rows/columns follow sqv::basis ordering

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// L_z = a^dag b + b^dag a, with <n1-1, n2+1|G|n1, n2> = sqrt(n1 (n2+1)).
GeneratorMatrix build_generator(int truncation);

/// U(phi) = exp(i phi G), exact to rounding. G conserves n1 + n2, so each
/// total-photon block is exponentiated separately.
Eigen::MatrixXcd rotation_unitary(double phi, int truncation);

/// Applies a precomputed unitary. Throws DimensionError on a basis mismatch.
TwoModeState apply_rotation(const TwoModeState& state, const Eigen::MatrixXcd& unitary);
TwoModeState apply_rotation(const TwoModeState& state, double phi);

// ---- closed-form expansion ------------------------------------------------

/// A_j = tanh(r)^j sqrt(j! (N-j)! / 2^N). j may be a half-integer.
double coeff_a(double j, int n_total, double r);
/// B_{k,l} = (i 2 phi)^(l+k).
cplx coeff_b(int k, int l, double phi);
/// C^{N j}_{l k} = sqrt((N-j-l+k)! (j+l-k)!) / (k! (j-k)! l! (N-j-l)!);
/// nullopt when a factorial argument is negative.
std::optional<double> coeff_c(int n_total, int j, int l, int k);

struct AnalyticCoefficients {
  std::map<int, double> a;
  std::map<std::pair<int, int>, cplx> b;                 // (k, l)
  std::map<std::tuple<int, int, int>, double> c;         // (j, l, k), evaluable terms only
  int skipped = 0;                                       // (j, l, k) with negative factorials
};

AnalyticCoefficients analytic_coefficients(const SqueezeConfig& cfg);

struct AnalyticState {
  TwoModeState state;     // origin() == Origin::analytic
  int skipped_terms = 0;
};

/// Sum over j <= N/2, k, l <= j of A_j B_{k,l} C^{Nj}_{lk} |j-(l-k), j+(l-k)>, normalized.
AnalyticState analytic_rotated_state(const SqueezeConfig& cfg);

struct AnalyticJointTable {
  PhotonDistribution distribution;  // normalized over n1 + n2 <= N
  int skipped_terms = 0;
};

/// Collapsed single-sum joint probability for every (n1, n2) with n1 + n2 <= N,
/// normalized over the table. Odd n1 + n2 contributes zero.
AnalyticJointTable joint_prob_analytic_table(const SqueezeConfig& cfg);

/// Normalized P(n1, n2) from the collapsed single sum; zero outside the table.
double joint_prob_analytic(int n1, int n2, const SqueezeConfig& cfg);

struct Discrepancy {
  int n1 = 0;
  int n2 = 0;
  cplx analytic;
  cplx oracle;

  double magnitude() const { return std::abs(analytic - oracle); }
};

struct AuditReport {
  SqueezeConfig config{0, 0.0, 0.0};
  double max_amplitude_deviation = 0.0;
  double max_probability_deviation = 0.0;
  std::vector<Discrepancy> discrepancies;  // sorted by magnitude, descending
  std::string verdict_notes;
};

/// Entries whose amplitude deviation is at or below this are not listed.
inline constexpr double kDiscrepancyFloor = 1e-12;

AuditReport run_audit(const SqueezeConfig& cfg);

}  // namespace sqv
