#include "sqv/quadfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqv/modeconverter.hpp"
#include "sqv/specfun.hpp"

namespace sqv {

namespace {

struct LgTerm {
  double weight;
  int radial;
  int charge;
};

// Weighted (radial, charge) terms of the LG superposition for one config.
std::vector<LgTerm> lg_terms(const SqueezeConfig& cfg, OddNReading reading) {
  const int n = cfg.n_total();
  const double r = cfg.r();
  std::vector<LgTerm> terms;
  if (reading == OddNReading::half_integer_gamma) {
    for (double j = 0.5 * (n % 2); j <= 0.5 * n; j += 1.0) {
      const int jf = static_cast<int>(std::floor(j));
      const double a = coeff_a(j, n, r);
      for (int m = 0; m <= jf; ++m) terms.push_back({a, jf - m, 2 * m});
    }
  } else {
    for (int j = 0; 2 * j <= n; ++j) {
      const double a = coeff_a(j, n, r);
      for (int m = 0; m <= j; ++m) terms.push_back({a, j - m, 2 * m});
    }
    if (n % 2 == 1) terms.push_back({coeff_a(0.5 * n, n, r), 0, 1});
  }
  return terms;
}

}  // namespace

GridSpec GridSpec::checked(double extent, int resolution) {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw std::invalid_argument("grid extent must be > 0");
  if (resolution < 16 || resolution % 2 != 0) {
    throw std::invalid_argument("grid resolution must be even and >= 16, got " + std::to_string(resolution));
  }
  return {extent, resolution};
}

std::string_view to_string(FieldProvenance p) {
  switch (p) {
    case FieldProvenance::fock_expansion: return "fock_expansion";
    case FieldProvenance::lg_superposition: return "lg_superposition";
    case FieldProvenance::synthetic: return "synthetic";
  }
  return "unknown";
}

std::string_view to_string(OddNReading r) {
  return r == OddNReading::floor_with_residual ? "floor" : "gamma";
}

OddNReading odd_n_reading_from_string(std::string_view s) {
  if (s == "floor") return OddNReading::floor_with_residual;
  if (s == "gamma") return OddNReading::half_integer_gamma;
  throw std::invalid_argument("unknown odd-N reading '" + std::string(s) + "' (expected floor|gamma)");
}

ComplexField::ComplexField(GridSpec grid, std::vector<cplx> values, FieldProvenance provenance)
    : grid_(grid), values_(std::move(values)), provenance_(provenance) {
  if (grid_.resolution < 2 || !(grid_.extent > 0.0)) throw std::invalid_argument("degenerate grid");
  const auto expected = static_cast<std::size_t>(grid_.resolution) * grid_.resolution;
  if (values_.size() != expected) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) + " samples, expected " +
                                std::to_string(expected));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("field contains a non-finite sample");
    }
  }
}

ComplexField ComplexField::conjugated() const {
  std::vector<cplx> out(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = std::conj(values_[k]);
  return ComplexField(grid_, std::move(out), provenance_);
}

ComplexField make_synthetic(const GridSpec& grid, const std::function<cplx(double, double)>& f) {
  const int res = grid.resolution;
  std::vector<cplx> values(static_cast<std::size_t>(res) * res);
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) values[static_cast<std::size_t>(i) * res + j] = f(grid.coord(j), grid.coord(i));
  }
  return ComplexField(grid, std::move(values), FieldProvenance::synthetic);
}

double ho_eigenfunction(int n, double x) {
  if (n < 0 || n > specfun::kMaxOrder) throw std::out_of_range("oscillator order outside cap");
  if (!std::isfinite(x)) throw std::domain_error("ho_eigenfunction: non-finite argument");
  // Normalized recurrence psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1};
  // equal to the closed form but free of the H_n / sqrt(2^n n!) overflow.
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ComplexField eval_fock_field(const TwoModeState& state, const GridSpec& grid) {
  const int trunc = state.truncation();
  if (trunc > specfun::kMaxOrder) throw std::out_of_range("state truncation exceeds polynomial cap");
  const int res = grid.resolution;

  // table[n * res + idx] = phi_n(coord(idx)); x and y share the same axis.
  std::vector<double> table(static_cast<std::size_t>(trunc + 1) * res);
  for (int n = 0; n <= trunc; ++n) {
    for (int idx = 0; idx < res; ++idx) table[static_cast<std::size_t>(n) * res + idx] = ho_eigenfunction(n, grid.coord(idx));
  }
  struct Term {
    cplx c;
    int n1;
    int n2;
  };
  std::vector<Term> terms;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const auto c = state.amplitudes()[k];
    if (c == cplx{}) continue;
    const auto [n1, n2] = basis::ket(k);
    terms.push_back({c, n1, n2});
  }

  std::vector<cplx> values(static_cast<std::size_t>(res) * res);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      cplx v{};
      for (const auto& t : terms) {
        v += t.c * table[static_cast<std::size_t>(t.n1) * res + j] * table[static_cast<std::size_t>(t.n2) * res + i];
      }
      values[static_cast<std::size_t>(i) * res + j] = v;
    }
  }
  return ComplexField(grid, std::move(values), FieldProvenance::fock_expansion);
}

cplx lg_term(int radial, int charge, double x, double y) {
  const double rho2 = x * x + y * y;
  const double theta = std::atan2(y, x);
  return specfun::laguerre_eval(radial, charge, rho2) * std::polar(1.0, charge * theta) * std::exp(-0.5 * rho2);
}

ComplexField eval_lg_superposition(const SqueezeConfig& cfg, const GridSpec& grid, OddNReading odd_reading) {
  const auto terms = lg_terms(cfg, odd_reading);
  const double prefactor = 1.0 / std::cosh(cfg.r());
  const int res = grid.resolution;

  std::vector<cplx> values(static_cast<std::size_t>(res) * res);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < res; ++i) {
    const double y = grid.coord(i);
    for (int j = 0; j < res; ++j) {
      const double x = grid.coord(j);
      const double rho2 = x * x + y * y;
      const double theta = std::atan2(y, x);
      cplx v{};
      for (const auto& t : terms) {
        v += t.weight * specfun::laguerre_eval(t.radial, t.charge, rho2) * std::polar(1.0, t.charge * theta);
      }
      values[static_cast<std::size_t>(i) * res + j] = prefactor * v * std::exp(-0.5 * rho2);
    }
  }

  double norm2 = 0.0;
  for (const auto& v : values) norm2 += std::norm(v);
  norm2 *= grid.spacing() * grid.spacing();
  if (norm2 > 0.0) {
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& v : values) v *= scale;
  }
  return ComplexField(grid, std::move(values), FieldProvenance::lg_superposition);
}

PhaseMap phase_map(const ComplexField& field) {
  PhaseMap out;
  out.grid = field.grid();
  const auto& vals = field.values();
  out.values.resize(vals.size());
  out.zero.assign(vals.size(), 0);
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const auto v = vals[k];
    if (v.real() == 0.0 && v.imag() == 0.0) {
      out.values[k] = 0.0;
      out.zero[k] = 1;
      ++out.zero_count;
      continue;
    }
    double ph = std::atan2(v.imag(), v.real());
    if (ph <= -std::numbers::pi) ph = std::numbers::pi;  // atan2(-0, x<0) gives -pi
    out.values[k] = ph;
  }
  return out;
}

std::vector<double> amplitude_map(const ComplexField& field) {
  std::vector<double> out(field.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(field.values()[k]);
  return out;
}

double grid_norm(const ComplexField& field) {
  double s = 0.0;
  for (const auto& v : field.values()) s += std::norm(v);
  const double h = field.grid().spacing();
  return s * h * h;
}

}  // namespace sqv
