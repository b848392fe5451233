#include "sqv/vortexdetect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_zero(const cplx& v) { return v.real() == 0.0 && v.imag() == 0.0; }

// Principal value of b - a in (-pi, pi].
double wrapped_step(double a, double b) {
  double d = std::remainder(b - a, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

constexpr double kBranchTol = 1e-9;

struct LoopSum {
  int winding = 0;
  bool ambiguous = false;  // a step sits on the +-pi branch and the loop is not collinear
};

LoopSum loop_sum(const ComplexField& field, int i0, int j0, int i1, int j1) {
  // Counter-clockwise in (x, y): along +x at row i0, +y at column j1, -x at row i1, -y at column j0.
  double total = 0.0;
  bool branch = false, collinear = true;
  double prev = std::arg(field.at(i0, j0));
  auto visit = [&](int i, int j) {
    const double cur = std::arg(field.at(i, j));
    const double d = wrapped_step(prev, cur);
    const bool on_branch = std::abs(d) >= std::numbers::pi - kBranchTol;
    branch = branch || on_branch;
    collinear = collinear && (on_branch || std::abs(d) <= kBranchTol);
    total += d;
    prev = cur;
  };
  for (int j = j0 + 1; j <= j1; ++j) visit(i0, j);
  for (int i = i0 + 1; i <= i1; ++i) visit(i, j1);
  for (int j = j1 - 1; j >= j0; --j) visit(i1, j);
  for (int i = i1 - 1; i >= i0; --i) visit(i, j0);
  // Sign flips of a field with constant phase carry no circulation.
  if (branch && collinear) return {0, false};
  return {static_cast<int>(std::lround(total / kTwoPi)), branch};
}

struct CellResult {
  int winding = 0;
  bool indeterminate = false;
  bool at_node = false;  // vortex sits on the lower-left node rather than inside the cell
};

bool ring_has_zero(const ComplexField& f, int i0, int j0, int i1, int j1) {
  for (int j = j0; j <= j1; ++j) {
    if (is_zero(f.at(i0, j)) || is_zero(f.at(i1, j))) return true;
  }
  for (int i = i0; i <= i1; ++i) {
    if (is_zero(f.at(i, j0)) || is_zero(f.at(i, j1))) return true;
  }
  return false;
}

CellResult classify_cell(const ComplexField& f, int i, int j) {
  const bool z00 = is_zero(f.at(i, j));
  const bool others = is_zero(f.at(i, j + 1)) || is_zero(f.at(i + 1, j + 1)) || is_zero(f.at(i + 1, j));
  if (!z00 && !others) {
    const auto loop = loop_sum(f, i, j, i + 1, j + 1);
    return {loop.ambiguous ? 0 : loop.winding, loop.ambiguous, false};
  }
  if (z00 && !others) {
    const int res = f.resolution();
    if (i < 1 || j < 1 || i + 1 >= res || j + 1 >= res || ring_has_zero(f, i - 1, j - 1, i + 1, j + 1)) {
      return {0, true, true};
    }
    const auto loop = loop_sum(f, i - 1, j - 1, i + 1, j + 1);
    return {loop.ambiguous ? 0 : loop.winding, loop.ambiguous, true};
  }
  if (!z00) return {0, false, false};  // the zero corner is handled by its own cell
  return {0, true, false};
}

struct Candidate {
  int i;
  int j;
  int winding;
  bool indeterminate;
  double x;
  double y;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t k) {
  while (parent[k] != k) {
    parent[k] = parent[parent[k]];
    k = parent[k];
  }
  return k;
}

}  // namespace

int loop_winding(const ComplexField& field, int i0, int j0, int i1, int j1) {
  const int res = field.resolution();
  if (i0 < 0 || j0 < 0 || i1 >= res || j1 >= res || i0 >= i1 || j0 >= j1) {
    throw std::out_of_range("winding loop outside grid");
  }
  return loop_sum(field, i0, j0, i1, j1).winding;
}

int plaquette_winding(const ComplexField& field, int i, int j) {
  const int res = field.resolution();
  if (i < 0 || j < 0 || i + 1 >= res || j + 1 >= res) throw std::out_of_range("plaquette outside grid");
  return classify_cell(field, i, j).winding;
}

VortexReport detect_vortices(const ComplexField& field, const DetectionParams& params) {
  const int res = field.resolution();
  if (res < 32) {
    throw std::invalid_argument("vortex detection needs resolution >= 32, got " + std::to_string(res));
  }
  if (!(params.amplitude_floor >= 0.0 && params.amplitude_floor <= 1.0)) {
    throw std::invalid_argument("amplitude floor must lie in [0, 1]");
  }
  if (!(params.merge_radius >= 0.0)) throw std::invalid_argument("merge radius must be >= 0");

  const auto& grid = field.grid();
  const double h = grid.spacing();
  double global_max = 0.0;
  for (const auto& v : field.values()) global_max = std::max(global_max, std::abs(v));
  const double floor_abs = params.amplitude_floor * global_max;
  const double central = 0.5 * grid.extent;

  std::vector<Candidate> cands;
  VortexReport report;
  report.params = params;
  for (int i = 0; i + 1 < res; ++i) {
    for (int j = 0; j + 1 < res; ++j) {
      const auto cell = classify_cell(field, i, j);
      if (cell.winding == 0 && !cell.indeterminate) continue;
      const double cx = cell.at_node ? grid.coord(j) : grid.coord(j) + 0.5 * h;
      const double cy = cell.at_node ? grid.coord(i) : grid.coord(i) + 0.5 * h;
      const double neighborhood = std::max({std::abs(field.at(i, j)), std::abs(field.at(i, j + 1)),
                                            std::abs(field.at(i + 1, j)), std::abs(field.at(i + 1, j + 1))});
      if (neighborhood < floor_abs && std::hypot(cx, cy) > central) continue;
      cands.push_back({i, j, cell.winding, cell.indeterminate, cx, cy});
    }
  }

  // Single-linkage clustering of candidates closer than merge_radius spacings.
  std::vector<std::size_t> parent(cands.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const double link = params.merge_radius * h;
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      if (std::hypot(cands[a].x - cands[b].x, cands[a].y - cands[b].y) <= link) {
        parent[find_root(parent, a)] = find_root(parent, b);
      }
    }
  }

  struct Cluster {
    int imin = 0, jmin = 0, imax = 0, jmax = 0;
    int summed = 0;
    double wsum = 0.0, wx = 0.0, wy = 0.0;
    std::size_t indeterminate = 0;
    bool seen = false;
    std::size_t first = 0;
  };
  std::vector<Cluster> clusters(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const auto& c = cands[k];
    auto& cl = clusters[find_root(parent, k)];
    if (!cl.seen) {
      cl = {c.i, c.j, c.i, c.j, 0, 0.0, 0.0, 0.0, 0, true, k};
    }
    cl.imin = std::min(cl.imin, c.i);
    cl.jmin = std::min(cl.jmin, c.j);
    cl.imax = std::max(cl.imax, c.i);
    cl.jmax = std::max(cl.jmax, c.j);
    cl.summed += c.winding;
    if (c.indeterminate) ++cl.indeterminate;
    const double w = c.winding != 0 ? std::abs(c.winding) : 0.0;
    cl.wsum += w;
    cl.wx += w * c.x;
    cl.wy += w * c.y;
  }

  std::vector<const Cluster*> ordered;
  for (const auto& cl : clusters) {
    if (cl.seen) ordered.push_back(&cl);
  }
  std::sort(ordered.begin(), ordered.end(), [](const Cluster* a, const Cluster* b) { return a->first < b->first; });

  for (const Cluster* cl : ordered) {
    int charge = cl->summed;
    // One node ring beyond the cluster's cells: the enclosing loop resolves
    // multi-charge cores whose single-cell steps sit on the +-pi branch.
    const int i0 = cl->imin - 1, j0 = cl->jmin - 1, i1 = cl->imax + 2, j1 = cl->jmax + 2;
    if (i0 >= 0 && j0 >= 0 && i1 < res && j1 < res && !ring_has_zero(field, i0, j0, i1, j1)) {
      charge = loop_winding(field, i0, j0, i1, j1);
    }
    report.indeterminate_cells += cl->indeterminate;
    if (charge == 0) continue;
    Vortex v;
    v.charge = charge;
    if (cl->wsum > 0.0) {
      v.x = cl->wx / cl->wsum;
      v.y = cl->wy / cl->wsum;
    } else {
      v.x = cands[cl->first].x;
      v.y = cands[cl->first].y;
    }
    report.vortices.push_back(v);
    report.total_charge += charge;
  }
  report.count = report.vortices.size();
  return report;
}

}  // namespace sqv
