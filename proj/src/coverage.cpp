#include "hetnet/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetnet/errors.hpp"

namespace hetnet {

void PathLossModel::validate() const {
  if (!(reference_distance > 0.0) || !std::isfinite(reference_distance)) {
    throw ParameterError("path loss reference distance d0 must be positive");
  }
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("path loss exponent alpha must be positive");
  }
}

double rss_db(double tx_power_dbm, double distance, const PathLossModel& model) {
  const double d = std::max(distance, model.reference_distance);
  return tx_power_dbm - 10.0 * model.exponent * std::log10(d / model.reference_distance);
}

namespace {

/// Uniform bucket grid answering nearest-site queries. Among sites at equal
/// (clamped) distance the lowest index wins.
class NearestSiteIndex {
 public:
  NearestSiteIndex(const std::vector<Point>& sites, const Window& query_window,
                   double clamp_distance)
      : sites_(&sites), clamp2_(clamp_distance * clamp_distance) {
    x0_ = query_window.x_min();
    y0_ = query_window.y_min();
    double x1 = query_window.x_max();
    double y1 = query_window.y_max();
    for (const Point& p : sites) {
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    const double area = (x1 - x0_) * (y1 - y0_);
    cell_ = std::sqrt(area / static_cast<double>(std::max<std::size_t>(sites.size(), 1)));
    cell_ = std::max(cell_, std::max(x1 - x0_, y1 - y0_) / 2048.0);
    nx_ = std::max(1, static_cast<int>(std::ceil((x1 - x0_) / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil((y1 - y0_) / cell_)));

    offsets_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    std::vector<std::size_t> cell_of(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      cell_of[i] = flat(cell_x(sites[i].x), cell_y(sites[i].y));
      ++offsets_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < offsets_.size(); ++c) offsets_[c] += offsets_[c - 1];
    members_.resize(sites.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      members_[fill[cell_of[i]]++] = static_cast<std::int32_t>(i);
    }
  }

  /// Returns (index, squared distance after clamping at d0).
  std::pair<std::int32_t, double> nearest(Point q) const {
    const int cx = cell_x(q.x);
    const int cy = cell_y(q.y);
    double best_d2 = std::numeric_limits<double>::infinity();
    std::int32_t best = -1;
    const int max_ring = std::max(nx_, ny_);
    for (int r = 0; r <= max_ring; ++r) {
      for (int j = cy - r; j <= cy + r; ++j) {
        if (j < 0 || j >= ny_) continue;
        const bool edge_row = (j == cy - r || j == cy + r);
        const int step = edge_row ? 1 : 2 * r;
        for (int i = cx - r; i <= cx + r; i += std::max(step, 1)) {
          if (i < 0 || i >= nx_) continue;
          scan_cell(flat(i, j), q, best, best_d2);
        }
      }
      if (best >= 0 && std::sqrt(best_d2) < static_cast<double>(r) * cell_) break;
    }
    return {best, best_d2};
  }

 private:
  int cell_x(double x) const {
    return std::clamp(static_cast<int>((x - x0_) / cell_), 0, nx_ - 1);
  }
  int cell_y(double y) const {
    return std::clamp(static_cast<int>((y - y0_) / cell_), 0, ny_ - 1);
  }
  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }

  void scan_cell(std::size_t c, Point q, std::int32_t& best, double& best_d2) const {
    for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) {
      const std::int32_t idx = members_[k];
      const double d2 = std::max(squared_distance(q, (*sites_)[static_cast<std::size_t>(idx)]),
                                 clamp2_);
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    }
  }

  const std::vector<Point>* sites_;
  double clamp2_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<std::int32_t> members_;
};

}  // namespace

Point RssGrid::pixel_center(int row, int col) const {
  const Window& w = spec.window;
  const double dx = w.width() / spec.nx;
  const double dy = w.height() / spec.ny;
  return {w.x_min() + (col + 0.5) * dx, w.y_max() - (row + 0.5) * dy};
}

RssGrid compute_rss_grid(std::span<const TierLayer> layers, const GridSpec& grid,
                         const PathLossModel& model) {
  model.validate();
  if (grid.nx < 2 || grid.ny < 2) throw ParameterError("grid must be at least 2x2");
  // Lower tiers are examined first so that equal RSS keeps the lower tier.
  std::vector<const TierLayer*> active;
  for (const TierLayer& layer : layers) {
    if (!layer.points.empty()) active.push_back(&layer);
  }
  if (active.empty()) throw EmptyNetworkError("no base stations to evaluate");
  std::stable_sort(active.begin(), active.end(),
                   [](const TierLayer* a, const TierLayer* b) { return a->tier < b->tier; });
  std::vector<std::pair<const TierLayer*, NearestSiteIndex>> indexes;
  indexes.reserve(active.size());
  for (const TierLayer* layer : active) {
    indexes.emplace_back(layer, NearestSiteIndex(layer->points.points, grid.window,
                                                 model.reference_distance));
  }

  RssGrid out;
  out.spec = grid;
  const std::size_t n = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  out.best_rss.assign(n, -std::numeric_limits<double>::infinity());
  out.best_tier.assign(n, 0);
  out.best_index.assign(n, -1);
  for (int row = 0; row < grid.ny; ++row) {
    for (int col = 0; col < grid.nx; ++col) {
      const Point q = out.pixel_center(row, col);
      const std::size_t k = out.index(row, col);
      for (const auto& [layer, index] : indexes) {
        const auto [idx, d2] = index.nearest(q);
        const double rss = rss_db(layer->power_dbm, std::sqrt(d2), model);
        if (rss > out.best_rss[k]) {
          out.best_rss[k] = rss;
          out.best_tier[k] = static_cast<std::uint8_t>(layer->tier);
          out.best_index[k] = idx;
        }
      }
    }
  }
  return out;
}

RssGrid compute_rss_grid(const NetworkRealization& realization, const GridSpec& grid,
                         const PathLossModel& model) {
  return compute_rss_grid(std::span<const TierLayer>(realization.tiers), grid, model);
}

CoverageReport coverage_report(const RssGrid& grid, double threshold_db) {
  CoverageReport report;
  report.threshold_db = threshold_db;
  std::size_t uncovered = 0;
  std::array<std::size_t, kTierCount> covered{};
  std::array<std::size_t, kTierCount> strongest{};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const int tier = grid.best_tier[k];
    if (tier >= 1 && tier <= kTierCount) ++strongest[static_cast<std::size_t>(tier - 1)];
    if (grid.best_rss[k] < threshold_db) {
      ++uncovered;
    } else if (tier >= 1 && tier <= kTierCount) {
      ++covered[static_cast<std::size_t>(tier - 1)];
    }
  }
  const double n = static_cast<double>(grid.size());
  report.uncovered_fraction = static_cast<double>(uncovered) / n;
  for (std::size_t t = 0; t < kTierCount; ++t) {
    report.covered_fraction[t] = static_cast<double>(covered[t]) / n;
    report.strongest_fraction[t] = static_cast<double>(strongest[t]) / n;
  }
  return report;
}

CoverageReport coverage_report(const RssGrid& grid, double threshold_db,
                               const NetworkRealization& realization) {
  CoverageReport report = coverage_report(grid, threshold_db);
  report.realized_power_w = realized_total_power(realization);
  return report;
}

double coverage_radius(double tx_power_dbm, double threshold_db, const PathLossModel& model) {
  model.validate();
  return model.reference_distance *
         std::pow(10.0, (tx_power_dbm - threshold_db) / (10.0 * model.exponent));
}

double calibrate_alpha(double target_covered_fraction, const MacroCalibration& macro) {
  if (!(target_covered_fraction > 0.0 && target_covered_fraction < 1.0)) {
    throw ParameterError("calibration target must lie in (0, 1)");
  }
  if (!(macro.intensity > 0.0) || !(macro.reference_distance > 0.0)) {
    throw ParameterError("calibration needs positive intensity and d0");
  }
  const double critical =
      std::sqrt(-std::log1p(-target_covered_fraction) / (macro.intensity * std::numbers::pi));
  if (!(critical > macro.reference_distance)) {
    throw CalibrationError("critical distance does not exceed d0; target unreachable");
  }
  const double margin = macro.power_dbm - macro.threshold_db;
  if (!(margin > 0.0)) {
    throw CalibrationError("transmit power must exceed the coverage threshold");
  }
  return margin / (10.0 * std::log10(critical / macro.reference_distance));
}

}  // namespace hetnet
