#include "hetnet/output_files.hpp"

#include <array>
#include <ostream>
#include <vector>

#include "format.hpp"

namespace hetnet {

using detail::format_double;

namespace {

void write_grid_comment(const GridSpec& spec, const char* quantity, std::ostream& out) {
  const Window& w = spec.window;
  out << "# " << quantity << " nx=" << spec.nx << " ny=" << spec.ny
      << " x_min=" << format_double(w.x_min()) << " x_max=" << format_double(w.x_max())
      << " y_min=" << format_double(w.y_min()) << " y_max=" << format_double(w.y_max())
      << " rows=north_first\n";
}

}  // namespace

void write_points_csv(const NetworkRealization& real, std::ostream& out) {
  out << "tier,index,x,y,tx_power_dbm,in_window\n";
  for (const TierLayer& layer : real.tiers) {
    for (std::size_t i = 0; i < layer.points.size(); ++i) {
      const Point& p = layer.points.points[i];
      out << layer.tier << ',' << i << ',' << format_double(p.x) << ',' << format_double(p.y)
          << ',' << format_double(layer.power_dbm) << ','
          << (real.scenario.window.contains(p) ? 1 : 0) << '\n';
    }
  }
}

void write_rss_csv(const RssGrid& grid, std::ostream& out) {
  write_grid_comment(grid.spec, "best_rss_db", out);
  for (int row = 0; row < grid.spec.ny; ++row) {
    for (int col = 0; col < grid.spec.nx; ++col) {
      if (col > 0) out << ',';
      out << format_double(grid.best_rss[grid.index(row, col)]);
    }
    out << '\n';
  }
}

void write_association_csv(const RssGrid& grid, const NetworkRealization& real,
                           std::ostream& out) {
  std::array<std::size_t, kTierCount + 1> first_row{};
  for (int t = 1; t <= kTierCount; ++t) {
    first_row[static_cast<std::size_t>(t)] =
        first_row[static_cast<std::size_t>(t - 1)] + real.tier(t).points.size();
  }
  write_grid_comment(grid.spec, "transmitter_id", out);
  for (int row = 0; row < grid.spec.ny; ++row) {
    for (int col = 0; col < grid.spec.nx; ++col) {
      if (col > 0) out << ',';
      const std::size_t k = grid.index(row, col);
      const int tier = grid.best_tier[k];
      out << first_row[static_cast<std::size_t>(tier - 1)] +
                 static_cast<std::size_t>(grid.best_index[k]);
    }
    out << '\n';
  }
}

void write_coverage_pgm(const RssGrid& grid, double threshold_db, std::ostream& out) {
  out << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n4\n";
  std::vector<char> row_bytes(static_cast<std::size_t>(grid.spec.nx));
  for (int row = 0; row < grid.spec.ny; ++row) {
    for (int col = 0; col < grid.spec.nx; ++col) {
      const std::size_t k = grid.index(row, col);
      const bool covered = grid.best_rss[k] >= threshold_db;
      row_bytes[static_cast<std::size_t>(col)] = static_cast<char>(covered ? grid.best_tier[k] : 0);
    }
    out.write(row_bytes.data(), static_cast<std::streamsize>(row_bytes.size()));
  }
}

void write_summary_csv(std::span<const McSummary> summaries, std::ostream& out) {
  out << "metric,count,mean,std_dev,std_error,ci99_low,ci99_high\n";
  for (const McSummary& s : summaries) {
    out << s.metric << ',' << s.count << ',' << format_double(s.mean) << ','
        << format_double(s.std_dev) << ',' << format_double(s.std_error) << ','
        << format_double(s.ci_low) << ',' << format_double(s.ci_high) << '\n';
  }
}

}  // namespace hetnet
