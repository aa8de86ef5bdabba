#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/geometry.hpp"
#include "hetnet/path_loss.hpp"
#include "hetnet/point_processes.hpp"
#include "hetnet/tessellation.hpp"

namespace hetnet {

inline constexpr int kTierCount = 4;

enum class Tier1Variant { Ppp, PerturbedLattice };
enum class Tier4Variant { Ppp, MaternCluster };

/// Macro tier: PPP of intensity `intensity`, or a perturbed triangular
/// lattice with that density.
struct Tier1Config {
  Tier1Variant variant = Tier1Variant::Ppp;
  double intensity = 0.0;
  LatticePerturbation perturbation{};
  double power_dbm = 50.0;
};

/// Linear PPP on the macro Voronoi edges.
struct Tier2Config {
  double mu = 0.0;  // points per unit length
  double power_dbm = 30.0;
};

/// Independent thinning of the macro Voronoi vertices.
struct Tier3Config {
  double retain_prob = 0.0;
  double power_dbm = 40.0;
};

struct Tier4Config {
  Tier4Variant variant = Tier4Variant::Ppp;
  double intensity = 0.0;  // PPP variant only
  MaternClusterParams cluster{};
  double power_dbm = 20.0;
};

struct GridSpec {
  Window window;
  int nx = 500;
  int ny = 500;
};

struct ScenarioConfig {
  std::string name = "custom";
  Window window = Window::square(20.0);
  /// Sampling margin around the analysis window; automatic when unset.
  std::optional<double> buffer_margin;
  Tier1Config tier1;
  Tier2Config tier2;
  Tier3Config tier3;
  Tier4Config tier4;
  PathLossModel path_loss;
  double threshold_db = -30.0;
  int grid_nx = 500;
  int grid_ny = 500;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Explicit margin, else 3/sqrt(lambda) for tier 1, else 3/sqrt(nu), else 0.
  double effective_buffer_margin() const;
  /// Analysis window grown by the buffer margin; every tier is sampled here.
  Window sampling_window() const { return window.expanded(effective_buffer_margin()); }
  GridSpec grid() const { return {window, grid_nx, grid_ny}; }
  double tier_power_dbm(int tier) const;
};

/// Base stations of one tier over the whole sampling window.
struct TierLayer {
  int tier = 1;
  double power_dbm = 0.0;
  PointSet points;
};

struct NetworkRealization {
  ScenarioConfig scenario;
  std::uint64_t seed = 0;
  Window sampling_window;
  std::array<TierLayer, kTierCount> tiers;
  /// Voronoi diagram of tier 1 (absent with fewer than two macro sites).
  std::optional<Tessellation> tessellation;
  /// Cluster centres when tier 4 is a Matérn cluster process.
  PointSet cluster_parents;

  const TierLayer& tier(int id) const { return tiers.at(static_cast<std::size_t>(id - 1)); }
  /// Tier `id` restricted to the analysis window.
  PointSet reported(int id) const;
};

/// Samples all four tiers on the buffered window with one labeled substream
/// per tier. Throws DegenerateScenarioError when tiers 2/3 are requested but
/// tier 1 has fewer than two sites.
NetworkRealization build_realization(const ScenarioConfig& scenario, std::uint64_t seed);

/// (lambda, 2 mu sqrt(lambda), 2 p lambda, nu); nu = M nu_p for clusters.
std::array<double, kTierCount> theoretical_tier_intensities(const ScenarioConfig& scenario);
double theoretical_total_density(const ScenarioConfig& scenario);

/// Sum over tiers of theoretical intensity times transmit power, in W per
/// unit area.
double expected_power_density(const ScenarioConfig& scenario);

/// Transmit power of all base stations inside the analysis window, in W.
double realized_total_power(const NetworkRealization& realization);

/// 10^((dbm - 30) / 10).
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Named scenario presets reproducing the published figure parameters.
const std::vector<std::string>& preset_names();
/// Throws ParameterError listing valid names for an unknown preset.
ScenarioConfig make_preset(const std::string& name);

}  // namespace hetnet
