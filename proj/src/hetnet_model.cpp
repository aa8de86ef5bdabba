#include "hetnet/hetnet_model.hpp"

#include <cmath>

#include "hetnet/errors.hpp"

namespace hetnet {
namespace {

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, message);
}

bool non_negative(double v) { return v >= 0.0 && std::isfinite(v); }

}  // namespace

void ScenarioConfig::validate() const {
  if (buffer_margin) {
    require(non_negative(*buffer_margin), "buffer_margin", "must be finite and non-negative");
  }
  require(non_negative(tier1.intensity), "tier1.lambda_per_area",
          "must be finite and non-negative");
  if (tier1.variant == Tier1Variant::PerturbedLattice) {
    require(tier1.intensity > 0.0, "tier1.lambda_per_area",
            "lattice density must be positive");
    require(non_negative(tier1.perturbation.variance), "tier1.perturbation_variance",
            "must be finite and non-negative");
  }
  require(non_negative(tier2.mu), "tier2.mu_per_length", "must be finite and non-negative");
  require(tier3.retain_prob >= 0.0 && tier3.retain_prob <= 1.0, "tier3.retain_prob",
          "must lie in [0, 1]");
  if (tier2.mu > 0.0 || tier3.retain_prob > 0.0) {
    require(tier1.intensity > 0.0, "tier1.lambda_per_area",
            "must be positive when tier 2 or tier 3 is enabled");
  }
  if (tier4.variant == Tier4Variant::Ppp) {
    require(non_negative(tier4.intensity), "tier4.nu_per_area", "must be finite and non-negative");
  } else {
    require(non_negative(tier4.cluster.parent_intensity), "tier4.parent_per_area",
            "must be finite and non-negative");
    require(non_negative(tier4.cluster.mean_points_per_cluster), "tier4.mean_points_per_cluster",
            "must be finite and non-negative");
    require(tier4.cluster.cluster_radius > 0.0 && std::isfinite(tier4.cluster.cluster_radius),
            "tier4.cluster_radius", "must be positive");
  }
  require(std::isfinite(tier1.power_dbm), "tier1.power_dbm", "must be finite");
  require(std::isfinite(tier2.power_dbm), "tier2.power_dbm", "must be finite");
  require(std::isfinite(tier3.power_dbm), "tier3.power_dbm", "must be finite");
  require(std::isfinite(tier4.power_dbm), "tier4.power_dbm", "must be finite");
  require(path_loss.reference_distance > 0.0 && std::isfinite(path_loss.reference_distance),
          "path_loss.d0", "must be positive");
  require(path_loss.exponent > 0.0 && std::isfinite(path_loss.exponent), "path_loss.alpha",
          "must be positive");
  require(std::isfinite(threshold_db), "threshold_db", "must be finite");
  require(grid_nx >= 2, "grid.nx", "must be at least 2");
  require(grid_ny >= 2, "grid.ny", "must be at least 2");
}

double ScenarioConfig::effective_buffer_margin() const {
  if (buffer_margin) return *buffer_margin;
  if (tier1.intensity > 0.0) return 3.0 / std::sqrt(tier1.intensity);
  const double nu = theoretical_tier_intensities(*this)[3];
  if (nu > 0.0) return 3.0 / std::sqrt(nu);
  return 0.0;
}

double ScenarioConfig::tier_power_dbm(int tier) const {
  switch (tier) {
    case 1: return tier1.power_dbm;
    case 2: return tier2.power_dbm;
    case 3: return tier3.power_dbm;
    case 4: return tier4.power_dbm;
    default: throw ParameterError("tier id must be 1..4");
  }
}

PointSet NetworkRealization::reported(int id) const {
  return restrict_to(tier(id).points, scenario.window);
}

NetworkRealization build_realization(const ScenarioConfig& scenario, std::uint64_t seed) {
  scenario.validate();
  NetworkRealization real;
  real.scenario = scenario;
  real.seed = seed;
  real.sampling_window = scenario.sampling_window();
  const Window& w = real.sampling_window;
  for (int t = 1; t <= kTierCount; ++t) {
    TierLayer& layer = real.tiers[static_cast<std::size_t>(t - 1)];
    layer.tier = t;
    layer.power_dbm = scenario.tier_power_dbm(t);
    layer.points.tier = t;
  }

  RandomStream tier1_stream(seed, "tier1");
  if (scenario.tier1.intensity > 0.0) {
    real.tiers[0].points =
        scenario.tier1.variant == Tier1Variant::Ppp
            ? sample_homogeneous_ppp(w, scenario.tier1.intensity, tier1_stream, 1)
            : sample_perturbed_triangular_lattice(w, scenario.tier1.intensity,
                                                  scenario.tier1.perturbation, tier1_stream, 1);
  }

  const bool needs_tessellation = scenario.tier2.mu > 0.0 || scenario.tier3.retain_prob > 0.0;
  try {
    if (real.tiers[0].points.size() >= 2) {
      real.tessellation = compute_voronoi(real.tiers[0].points, w);
    }
  } catch (const DegenerateInputError&) {
    real.tessellation.reset();
  }
  if (needs_tessellation && !real.tessellation) {
    throw DegenerateScenarioError(
        "tiers 2/3 are defined on the tier-1 tessellation, but tier 1 has fewer than two sites");
  }

  RandomStream tier2_stream(seed, "tier2");
  if (scenario.tier2.mu > 0.0) {
    real.tiers[1].points = sample_ppp_on_edges(*real.tessellation, scenario.tier2.mu, w,
                                               tier2_stream, 2);
  }

  RandomStream tier3_stream(seed, "tier3");
  if (scenario.tier3.retain_prob > 0.0) {
    real.tiers[2].points =
        thin(interior_vertices(*real.tessellation, w), scenario.tier3.retain_prob, tier3_stream);
  }

  RandomStream tier4_stream(seed, "tier4");
  if (scenario.tier4.variant == Tier4Variant::Ppp) {
    if (scenario.tier4.intensity > 0.0) {
      real.tiers[3].points = sample_homogeneous_ppp(w, scenario.tier4.intensity, tier4_stream, 4);
    }
  } else {
    ClusterRealization cluster = sample_matern_cluster(w, scenario.tier4.cluster, tier4_stream, 4);
    real.tiers[3].points = std::move(cluster.daughters);
    real.cluster_parents = std::move(cluster.parents);
  }
  return real;
}

std::array<double, kTierCount> theoretical_tier_intensities(const ScenarioConfig& scenario) {
  const double lambda = scenario.tier1.intensity;
  const double nu = scenario.tier4.variant == Tier4Variant::Ppp
                        ? scenario.tier4.intensity
                        : scenario.tier4.cluster.intensity();
  return {lambda, 2.0 * scenario.tier2.mu * std::sqrt(lambda),
          2.0 * scenario.tier3.retain_prob * lambda, nu};
}

double theoretical_total_density(const ScenarioConfig& scenario) {
  double total = 0.0;
  for (double v : theoretical_tier_intensities(scenario)) total += v;
  return total;
}

double expected_power_density(const ScenarioConfig& scenario) {
  const auto intensities = theoretical_tier_intensities(scenario);
  double total = 0.0;
  for (int t = 1; t <= kTierCount; ++t) {
    total += intensities[static_cast<std::size_t>(t - 1)] *
             dbm_to_watts(scenario.tier_power_dbm(t));
  }
  return total;
}

double realized_total_power(const NetworkRealization& realization) {
  double total = 0.0;
  for (const TierLayer& layer : realization.tiers) {
    std::size_t count = 0;
    for (const Point& p : layer.points.points) {
      if (realization.scenario.window.contains(p)) ++count;
    }
    total += static_cast<double>(count) * dbm_to_watts(layer.power_dbm);
  }
  return total;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig3_tiers13", "fig_lattice",
                                              "fig_cluster"};
  return names;
}

ScenarioConfig make_preset(const std::string& name) {
  ScenarioConfig s;
  s.name = name;
  if (name == "fig1") {
    s.tier1.intensity = 0.2;
    s.tier2.mu = 1.0;
    s.tier3.retain_prob = 1.0;
    s.tier4.intensity = 1.0;
  } else if (name == "fig2") {
    s.tier1.intensity = 0.4;
    s.tier4.intensity = 1.0;
  } else if (name == "fig3_tiers13") {
    s.tier1.intensity = 0.25;
    s.tier3.retain_prob = 1.0;
    s.tier3.power_dbm = 33.0;
  } else if (name == "fig_lattice") {
    s.tier1.variant = Tier1Variant::PerturbedLattice;
    s.tier1.intensity = 0.1;
    s.tier1.perturbation.variance = 0.04;
    s.tier2.mu = 1.0;
  } else if (name == "fig_cluster") {
    s.tier1.intensity = 0.1;
    s.tier4.variant = Tier4Variant::MaternCluster;
    s.tier4.cluster = {1.0 / 20.0, 10.0, 1.0};
    s.tier4.power_dbm = 26.0;
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ParameterError("unknown preset '" + name + "'; valid presets: " + valid);
  }
  return s;
}

}  // namespace hetnet
