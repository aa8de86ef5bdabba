#include "hetnet/scenario_io.hpp"

#include <fstream>
#include <set>

#include "hetnet/errors.hpp"

namespace hetnet {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const {
    seen_.insert(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "must be a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "must be an integer");
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(field(key), "must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "must be a string");
    return v.get<std::string>();
  }

  std::optional<Reader> child(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Reader(node_.at(key), field(key));
  }

  void reject_unknown() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown field");
    }
  }

 private:
  const json& node_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

}  // namespace

json scenario_to_json(const ScenarioConfig& s) {
  json doc;
  doc["name"] = s.name;
  doc["window"] = {{"x_min", s.window.x_min()},
                   {"x_max", s.window.x_max()},
                   {"y_min", s.window.y_min()},
                   {"y_max", s.window.y_max()}};
  doc["buffer_margin"] = s.buffer_margin ? json(*s.buffer_margin) : json(nullptr);
  doc["tier1"] = {
      {"variant", s.tier1.variant == Tier1Variant::Ppp ? "ppp" : "perturbed_lattice"},
      {"lambda_per_area", s.tier1.intensity},
      {"perturbation_variance", s.tier1.perturbation.variance},
      {"power_dbm", s.tier1.power_dbm}};
  doc["tier2"] = {{"mu_per_length", s.tier2.mu}, {"power_dbm", s.tier2.power_dbm}};
  doc["tier3"] = {{"retain_prob", s.tier3.retain_prob}, {"power_dbm", s.tier3.power_dbm}};
  if (s.tier4.variant == Tier4Variant::Ppp) {
    doc["tier4"] = {
        {"variant", "ppp"}, {"nu_per_area", s.tier4.intensity}, {"power_dbm", s.tier4.power_dbm}};
  } else {
    doc["tier4"] = {{"variant", "matern_cluster"},
                    {"parent_per_area", s.tier4.cluster.parent_intensity},
                    {"mean_points_per_cluster", s.tier4.cluster.mean_points_per_cluster},
                    {"cluster_radius", s.tier4.cluster.cluster_radius},
                    {"power_dbm", s.tier4.power_dbm}};
  }
  doc["path_loss"] = {{"d0", s.path_loss.reference_distance}, {"alpha", s.path_loss.exponent}};
  doc["threshold_db"] = s.threshold_db;
  doc["grid"] = {{"nx", s.grid_nx}, {"ny", s.grid_ny}};
  doc["seed"] = s.seed;
  return doc;
}

ScenarioConfig scenario_from_json(const json& doc) {
  const Reader root(doc, "");
  ScenarioConfig s;
  s.name = root.text("name", s.name);

  if (auto w = root.child("window")) {
    const double x0 = w->number("x_min", 0.0), x1 = w->number("x_max", 20.0);
    const double y0 = w->number("y_min", 0.0), y1 = w->number("y_max", 20.0);
    w->reject_unknown();
    if (!(x1 > x0)) throw ConfigError("window.x_max", "must exceed window.x_min");
    if (!(y1 > y0)) throw ConfigError("window.y_max", "must exceed window.y_min");
    try {
      s.window = Window(x0, x1, y0, y1);
    } catch (const ParameterError& e) {
      throw ConfigError("window", e.what());
    }
  }
  if (root.has("buffer_margin")) s.buffer_margin = root.number("buffer_margin", 0.0);

  if (auto t = root.child("tier1")) {
    const std::string variant = t->text("variant", "ppp");
    if (variant == "ppp") {
      s.tier1.variant = Tier1Variant::Ppp;
    } else if (variant == "perturbed_lattice") {
      s.tier1.variant = Tier1Variant::PerturbedLattice;
    } else {
      throw ConfigError("tier1.variant", "must be \"ppp\" or \"perturbed_lattice\"");
    }
    s.tier1.intensity = t->number("lambda_per_area", 0.0);
    s.tier1.perturbation.variance = t->number("perturbation_variance", 0.0);
    s.tier1.power_dbm = t->number("power_dbm", s.tier1.power_dbm);
    t->reject_unknown();
  }
  if (auto t = root.child("tier2")) {
    s.tier2.mu = t->number("mu_per_length", 0.0);
    s.tier2.power_dbm = t->number("power_dbm", s.tier2.power_dbm);
    t->reject_unknown();
  }
  if (auto t = root.child("tier3")) {
    s.tier3.retain_prob = t->number("retain_prob", 0.0);
    s.tier3.power_dbm = t->number("power_dbm", s.tier3.power_dbm);
    t->reject_unknown();
  }
  if (auto t = root.child("tier4")) {
    const std::string variant = t->text("variant", "ppp");
    if (variant == "ppp") {
      s.tier4.variant = Tier4Variant::Ppp;
      s.tier4.intensity = t->number("nu_per_area", 0.0);
    } else if (variant == "matern_cluster") {
      s.tier4.variant = Tier4Variant::MaternCluster;
      s.tier4.cluster.parent_intensity = t->number("parent_per_area", 0.0);
      s.tier4.cluster.mean_points_per_cluster = t->number("mean_points_per_cluster", 0.0);
      s.tier4.cluster.cluster_radius = t->number("cluster_radius", 1.0);
    } else {
      throw ConfigError("tier4.variant", "must be \"ppp\" or \"matern_cluster\"");
    }
    s.tier4.power_dbm = t->number("power_dbm", s.tier4.power_dbm);
    t->reject_unknown();
  }
  if (auto p = root.child("path_loss")) {
    s.path_loss.reference_distance = p->number("d0", s.path_loss.reference_distance);
    s.path_loss.exponent = p->number("alpha", s.path_loss.exponent);
    p->reject_unknown();
  }
  s.threshold_db = root.number("threshold_db", s.threshold_db);
  if (auto g = root.child("grid")) {
    s.grid_nx = g->integer("nx", s.grid_nx);
    s.grid_ny = g->integer("ny", s.grid_ny);
    g->reject_unknown();
  }
  s.seed = root.unsigned_integer("seed", s.seed);
  root.reject_unknown();
  s.validate();
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace hetnet
