#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace hetnet {

/// SplitMix64 finalizer. Used for all seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// Seed of realization `index` in a batch started from `base`. Independent of
/// the order in which realizations are executed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Labeled pseudo-random substream.
///
/// The engine is seeded from (seed, label) only, so two streams with the same
/// pair produce the same sequence. Variate generation is implemented here
/// rather than with <random> distributions, whose algorithms are unspecified
/// and differ between standard libraries.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::uint64_t poisson(double mean);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t poisson_inversion(double mean);
  std::uint64_t poisson_ptrs(double mean);

  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace hetnet
