#ifndef DTPPO_RNG_HPP
#define DTPPO_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace dtppo {

// Seeded random stream with a counter-based split for deriving independent
// child streams. All mappings from raw engine output to doubles are written
// out explicitly so a given seed reproduces the same draws on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // uniform in [0, 1)
  double next_unit();

  // uniform in [lo, hi)
  double uniform(double lo, double hi);

  // standard normal (Box-Muller, spare cached)
  double normal();

  // uniform integer in [0, n)
  int uniform_int(int n);

  // index sampled proportionally to probs (assumed to sum to ~1)
  int categorical(std::span<const double> probs);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      std::swap(items[i], items[uniform_int(i + 1)]);
    }
  }

  // independent stream derived from (this stream's seed, index)
  Rng child(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer, used for seed mixing.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dtppo

#endif  // DTPPO_RNG_HPP
