#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace halluc {

/// SplitMix64 finalizer. Bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive combination of 64-bit words into one well-mixed word.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// 128-bit key identifying one Monte Carlo trial.
struct TrialKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const TrialKey&, const TrialKey&) = default;
};

/// Key for trial `trial_index` at sample size `n`. Independent of the order in
/// which trials are executed.
TrialKey derive_trial_key(std::uint64_t base_seed, std::uint64_t trial_index, std::uint64_t n);

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator: output block i is philox(counter = (i, stream), key = seed).
/// Satisfies UniformRandomBitGenerator, but prefer the member helpers: the
/// standard distributions are implementation-defined and would break
/// cross-platform reproducibility.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// k distinct values from [0, population), sorted ascending (Floyd's algorithm).
  std::vector<std::uint64_t> distinct(std::uint64_t population, std::uint64_t k);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_ = 4;
};

}  // namespace halluc
