#pragma once

// MT19937 generator and bounded uniform series.
//
// The generator follows the reference implementation (mt19937ar): seeding
// by the init_genrand recurrence or init_by_array, the standard twist, and
// the standard tempering. Output is bit-identical to std::mt19937 for the
// same integer seed.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace darl::prng {

inline constexpr std::size_t kStateWords = 624;

/// A generator seed.
struct SeedValue {
  std::uint32_t value = 0;

  constexpr SeedValue() = default;
  constexpr explicit SeedValue(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(SeedValue, SeedValue) = default;
};

/// The five known Fermat primes, in increasing order.
inline constexpr std::array<SeedValue, 5> kFermatSeeds{
    SeedValue{3}, SeedValue{5}, SeedValue{17}, SeedValue{257}, SeedValue{65537}};

bool is_fermat_prime(SeedValue seed) noexcept;

class GeneratorState {
 public:
  const std::array<std::uint32_t, kStateWords>& words() const noexcept { return words_; }
  /// Index of the next word to temper; kStateWords means a twist is due.
  std::size_t cursor() const noexcept { return cursor_; }

  friend bool operator==(const GeneratorState&, const GeneratorState&) = default;

 private:
  GeneratorState() = default;

  std::array<std::uint32_t, kStateWords> words_{};
  std::size_t cursor_ = kStateWords;

  friend GeneratorState seed_generator(SeedValue seed);
  friend GeneratorState seed_by_array(std::span<const std::uint32_t> key);
  friend std::uint32_t next_word(GeneratorState& state);
};

/// Reference init_genrand seeding. Every 32-bit value is legal, including 0.
GeneratorState seed_generator(SeedValue seed);

/// Reference init_by_array seeding. `key` must be nonempty.
GeneratorState seed_by_array(std::span<const std::uint32_t> key);

/// Next tempered 32-bit output. Twists the state every 624 draws.
std::uint32_t next_word(GeneratorState& state);

/// Uniform real in [0, 1) with 53-bit resolution, built from two
/// consecutive words a, b as ((a >> 5) * 2^26 + (b >> 6)) / 2^53.
double next_unit(GeneratorState& state);

/// Maps a seed to an initialized generator. Series generation goes through
/// this hook so alternative seeding schemes can be plugged in.
using SeedingPolicy = GeneratorState (*)(SeedValue);

enum class SortOrder { Ascending, Descending };

std::string_view to_string(SortOrder order) noexcept;
/// Accepts "ascending"/"asc" and "descending"/"desc". Throws ValidationError.
SortOrder parse_sort_order(std::string_view text);

struct UniformSeries {
  SeedValue seed;
  double t_min = 0.0;
  double t_max = 0.0;
  SortOrder order = SortOrder::Ascending;
  std::vector<double> values;
};

/// n draws t_min + u * (t_max - t_min), sorted per `order`.
/// Throws InsufficientSamples when n < 2 and InvalidBounds when
/// t_min > t_max (or either bound is not finite).
UniformSeries uniform_series(SeedValue seed, std::size_t n, double t_min, double t_max,
                             SortOrder order, SeedingPolicy seeding = &seed_generator);

}  // namespace darl::prng
