#include "darl/prng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "darl/error.hpp"

namespace darl::prng {

namespace {

constexpr std::size_t kShift = 397;
constexpr std::uint32_t kMatrixA = 0x9908b0dfU;
constexpr std::uint32_t kUpperMask = 0x80000000U;
constexpr std::uint32_t kLowerMask = 0x7fffffffU;

void twist(std::array<std::uint32_t, kStateWords>& mt) {
  auto mix = [](std::uint32_t upper, std::uint32_t lower, std::uint32_t far) {
    const std::uint32_t y = (upper & kUpperMask) | (lower & kLowerMask);
    return far ^ (y >> 1) ^ ((y & 1U) ? kMatrixA : 0U);
  };
  std::size_t k = 0;
  for (; k < kStateWords - kShift; ++k) {
    mt[k] = mix(mt[k], mt[k + 1], mt[k + kShift]);
  }
  for (; k < kStateWords - 1; ++k) {
    mt[k] = mix(mt[k], mt[k + 1], mt[k + kShift - kStateWords]);
  }
  mt[kStateWords - 1] = mix(mt[kStateWords - 1], mt[0], mt[kShift - 1]);
}

}  // namespace

bool is_fermat_prime(SeedValue seed) noexcept {
  return std::find(kFermatSeeds.begin(), kFermatSeeds.end(), seed) != kFermatSeeds.end();
}

GeneratorState seed_generator(SeedValue seed) {
  GeneratorState state;
  auto& mt = state.words_;
  mt[0] = seed.value;
  for (std::uint32_t i = 1; i < kStateWords; ++i) {
    mt[i] = 1812433253U * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i;
  }
  state.cursor_ = kStateWords;
  return state;
}

GeneratorState seed_by_array(std::span<const std::uint32_t> key) {
  if (key.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "seed_by_array needs a nonempty key");
  }
  GeneratorState state = seed_generator(SeedValue{19650218U});
  auto& mt = state.words_;

  std::size_t i = 1;
  std::size_t j = 0;
  for (std::size_t k = std::max(kStateWords, key.size()); k > 0; --k) {
    mt[i] = (mt[i] ^ ((mt[i - 1] ^ (mt[i - 1] >> 30)) * 1664525U)) + key[j] +
            static_cast<std::uint32_t>(j);
    ++i;
    ++j;
    if (i >= kStateWords) {
      mt[0] = mt[kStateWords - 1];
      i = 1;
    }
    if (j >= key.size()) j = 0;
  }
  for (std::size_t k = kStateWords - 1; k > 0; --k) {
    mt[i] = (mt[i] ^ ((mt[i - 1] ^ (mt[i - 1] >> 30)) * 1566083941U)) -
            static_cast<std::uint32_t>(i);
    ++i;
    if (i >= kStateWords) {
      mt[0] = mt[kStateWords - 1];
      i = 1;
    }
  }
  mt[0] = 0x80000000U;  // MSB set: nonzero initial state
  state.cursor_ = kStateWords;
  return state;
}

std::uint32_t next_word(GeneratorState& state) {
  if (state.cursor_ >= kStateWords) {
    twist(state.words_);
    state.cursor_ = 0;
  }
  std::uint32_t y = state.words_[state.cursor_++];
  y ^= (y >> 11);
  y ^= (y << 7) & 0x9d2c5680U;
  y ^= (y << 15) & 0xefc60000U;
  y ^= (y >> 18);
  return y;
}

double next_unit(GeneratorState& state) {
  const std::uint32_t a = next_word(state) >> 5;
  const std::uint32_t b = next_word(state) >> 6;
  return (a * 67108864.0 + b) * (1.0 / 9007199254740992.0);
}

std::string_view to_string(SortOrder order) noexcept {
  return order == SortOrder::Ascending ? "ascending" : "descending";
}

SortOrder parse_sort_order(std::string_view text) {
  if (text == "ascending" || text == "asc") return SortOrder::Ascending;
  if (text == "descending" || text == "desc") return SortOrder::Descending;
  throw Error(ErrorCode::ValidationError, "unknown sort order '" + std::string(text) + "'");
}

UniformSeries uniform_series(SeedValue seed, std::size_t n, double t_min, double t_max,
                             SortOrder order, SeedingPolicy seeding) {
  if (n < 2) {
    throw Error(ErrorCode::InsufficientSamples,
                "uniform series needs n >= 2, got " + std::to_string(n));
  }
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min > t_max) {
    throw Error(ErrorCode::InvalidBounds, "uniform series needs finite t_min <= t_max");
  }

  GeneratorState state = seeding(seed);
  const double span = t_max - t_min;

  UniformSeries series{seed, t_min, t_max, order, {}};
  series.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Rounding in t_min + u * span can land on t_max even though u < 1.
    series.values.push_back(std::min(t_min + next_unit(state) * span, t_max));
  }
  if (order == SortOrder::Ascending) {
    std::sort(series.values.begin(), series.values.end());
  } else {
    std::sort(series.values.begin(), series.values.end(), std::greater<>{});
  }
  return series;
}

}  // namespace darl::prng
