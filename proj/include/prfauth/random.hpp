#ifndef PRFAUTH_RANDOM_HPP
#define PRFAUTH_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace prfauth {

using Seed = std::array<std::uint8_t, 32>;

/// Seed whose first eight bytes are `value` little-endian, rest zero.
Seed seed_from_u64(std::uint64_t value);

/// Parses either a decimal integer or 64 hex digits. Throws std::invalid_argument.
Seed parse_seed(std::string_view text);

std::string seed_to_hex(const Seed& seed);

/// BLAKE2b keyed by `master` over (label, a, b); distinct inputs give
/// independent-looking outputs.
Seed derive_seed(const Seed& master, std::string_view label, std::uint64_t a, std::uint64_t b = 0);
std::uint64_t derive_key(const Seed& master, std::string_view label, std::uint64_t a, std::uint64_t b = 0);

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 128-bit counter is (block, stream): `stream` names an independent
/// substream (e.g. a Monte Carlo trial index) and `block` advances as output
/// is consumed, so any (key, stream) pair reproduces the same sequence no
/// matter which thread draws it.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;

  Philox4x32(std::uint64_t key, std::uint64_t stream);

  static Block encrypt(Block counter, std::array<std::uint32_t, 2> key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in (0, 1], 53-bit resolution.
  double uniform();
  /// Standard normal by Box-Muller.
  double normal();
  /// +1 or -1 with equal probability.
  int sign();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace prfauth

#endif  // PRFAUTH_RANDOM_HPP
