#include "prfauth/random.hpp"

#include <sodium.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sodium_init.hpp"

namespace prfauth {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

Seed seed_from_u64(std::uint64_t value) {
  Seed s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return s;
}

Seed parse_seed(std::string_view text) {
  if (text.size() == 64) {
    Seed s{};
    for (std::size_t i = 0; i < 32; ++i) {
      unsigned v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + 2 * i, text.data() + 2 * i + 2, v, 16);
      if (ec != std::errc{} || ptr != text.data() + 2 * i + 2) {
        throw std::invalid_argument("seed: bad hex digit");
      }
      s[i] = static_cast<std::uint8_t>(v);
    }
    return s;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 10);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("seed: expected a decimal integer or 64 hex digits");
  }
  return seed_from_u64(v);
}

std::string seed_to_hex(const Seed& seed) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : seed) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Seed derive_seed(const Seed& master, std::string_view label, std::uint64_t a, std::uint64_t b) {
  detail::ensure_sodium();
  std::vector<std::uint8_t> msg(label.begin(), label.end());
  msg.push_back(0);
  put_u64(msg, a);
  put_u64(msg, b);
  Seed out{};
  crypto_generichash(out.data(), out.size(), msg.data(), msg.size(), master.data(), master.size());
  return out;
}

std::uint64_t derive_key(const Seed& master, std::string_view label, std::uint64_t a, std::uint64_t b) {
  const Seed s = derive_seed(master, label, a, b);
  std::uint64_t k = 0;
  for (int i = 0; i < 8; ++i) k |= static_cast<std::uint64_t>(s[i]) << (8 * i);
  return k;
}

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)}, stream_(stream) {}

Philox4x32::Block Philox4x32::encrypt(Block ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

void Philox4x32::refill() {
  const Block ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                  static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = encrypt(ctr, key_);
  ++block_;
  used_ = 0;
}

Philox4x32::result_type Philox4x32::operator()() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

double Philox4x32::uniform() {
  const std::uint64_t hi = (*this)() >> 5;  // 27 bits
  const std::uint64_t lo = (*this)() >> 6;  // 26 bits
  return (static_cast<double>((hi << 26) | lo) + 1.0) * 0x1.0p-53;
}

double Philox4x32::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

int Philox4x32::sign() { return ((*this)() & 1u) ? -1 : 1; }

}  // namespace prfauth
