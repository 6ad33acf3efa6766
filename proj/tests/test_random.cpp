#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "prfauth/random.hpp"

using namespace prfauth;

TEST_CASE("Philox4x32-10 known answers") {
  // Random123 kat_vectors.
  using B = Philox4x32::Block;
  CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("generator stream layout") {
  Philox4x32 g(0, 0);
  const auto first = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
  for (std::uint32_t x : first) CHECK(g() == x);
  const auto second = Philox4x32::encrypt({1, 0, 0, 0}, {0, 0});
  CHECK(g() == second[0]);

  Philox4x32 s(0x0000000500000007ull, 0x0000000900000003ull);
  const auto block = Philox4x32::encrypt({0, 0, 3, 9}, {7, 5});
  CHECK(s() == block[0]);
}

TEST_CASE("substreams are reproducible and distinct") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a();
    CHECK(x == b());
    differ_c |= x != c();
    differ_d |= x != d();
  }
  CHECK(differ_c);
  CHECK(differ_d);
}

TEST_CASE("uniform, normal and sign moments") {
  Philox4x32 g(1, 2);
  const int n = 400000;
  double su = 0, sn = 0, sn2 = 0, ss = 0;
  double umin = 1.0;
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform();
    CHECK_FALSE(u <= 0.0);
    CHECK_FALSE(u > 1.0);
    umin = std::fmin(umin, u);
    su += u;
    const double z = g.normal();
    sn += z;
    sn2 += z * z;
    const int s = g.sign();
    CHECK((s == 1 || s == -1));
    ss += s;
  }
  CHECK(std::fabs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(std::fabs(sn / n) < 5 / std::sqrt(n));
  CHECK(std::fabs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
  CHECK(std::fabs(ss / n) < 5 / std::sqrt(n));
}

TEST_CASE("seed parsing") {
  const Seed s = parse_seed("258");
  CHECK(s[0] == 2);
  CHECK(s[1] == 1);
  CHECK(s[2] == 0);
  CHECK(s == seed_from_u64(258));
  const std::string hex = seed_to_hex(s);
  CHECK(hex.size() == 64);
  CHECK(hex.substr(0, 4) == "0201");
  CHECK(parse_seed(hex) == s);
  CHECK(parse_seed("18446744073709551615") == seed_from_u64(~0ull));
  CHECK_THROWS_AS(parse_seed(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed("12x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed("18446744073709551616"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed(std::string(63, 'a')), std::invalid_argument);
}

TEST_CASE("seed derivation") {
  const Seed m = seed_from_u64(1);
  CHECK(derive_seed(m, "x", 1, 2) == derive_seed(m, "x", 1, 2));
  std::set<Seed> seen{derive_seed(m, "x", 1, 2), derive_seed(m, "y", 1, 2), derive_seed(m, "x", 2, 1),
                      derive_seed(m, "x", 1, 3), derive_seed(seed_from_u64(2), "x", 1, 2)};
  CHECK(seen.size() == 5);
  CHECK(derive_key(m, "x", 1) == derive_key(m, "x", 1));
  CHECK(derive_key(m, "x", 1) != derive_key(m, "x", 2));
}
