#ifndef PRFAUTH_SODIUM_INIT_HPP
#define PRFAUTH_SODIUM_INIT_HPP

#include <sodium.h>

#include <stdexcept>

namespace prfauth::detail {

inline void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium failed to initialize");
}

}  // namespace prfauth::detail

#endif  // PRFAUTH_SODIUM_INIT_HPP
