#ifndef PRFAUTH_ERRORS_HPP
#define PRFAUTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prfauth {

// A well-formed request that has no answer: a search bound was hit, a
// requirement cannot be met, or a sweep never reaches its target.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prfauth

#endif  // PRFAUTH_ERRORS_HPP
