#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rggclique {

enum class ErrorKind {
  invalid_argument,
  budget_exceeded,
  infeasible,
  parse,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::invalid_argument, what);
}

// Raised by the exact clique search when it visits more nodes than allowed.
// Carries the edge being processed when one is known (u == v == UINT32_MAX
// otherwise).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t budget, std::uint32_t u = UINT32_MAX,
                 std::uint32_t v = UINT32_MAX)
      : Error(ErrorKind::budget_exceeded, message(budget, u, v)),
        budget_(budget),
        u_(u),
        v_(v) {}

  std::uint64_t budget() const noexcept { return budget_; }
  bool has_edge() const noexcept { return u_ != UINT32_MAX; }
  std::uint32_t u() const noexcept { return u_; }
  std::uint32_t v() const noexcept { return v_; }

 private:
  static std::string message(std::uint64_t budget, std::uint32_t u,
                             std::uint32_t v) {
    std::string m = "clique search exceeded budget of " +
                    std::to_string(budget) + " nodes";
    if (u != UINT32_MAX) {
      m += " on edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
    }
    return m;
  }

  std::uint64_t budget_;
  std::uint32_t u_;
  std::uint32_t v_;
};

}  // namespace rggclique
