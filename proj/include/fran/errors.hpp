// errors.hpp - Exception types for the delivery-time engine.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fran {

// No finite delivery time exists (e.g. zero fronthaul rate with caches too
// small to hold the library collectively).
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRangeError : std::runtime_error {
  explicit OutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

// Weighted constraint combination whose coefficients would not bound the
// total delivery time.
struct InvalidWeightsError : std::runtime_error {
  explicit InvalidWeightsError(const std::string& what) : std::runtime_error(what) {}
};

// Standalone scheme invoked with less cache than it requires.
struct CacheTooSmallError : std::runtime_error {
  explicit CacheTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

// File-splitting composition whose weighted cache usage exceeds the budget.
struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// A requested fragment is cached nowhere and no fronthaul exists to carry it.
struct UndeliverableError : std::runtime_error {
  explicit UndeliverableError(const std::string& what) : std::runtime_error(what) {}
};

// File size does not make every placement fraction an integer number of bits.
struct IndivisibleLengthError : std::runtime_error {
  IndivisibleLengthError(const std::string& what, long long suggested)
      : std::runtime_error(what), suggested_bits(suggested) {}
  long long suggested_bits;
};

// An edge phase references content whose fronthaul block has not completed.
struct CausalityError : std::runtime_error {
  explicit CausalityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fran
