#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dssp/subset_mask.hpp"

namespace dssp {

/// Malformed input: bad masks, wrong lengths, non-PSD matrices, parse errors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 2^n entries do not fit in addressable memory.
class CapacityError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A coefficient system could not be solved; carries the support that failed.
class RecoveryFailure : public std::runtime_error {
 public:
  RecoveryFailure(const std::string& what, std::vector<SubsetMask> support)
      : std::runtime_error(what), support_(std::move(support)) {}

  const std::vector<SubsetMask>& support() const noexcept { return support_; }

 private:
  std::vector<SubsetMask> support_;
};

/// SSFT+ drew a filter whose frequency response vanishes at a recovered frequency.
class DegenerateFilter : public RecoveryFailure {
 public:
  using RecoveryFailure::RecoveryFailure;
};

/// A ratio whose denominator is zero (e.g. relative error against a zero function).
class UndefinedResult : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dssp
