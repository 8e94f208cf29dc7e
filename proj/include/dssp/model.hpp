#pragma once

#include <string>

namespace dssp {

/// Shift model that fixes the convolution and Fourier basis.
///
///   Difference          (model 3)  T_Q s(A) = s(A \ Q)
///   Union               (model 4)  T_Q s(A) = s(A ∪ Q)
///   SymmetricDifference (model 5)  T_Q s(A) = s(A Δ Q), the Walsh-Hadamard basis
enum class Model : int {
  Difference = 3,
  Union = 4,
  SymmetricDifference = 5,
};

/// Accepts only 3, 4 or 5; anything else is InvalidInput.
Model model_from_int(int value);

inline int model_number(Model m) noexcept { return static_cast<int>(m); }

inline std::string to_string(Model m) { return std::to_string(model_number(m)); }

}  // namespace dssp
