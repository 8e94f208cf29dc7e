#include "dssp/model.hpp"

#include "dssp/errors.hpp"

namespace dssp {

Model model_from_int(int value) {
  switch (value) {
    case 3: return Model::Difference;
    case 4: return Model::Union;
    case 5: return Model::SymmetricDifference;
    default: throw InvalidInput("model must be 3, 4 or 5, got " + std::to_string(value));
  }
}

}  // namespace dssp
