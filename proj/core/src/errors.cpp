#include "sicpovm/errors.hpp"

namespace sicpovm {

RejectedBasisError::RejectedBasisError(const std::string& what, double unitarity_deviation,
                                       double orthogonality_deviation)
    : std::runtime_error(what),
      unitarity_deviation_(unitarity_deviation),
      orthogonality_deviation_(orthogonality_deviation) {}

}  // namespace sicpovm
