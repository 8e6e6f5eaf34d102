#include "quesadilla/coo.hpp"

#include <stdexcept>
#include <string>

namespace quesadilla {

void CooTensor::check_valid() const {
  const std::size_t r = dims.size();
  if (r == 0) throw std::invalid_argument("tensor rank must be positive");
  for (std::size_t m = 0; m < r; ++m) {
    if (dims[m] == 0) {
      throw std::invalid_argument("dimension of mode " + std::to_string(m) +
                                  " must be positive");
    }
  }
  if (coords.size() != values.size() * r) {
    throw std::invalid_argument(
        "coordinate storage does not match value count");
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (std::size_t m = 0; m < r; ++m) {
      if (coords[j * r + m] >= dims[m]) {
        throw std::invalid_argument(
            "coordinate out of range in row " + std::to_string(j) + ", mode " +
            std::to_string(m));
      }
    }
  }
}

bool is_sorted_under(const CooTensor& tensor, const Ordering& ord) {
  if (ord.rank() != tensor.rank()) {
    throw std::invalid_argument("ordering rank does not match tensor rank");
  }
  const std::size_t r = tensor.rank();
  const std::uint32_t* crd = tensor.coords.data();
  for (std::size_t j = 1; j < tensor.nnz(); ++j) {
    const std::uint32_t* prev = crd + (j - 1) * r;
    const std::uint32_t* cur = crd + j * r;
    for (Mode m : ord) {
      if (prev[m] != cur[m]) {
        if (prev[m] > cur[m]) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace quesadilla
