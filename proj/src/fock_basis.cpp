#include "ncqm/fock_basis.hpp"

#include <stdexcept>

namespace ncqm {

FockBasis::FockBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("FockBasis: n_max must be >= 0");
  states_.reserve(dimension_for(n_max));
  for (int level = 0; level <= n_max; ++level) {
    for (int n1 = level; n1 >= 0; --n1) {
      states_.push_back(FockState{n1, level - n1});
    }
  }
}

int FockBasis::index_of(int n1, int n2) const {
  if (!contains(n1, n2)) throw std::out_of_range("FockBasis::index_of: state outside truncation");
  int level = n1 + n2;
  return level_offset(level) + (level - n1);
}

bool FockBasis::contains(int n1, int n2) const {
  return n1 >= 0 && n2 >= 0 && n1 + n2 <= n_max_;
}

}  // namespace ncqm
