#pragma once

#include <memory>
#include <vector>

namespace ncqm {

/// One two-mode occupation state |n1, n2>.
struct FockState {
  int n1 = 0;
  int n2 = 0;
  int level() const { return n1 + n2; }
};

/// Truncated two-mode Fock basis: all |n1, n2> with n1 + n2 <= n_max,
/// ordered by level N, n1 descending inside a level. Level-diagonal
/// operators are then block diagonal with contiguous (N+1)-sized blocks.
class FockBasis {
 public:
  explicit FockBasis(int n_max);

  int n_max() const { return n_max_; }
  int dimension() const { return int(states_.size()); }
  static int dimension_for(int n_max) { return (n_max + 1) * (n_max + 2) / 2; }

  const FockState& state(int index) const { return states_[index]; }
  const std::vector<FockState>& states() const { return states_; }

  int level_of(int index) const { return states_[index].level(); }
  int index_of(int n1, int n2) const;
  bool contains(int n1, int n2) const;

  // level N occupies indices [level_offset(N), level_offset(N) + N]
  static int level_offset(int level) { return level * (level + 1) / 2; }
  static int level_size(int level) { return level + 1; }

 private:
  int n_max_;
  std::vector<FockState> states_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

}  // namespace ncqm
