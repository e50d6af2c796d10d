#include <doctest.h>

#include "ncqm/fock_basis.hpp"

using namespace ncqm;

TEST_SUITE("fock_basis") {
  TEST_CASE("dimension is (n_max+1)(n_max+2)/2") {
    for (int n_max : {0, 1, 5, 30}) {
      FockBasis b(n_max);
      CHECK(b.dimension() == (n_max + 1) * (n_max + 2) / 2);
    }
  }

  TEST_CASE("states grouped by level, each level N holds N+1 states") {
    FockBasis b(7);
    int idx = 0;
    for (int level = 0; level <= 7; ++level) {
      CHECK(FockBasis::level_offset(level) == idx);
      int count = 0;
      while (idx < b.dimension() && b.level_of(idx) == level) {
        ++idx;
        ++count;
      }
      CHECK(count == level + 1);
    }
    CHECK(idx == b.dimension());
  }

  TEST_CASE("within a level n1 descends") {
    FockBasis b(4);
    for (int level = 0; level <= 4; ++level) {
      for (int k = 0; k < level; ++k) {
        int i = FockBasis::level_offset(level) + k;
        CHECK(b.state(i).n1 == b.state(i + 1).n1 + 1);
      }
    }
  }

  TEST_CASE("index_of round-trips") {
    FockBasis b(9);
    for (int i = 0; i < b.dimension(); ++i) {
      const FockState& s = b.state(i);
      CHECK(b.index_of(s.n1, s.n2) == i);
    }
    CHECK(!b.contains(5, 5));
    CHECK_THROWS_AS((void)b.index_of(10, 0), std::out_of_range);
  }
}
