#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lazard/schur.hpp"

using namespace lazard;

TEST_CASE("cyclic Z/5 has trivial multiplier on both sides") {
  NilLieRing L = abelian(5, {1});
  MultiplierReport RL = schur_lie(L);
  CHECK(RL.stabilized);
  CHECK(RL.stable.empty());
  // the Z/25 class exists at every finite level but dies under inclusion
  CHECK(RL.level_inv[0] == InvariantFactors{1});
  CHECK(RL.image_inv[0].empty());
  MultiplierReport RG = schur_group(L);
  CHECK(RG.stabilized);
  CHECK(RG.stable.empty());
}

TEST_CASE("rank-2 elementary abelian: only the alternating part survives") {
  NilLieRing L = abelian(5, {1, 1});
  MultiplierReport RL = schur_lie(L);
  CHECK(RL.stabilized);
  CHECK(RL.stable == InvariantFactors{1});  // Z/5
  CHECK(RL.level_inv[0] == InvariantFactors{1, 1, 1});
  MultiplierReport RG = schur_group(L);
  CHECK(RG.stabilized);
  CHECK(RG.stable == InvariantFactors{1});
  CHECK(RG.stabilization_level == RL.stabilization_level);
}

TEST_CASE("stable value does not move when run past the criterion") {
  NilLieRing L = abelian(5, {1, 1});
  MultiplierReport R0 = schur_lie(L);
  MultiplierReport R2 = schur_lie(L, 2);
  CHECK(R2.stabilized);
  CHECK(R2.stable == R0.stable);
  CHECK(R2.stabilization_level == R0.stabilization_level);
  // images computed beyond the stopping point keep the same invariants
  for (size_t i = R0.stabilization_level; i < R2.image_inv.size(); ++i)
    CHECK(R2.image_inv[i] == R0.stable);
}

TEST_CASE("mixed-exponent cyclic Z/25 sanity") {
  NilLieRing L = abelian(5, {2});
  MultiplierReport RL = schur_lie(L);
  CHECK(RL.stabilized);
  CHECK(RL.stable.empty());
}

TEST_CASE("compare on abelian examples") {
  SchurCompare C1 = compare_schur(abelian(5, {1}));
  CHECK(C1.verdict());
  CHECK(C1.lie.stable.empty());
  SchurCompare C2 = compare_schur(abelian(5, {1, 1}));
  CHECK(C2.verdict());
  CHECK(C2.lie.stable == InvariantFactors{1});
  CHECK(C2.squares_commute);
}

TEST_CASE("class bound is a hard guard") {
  // class 2 at p = 3 violates c < p-1
  CHECK_THROWS_WITH_AS(schur_lie(heisenberg(3, 1)),
                       "hypothesis of Theorem C violated: need c < p-1",
                       hypothesis_violation);
  CHECK_THROWS_AS(compare_schur(heisenberg(3, 1)), hypothesis_violation);
}

TEST_CASE("heisenberg(5,1): cross-side equality fixes the value") {
  SchurCompare C = compare_schur(heisenberg(5, 1), 200);
  CHECK(C.lie.stabilized);
  CHECK(C.group.stabilized);
  CHECK(C.stable_equal);
  CHECK(C.squares_commute);
  CHECK(C.verdict());
}
