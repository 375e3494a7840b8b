#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lazard/fiveterm.hpp"

using namespace lazard;

namespace {

// composes two maps and checks the result is zero mod p
bool composite_zero(const Mat& first, const Mat& second, i64 p) {
  for (int j = 0; j < first.cols; ++j)
    for (int i = 0; i < second.rows; ++i) {
      i64 acc = 0;
      for (int k = 0; k < second.cols; ++k)
        acc += second.at(i, k) * first.at(k, j);
      if (mod_norm(acc, p) != 0) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("h1 of exp(heisenberg) has rank 2, killing the derived part") {
  NilLieRing L = heisenberg(5, 1);
  SubquotientMap D = h1_hom(L);
  CHECK(D.invariants() == InvariantFactors{1, 1});
  // the center dies under every character
  CHECK(D.project({0, 0, 1}) == Vec{0, 0});
}

TEST_CASE("h1_fixed of the center of heisenberg has rank 1") {
  NilLieRing L = heisenberg(5, 1);
  std::vector<Vec> center = {{0, 0, 1}};
  SubquotientMap D = h1_fixed(L, center);
  CHECK(D.invariants() == InvariantFactors{1});
}

TEST_CASE("h1_fixed of a direct factor of (Z/5)^2") {
  NilLieRing L = abelian(5, {1, 1});
  SubquotientMap D = h1_fixed(L, {{1, 0}});
  CHECK(D.invariants() == InvariantFactors{1});
}

TEST_CASE("h1_fixed refuses non-ideals") {
  NilLieRing L = heisenberg(5, 1);
  // the line through the first generator is not an ideal: [e1,e2]=e3
  CHECK_THROWS_AS(h1_fixed(L, {{1, 0, 0}}), std::domain_error);
}

TEST_CASE("transgression of the identity character of the center") {
  NilLieRing L = heisenberg(5, 1);
  std::vector<Vec> center = {{0, 0, 1}};
  Module Lm = L.module();
  std::vector<i64> f(Lm.size(), 0);
  for (i64 z = 0; z < 5; ++z) f[Lm.index_of({0, 0, z})] = z;
  // group side: the class of 1 -> Z/5 -> G -> (Z/5)^2 -> 1 is not split
  GroupCocycle2 c = transgress_group(L, center, f);
  NilLieRing Q = abelian(5, {1, 1});
  LieTriple TQ;
  TQ.L = Q;
  TQ.M = Module{5, {1}};
  TQ.psi.assign(2, hom_zero(TQ.M, TQ.M));
  GroupH2 HG(exp_triple(TQ));
  Vec cc = HG.class_coords(c);
  bool nonzero = false;
  for (i64 v : cc) nonzero |= (v != 0);
  CHECK(nonzero);
  // Lie side agrees after transport
  LieFactorSystem s = transgress_lie(L, center, f);
  LieH2 HL(TQ);
  Vec cl = HL.class_coords(s);
  nonzero = false;
  for (i64 v : cl) nonzero |= (v != 0);
  CHECK(nonzero);
  CHECK(HL.class_coords(transport_h2_back(TQ, c)) == cl);
}

TEST_CASE("zero character transgresses to the split class") {
  NilLieRing L = heisenberg(5, 1);
  std::vector<Vec> center = {{0, 0, 1}};
  std::vector<i64> f(L.size(), 0);
  GroupCocycle2 c = transgress_group(L, center, f);
  for (const Vec& v : c.f) CHECK(v == Vec{0});
}

TEST_CASE("abelian direct factor transgresses to the split class") {
  NilLieRing L = abelian(5, {1, 1});
  Module Lm = L.module();
  std::vector<i64> f(Lm.size(), 0);
  for (i64 m = 0; m < 5; ++m) f[Lm.index_of({m, 0})] = m;
  GroupCocycle2 c = transgress_group(L, {{1, 0}}, f);
  for (const Vec& v : c.f) CHECK(v == Vec{0});
}

TEST_CASE("five-term for (exp(heisenberg), center)") {
  NilLieRing L = heisenberg(5, 1);
  FiveTermReport R = five_term_verify(L, {{0, 0, 1}});
  CHECK(R.verdict());
  CHECK(R.carriers_match);
  CHECK(R.injective_start);
  for (bool b : R.lie_exact) CHECK(b);
  for (bool b : R.group_exact) CHECK(b);
  CHECK(R.squares_commute);
  CHECK(R.lie_inv == R.group_inv);
  // restriction H^1(G) -> H^1(N)^{G/N} is the zero map here
  const Mat& rest = R.group_maps[1];
  for (int i = 0; i < rest.rows; ++i)
    for (int j = 0; j < rest.cols; ++j) CHECK(rest.at(i, j) == 0);
  // hence transgression is injective
  CHECK(Submodule(Module{5, std::vector<int>((int)R.group_maps[2].cols, 1)},
                  right_kernel(R.group_maps[2], 5))
            .is_zero());
  // composites of consecutive maps vanish (brute-force exactness half)
  for (int k = 0; k + 1 < 4; ++k) {
    CHECK(composite_zero(R.lie_maps[k], R.lie_maps[k + 1], 5));
    CHECK(composite_zero(R.group_maps[k], R.group_maps[k + 1], 5));
  }
}

TEST_CASE("five-term for ((Z/5)^2, direct factor)") {
  NilLieRing L = abelian(5, {1, 1});
  FiveTermReport R = five_term_verify(L, {{1, 0}});
  CHECK(R.verdict());
  // restriction is surjective: H^1(N) has rank 1 and some character of G
  // restricts onto it
  Module C{5, std::vector<int>((int)R.group_maps[1].rows, 1)};
  std::vector<Vec> cols;
  for (int j = 0; j < R.group_maps[1].cols; ++j) {
    Vec v(R.group_maps[1].rows);
    for (int i = 0; i < R.group_maps[1].rows; ++i)
      v[i] = R.group_maps[1].at(i, j);
    cols.push_back(v);
  }
  CHECK(Submodule(C, cols).size() == C.size());
}

TEST_CASE("degenerate pair (G, G)") {
  NilLieRing L = heisenberg(5, 1);
  std::vector<Vec> all = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  FiveTermReport R = five_term_verify(L, all);
  CHECK(R.verdict());
  CHECK(R.lie_inv[0].empty());  // H^1(G/N) = 0
  CHECK(R.lie_inv[3].empty());  // H^2(G/N) = 0
}

TEST_CASE("class bound guard") {
  CHECK_THROWS_WITH_AS(
      five_term_verify(heisenberg(3, 1), {{0, 0, 1}}),
      "hypothesis of the five-term proposition violated: need c < p-1",
      hypothesis_violation);
}
