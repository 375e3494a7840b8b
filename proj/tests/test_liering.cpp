#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lazard/freelie.hpp"
#include "lazard/liering.hpp"

using namespace lazard;

TEST_CASE("constructors validate") {
  CHECK(validate(abelian(5, {1, 1})).empty());
  CHECK(validate(heisenberg(5, 1)).empty());
  CHECK(validate(heisenberg(3, 2)).empty());
  CHECK(validate(free_nilpotent(2, 2, 5, 1)).empty());
  CHECK(validate(free_nilpotent(2, 3, 5, 1)).empty());
  CHECK(validate(free_nilpotent(2, 4, 5, 1)).empty());
  CHECK(validate(free_nilpotent(3, 3, 7, 1)).empty());
  CHECK(validate(free_nilpotent(2, 3, 5, 2)).empty());
}

TEST_CASE("validate reports violations") {
  NilLieRing L = heisenberg(5, 1);
  L.sc[1][0] = {0, 0, 1};  // same sign as sc[0][1]: breaks antisymmetry
  auto bad = validate(L);
  REQUIRE(!bad.empty());
  CHECK(bad[0].find("antisymmetry") != std::string::npos);

  NilLieRing J = abelian(5, {1, 1, 1, 1});
  // [a,b]=c, [a,c]=d, [b,c]=a: Jacobi on (a,b,c) gives
  // [[a,b],c]+[[b,c],a]+[[c,a],b] = d + 0 + 0 != 0... set it up directly
  J.sc[0][1] = {0, 0, 1, 0};
  J.sc[1][0] = {0, 0, 4, 0};
  J.sc[0][2] = {0, 0, 0, 1};
  J.sc[2][0] = {0, 0, 0, 4};
  auto bad2 = validate(J);
  // [[a,b],c] = [c,c] = 0; [[b,c],a] = 0; [[c,a],b] = [-d, b] = 0 -> actually
  // fine; force a genuine failure instead
  J.sc[1][2] = {1, 0, 0, 0};
  J.sc[2][1] = {4, 0, 0, 0};
  bad2 = validate(J);
  // now [[a,b],c]+[[b,c],a]+[[c,a],b] = 0 + [a,a] + [-d,b] = 0 still; check
  // order compatibility violation separately
  NilLieRing O = abelian(5, {2, 1, 1});
  O.sc[1][2] = {1, 0, 0};  // [b,c] = a with a of order 25, b of order 5
  O.sc[2][1] = {24, 0, 0};
  auto bad3 = validate(O);
  REQUIRE(!bad3.empty());
  CHECK(bad3[0].find("order compatibility") != std::string::npos);
}

TEST_CASE("Jacobi violation is caught") {
  // rank 4 over F_5: [x,y]=z, [x,z]=w, [y,z]=w  -> jacobi(x,y,z):
  // [[x,y],z] + [[y,z],x] + [[z,x],y] = [z,z] + [w,x] + [-w,y] = 0. Use a
  // direct asymmetric poke instead: [x,y]=z, [x,z]=0, [y,z]=0, and
  // [[x,y],w] terms vanish; simplest true violation: [x,y]=z, [z,x]=x.
  NilLieRing L = abelian(5, {1, 1, 1});
  L.sc[0][1] = {0, 0, 1};
  L.sc[1][0] = {0, 0, 4};
  L.sc[2][0] = {1, 0, 0};
  L.sc[0][2] = {4, 0, 0};
  auto bad = validate(L);
  REQUIRE(!bad.empty());
  bool jac = false, nil = false;
  for (const auto& s : bad) {
    if (s.find("Jacobi") != std::string::npos) jac = true;
    if (s.find("nilpotent") != std::string::npos) nil = true;
  }
  CHECK((jac || nil));
}

TEST_CASE("bracket on heisenberg") {
  NilLieRing H = heisenberg(5, 1);
  Vec x = {1, 0, 0}, y = {0, 1, 0}, z = {0, 0, 1};
  CHECK(H.bracket(x, y) == z);
  CHECK(H.bracket(y, x) == Vec{0, 0, 4});
  // [x+y, x] = -z
  CHECK(H.bracket({1, 1, 0}, x) == Vec{0, 0, 4});
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    Vec u = {(i64)(rng() % 5), (i64)(rng() % 5), (i64)(rng() % 5)};
    CHECK(H.module().is_zero(H.bracket(u, u)));
  }
}

TEST_CASE("Jacobi holds on all element triples, exhaustively, |L| = 125") {
  for (const NilLieRing& L :
       {heisenberg(5, 1), free_nilpotent(2, 2, 5, 1)}) {
    Module M = L.module();
    for (i64 a = 0; a < M.size(); ++a)
      for (i64 b = 0; b < M.size(); ++b)
        for (i64 c = 0; c < M.size(); ++c) {
          Vec u = M.element(a), v = M.element(b), w = M.element(c);
          Vec jac = M.add(M.add(L.bracket(L.bracket(u, v), w),
                                L.bracket(L.bracket(v, w), u)),
                          L.bracket(L.bracket(w, u), v));
          REQUIRE(M.is_zero(jac));
        }
  }
}

TEST_CASE("lower central series and class") {
  CHECK(nilpotency_class(abelian(5, {1, 1})) == 1);
  NilLieRing H = heisenberg(5, 1);
  CHECK(nilpotency_class(H) == 2);
  auto s = lower_central_series(H);
  CHECK(s[1] == Submodule(H.module(), {{0, 0, 1}}));
  CHECK(nilpotency_class(free_nilpotent(2, 3, 5, 1)) == 3);
  CHECK(nilpotency_class(free_nilpotent(2, 4, 7, 1)) == 4);
}

TEST_CASE("free_nilpotent sizes follow Lyndon counts") {
  // #Lyndon words over 2 letters: weights 1,2,3,4 -> 2,1,2,3
  CHECK(free_nilpotent(2, 2, 5, 1).size() == pow_i(5, 3));
  CHECK(free_nilpotent(2, 3, 5, 1).size() == pow_i(5, 5));
  CHECK(free_nilpotent(2, 4, 7, 1).size() == pow_i(7, 8));
}

TEST_CASE("free_nilpotent(2,2) has the heisenberg constants") {
  NilLieRing F = free_nilpotent(2, 2, 5, 1);
  REQUIRE(F.rank() == 3);
  CHECK(F.bracket({1, 0, 0}, {0, 1, 0}) == Vec{0, 0, 1});
  CHECK(F.sc == heisenberg(5, 1).sc);
}

TEST_CASE("closures in heisenberg") {
  NilLieRing H = heisenberg(5, 1);
  Submodule zc = ideal_closure(H, {{0, 0, 1}});
  CHECK(zc.size() == 5);
  Submodule xc = ideal_closure(H, {{1, 0, 0}});
  CHECK(xc.size() == 25);
  CHECK(xc.member({0, 0, 1}));
  CHECK(!xc.member({0, 1, 0}));
  // subring closure of {x} is just <x>
  CHECK(subring_closure(H, {{1, 0, 0}}).size() == 5);
  // subring closure of {x, y} is everything
  CHECK(subring_closure(H, {{1, 0, 0}, {0, 1, 0}}).size() == 125);
  CHECK(is_ideal(H, zc));
  CHECK(is_subring(H, zc));
  Submodule notideal(H.module(), {{1, 0, 0}});
  CHECK(is_subring(H, notideal));
  CHECK(!is_ideal(H, notideal));
}

TEST_CASE("quotients") {
  NilLieRing H = heisenberg(5, 1);
  Submodule z = ideal_closure(H, {{0, 0, 1}});
  QuotientRing Q = quotient_ring(H, z);
  CHECK(Q.ring.size() == 25);
  CHECK(validate(Q.ring).empty());
  CHECK(nilpotency_class(Q.ring) == 1);  // abelian: induced constants vanish
  CHECK_THROWS_AS(quotient_ring(H, Submodule(H.module(), {{1, 0, 0}})),
                  std::domain_error);
  // L / gamma_2 is abelian of the right order, on several rings
  for (const NilLieRing& L : {heisenberg(3, 2), free_nilpotent(2, 3, 5, 1)}) {
    auto s = lower_central_series(L);
    QuotientRing A = quotient_ring(L, s[1]);
    CHECK(validate(A.ring).empty());
    CHECK(nilpotency_class(A.ring) == 1);
    CHECK(A.ring.size() == L.size() / s[1].size());
  }
}

TEST_CASE("direct sums") {
  NilLieRing S = direct_sum(heisenberg(5, 1), abelian(5, {2}));
  CHECK(validate(S).empty());
  CHECK(S.size() == 125 * 25);
  CHECK(nilpotency_class(S) == 2);
  // cross brackets vanish
  CHECK(S.module().is_zero(S.bracket({1, 0, 0, 0}, {0, 0, 0, 1})));
}
