#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lazard/triples.hpp"

using namespace lazard;

namespace {

Mat matrix(const Module& to, std::initializer_list<i64> vals, int cols) {
  Mat A(to.rank(), cols, hom_modulus(to));
  auto it = vals.begin();
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) A.at(i, j) = mod_norm(*it++, A.mod);
  return A;
}

// heisenberg acting on M = (Z/p)^2 with psi(x) = E12, rest zero
LieTriple jordan_triple(i64 p) {
  LieTriple T;
  T.L = heisenberg(p, 1);
  T.M = Module{p, {1, 1}};
  T.psi = {matrix(T.M, {0, 1, 0, 0}, 2), hom_zero(T.M, T.M),
           hom_zero(T.M, T.M)};
  return T;
}

LieTriple trivial_triple(i64 p) {
  LieTriple T;
  T.L = heisenberg(p, 1);
  T.M = Module{p, {1}};
  T.psi = {hom_zero(T.M, T.M), hom_zero(T.M, T.M), hom_zero(T.M, T.M)};
  return T;
}

// adjoint action of heisenberg on its own coordinate module
LieTriple adjoint_triple(i64 p) {
  LieTriple T;
  T.L = heisenberg(p, 1);
  T.M = T.L.module();
  for (int i = 0; i < 3; ++i) {
    Mat A = hom_zero(T.M, T.M);
    for (int j = 0; j < 3; ++j) {
      Vec ei(3, 0), ej(3, 0);
      ei[i] = 1;
      ej[j] = 1;
      Vec img = T.L.bracket(ei, ej);
      for (int k = 0; k < 3; ++k) A.at(k, j) = img[k];
    }
    T.psi.push_back(A);
  }
  return T;
}

}  // namespace

TEST_CASE("hom helpers on mixed orders") {
  Module a{5, {2, 1}}, b{5, {1}};
  Mat ok = matrix(b, {1, 1}, 2);
  // e0 in a has order 25; its image in Z/5 must be killed by 25, which
  // holds automatically mod 5
  CHECK(hom_valid(a, b, ok));
  Mat bad = matrix(a, {1, 0}, 1);
  // e0 in b has order 5 but maps to an order-25 element
  CHECK(!hom_valid(b, a, bad));
  Mat good = matrix(a, {5, 0}, 1);
  CHECK(hom_valid(b, a, good));
  CHECK(hom_apply(b, a, good, {3}) == Vec{15, 0});
}

TEST_CASE("endo exp/log are inverse on nilpotents") {
  Module m{5, {2, 2, 2}};
  Mat N = hom_zero(m, m);
  N.at(0, 1) = 3;
  N.at(1, 2) = 7;
  Mat A = endo_exp(m, 5, N);
  CHECK(hom_equal(m, m, endo_log(m, 5, A), N));
  // E12 over Z/25: exp = I + E12
  Mat E(3, 3, 25);
  E.at(0, 1) = 1;
  Mat X = endo_exp(m, 5, E);
  Mat want = hom_identity(m);
  want.at(0, 1) = 1;
  CHECK(hom_equal(m, m, X, want));
}

TEST_CASE("endo exp rejects non-nilpotent input") {
  Module m{3, {1, 1, 1}};
  Mat N = hom_identity(m);  // not nilpotent
  CHECK_THROWS_AS(endo_exp(m, 3, N), hypothesis_violation);
}

TEST_CASE("lie triple validation") {
  CHECK(validate(jordan_triple(5)).empty());
  CHECK(validate(trivial_triple(5)).empty());
  CHECK(validate(adjoint_triple(5)).empty());
  // break bracket compatibility: psi(y) = E21 makes [psi(x),psi(y)] != 0
  // = psi(z)
  LieTriple T = jordan_triple(5);
  T.psi[1] = matrix(T.M, {0, 0, 1, 0}, 2);
  CHECK(!validate(T).empty());
}

TEST_CASE("action length") {
  CHECK(action_length(trivial_triple(5)) == 1);
  CHECK(action_length(jordan_triple(5)) == 2);
  LieTriple T0 = trivial_triple(5);
  T0.M = Module{5, {}};
  T0.psi = {hom_zero(T0.M, T0.M), hom_zero(T0.M, T0.M),
            hom_zero(T0.M, T0.M)};
  CHECK(action_length(T0) == 0);
  // full Jordan block of size 3
  LieTriple J = jordan_triple(5);
  J.M = Module{5, {1, 1, 1}};
  J.psi = {matrix(J.M, {0, 1, 0, 0, 0, 1, 0, 0, 0}, 3), hom_zero(J.M, J.M),
           hom_zero(J.M, J.M)};
  CHECK(validate(J).empty());
  CHECK(action_length(J) == 3);
}

TEST_CASE("exp_triple basics") {
  LieTriple T = jordan_triple(5);
  GroupTriple E = exp_triple(T);
  CHECK(validate(E).empty());
  // phi(x) = I + E12
  Mat want = hom_identity(T.M);
  want.at(0, 1) = 1;
  CHECK(hom_equal(T.M, T.M, E.phi_of({1, 0, 0}), want));
  // trivial action -> phi == id everywhere
  GroupTriple Et = exp_triple(trivial_triple(5));
  for (const Mat& A : Et.phi)
    CHECK(hom_equal(Et.M, Et.M, A, hom_identity(Et.M)));
  // adjoint action exponentiates to a valid group triple
  CHECK(validate(exp_triple(adjoint_triple(5))).empty());
}

TEST_CASE("exp/log round trip on a zoo of triples (object part)") {
  std::vector<LieTriple> zoo = {jordan_triple(5), trivial_triple(5),
                                adjoint_triple(5), jordan_triple(7),
                                adjoint_triple(7)};
  // mixed-order module triple
  LieTriple mixed;
  mixed.L = heisenberg(5, 2);
  mixed.M = Module{5, {2, 1}};
  Mat N = hom_zero(mixed.M, mixed.M);
  N.at(0, 1) = 5;  // maps order-5 generator into 5*(Z/25): well-defined
  mixed.psi = {N, hom_zero(mixed.M, mixed.M), hom_zero(mixed.M, mixed.M)};
  zoo.push_back(mixed);
  for (const LieTriple& T : zoo) {
    REQUIRE(validate(T).empty());
    GroupTriple E = exp_triple(T);
    REQUIRE(validate(E).empty());
    LieTriple back = log_triple(E);
    CHECK(back.L.sc == T.L.sc);
    REQUIRE(back.psi.size() == T.psi.size());
    for (size_t i = 0; i < T.psi.size(); ++i)
      CHECK(hom_equal(T.M, T.M, back.psi[i], T.psi[i]));
    // Exp o Log on the group side
    GroupTriple E2 = exp_triple(back);
    for (i64 g = 0; g < E.G.size(); ++g)
      CHECK(hom_equal(E.M, E.M, E.phi[g], E2.phi[g]));
  }
}

TEST_CASE("nilpotency guards on triples") {
  // class-3 ring at p = 3: exp_triple must refuse
  LieTriple T;
  T.L = free_nilpotent(2, 3, 3, 1);
  T.M = Module{3, {1}};
  T.psi.assign(T.L.rank(), hom_zero(T.M, T.M));
  CHECK_THROWS_AS(exp_triple(T), hypothesis_violation);
  // action length 3 at p = 3: exp_triple must refuse
  LieTriple J;
  J.L = abelian(3, {1});
  J.M = Module{3, {1, 1, 1}};
  Mat N = hom_zero(J.M, J.M);
  N.at(0, 1) = 1;
  N.at(1, 2) = 1;
  J.psi = {N};
  REQUIRE(validate(J).empty());
  REQUIRE(action_length(J) == 3);
  CHECK_THROWS_AS(exp_triple(J), hypothesis_violation);
}

TEST_CASE("action chains are preserved by exp (length and terms)") {
  for (const LieTriple& T :
       {jordan_triple(5), adjoint_triple(5), adjoint_triple(7)}) {
    GroupTriple E = exp_triple(T);
    auto lc = action_chain(T);
    auto gc = action_chain(E);
    REQUIRE(lc.size() == gc.size());
    for (size_t i = 0; i < lc.size(); ++i) CHECK(lc[i] == gc[i]);
    CHECK(action_length(T) == action_length(E));
  }
}

TEST_CASE("unipotence bounds hold pointwise (nilpotency of the movers)") {
  for (const LieTriple& T : {jordan_triple(5), adjoint_triple(5)}) {
    int d = action_length(T);
    GroupTriple E = exp_triple(T);
    Module M = T.M;
    for (i64 g = 0; g < E.G.size(); ++g) {
      Mat N = E.phi[g] - hom_identity(M);
      Mat pw = hom_identity(M);
      for (int k = 0; k < d; ++k) pw = hom_compose(M, M, M, pw, N);
      CHECK(hom_is_zero(M, M, pw));
    }
    for (i64 a = 0; a < T.L.size(); ++a) {
      Mat N = T.psi_of(T.L.module().element(a));
      Mat pw = hom_identity(M);
      for (int k = 0; k < d; ++k) pw = hom_compose(M, M, M, pw, N);
      CHECK(hom_is_zero(M, M, pw));
    }
  }
}

TEST_CASE("morphisms: identity, quotient, composition, violations") {
  LieTriple T = adjoint_triple(5);
  TripleMorphism id = identity_morphism(T.L.module(), T.M);
  CHECK(check_morphism(T, T, id).empty());

  // T2: heisenberg/<z> (abelian rank 2) acting trivially on M1; morphism
  // T -> T2 with alpha the section of the quotient... alpha goes G2 -> G1:
  // embed the abelian ring on {x, y} as coordinates, but that is not a
  // ring hom unless brackets vanish; use the trivial alpha instead
  LieTriple T2;
  T2.L = abelian(5, {1, 1});
  T2.M = T.M;
  T2.psi = {hom_zero(T2.M, T2.M), hom_zero(T2.M, T2.M)};
  TripleMorphism m;
  m.alpha = Mat(3, 2, 5);  // zero map L2 -> L1
  m.beta = hom_identity(T.M);
  CHECK(check_morphism(T, T2, m).empty());

  // non-equivariant beta: beta = id but T2 has a nontrivial action that
  // T's alpha-pullback (zero) cannot match
  LieTriple T3 = T2;
  Mat N = hom_zero(T3.M, T3.M);
  N.at(0, 2) = 1;
  T3.psi[0] = N;
  REQUIRE(validate(T3).empty());
  auto bad = check_morphism(T, T3, m);
  REQUIRE(!bad.empty());
  CHECK(bad.front().find("equivariance") != std::string::npos);

  // composition of identities is the identity
  TripleMorphism c = compose(id, id);
  CHECK(c.alpha == id.alpha);
  CHECK(c.beta == id.beta);
}

TEST_CASE("functor laws on morphisms") {
  LieTriple T = adjoint_triple(5);
  GroupTriple E = exp_triple(T);
  TripleMorphism id = identity_morphism(T.L.module(), T.M);
  // Exp(id) = id and it is a valid group-triple morphism
  TripleMorphism eid = exp_morphism(E, E, id);
  CHECK(eid.alpha == id.alpha);
  // scaling endomorphism of the triple: alpha = 2*id on L, beta = matching
  // scaling... the adjoint action needs beta compatible; use alpha = id,
  // beta = id composed with itself to exercise composition transport
  TripleMorphism f = id, g = id;
  TripleMorphism fg = compose(f, g);
  TripleMorphism efg = exp_morphism(E, E, fg);
  TripleMorphism ef = exp_morphism(E, E, f), eg = exp_morphism(E, E, g);
  TripleMorphism comp = compose(ef, eg);
  CHECK(efg.alpha == comp.alpha);
  CHECK(efg.beta == comp.beta);
  // a non-morphism is rejected by exp_morphism
  TripleMorphism badm;
  badm.alpha = Mat(3, 3, 5);
  badm.alpha.at(0, 0) = 1;  // kills y,z but keeps x: not a ring hom here?
  badm.beta = hom_identity(T.M);
  // alpha(x)=x, alpha(y)=0 -> alpha[x,y]=0 but [alpha x, alpha y]=0: still a
  // hom; equivariance fails though since beta = id and psi(alpha(y))=0
  CHECK_THROWS_AS(exp_morphism(E, E, badm), std::domain_error);
}
