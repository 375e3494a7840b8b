#pragma once

// Crossed modules of finite p-groups and of nilpotent Lie rings on explicit
// index carriers, the axiom checker, Exp/Log transport between the two
// kinds, the relative-degree-3 Baer sum, and a brute-force equivalence
// predicate (identity on the kernel and on the base).

#include <string>
#include <vector>

#include "lazard/bchgroup.hpp"
#include "lazard/liering.hpp"
#include "lazard/triples.hpp"

namespace lazard {

// Lie ring on an explicit index set 0..n-1 with materialized operation
// tables; the additive carrier need not be coordinatized.
struct TableLie {
  i64 p = 0;
  int e = 0;  // p^e annihilates every element additively
  i64 n = 0;
  i64 zero = 0;
  std::vector<i64> addt;  // n*n, row-major
  std::vector<i64> negt;  // n
  std::vector<i64> brt;   // n*n

  i64 add(i64 a, i64 b) const { return addt[(size_t)a * n + b]; }
  i64 neg(i64 a) const { return negt[a]; }
  i64 br(i64 a, i64 b) const { return brt[(size_t)a * n + b]; }
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 smul(i64 k, i64 a) const;  // k * a, any integer k
};

TableLie table_lie(const NilLieRing& L);

// additive span of gens; gamma_1 = L, gamma_{i+1} = span [gamma_i, L]
ElemSet lie_span(const TableLie& L, const ElemSet& gens);
std::vector<ElemSet> lie_gamma(const TableLie& L);
int lie_class(const TableLie& L);

// ---------------------------------------------------------------------------
// Crossed modules. mu : H -> G1 with kernel M (central in H) and cokernel
// alpha : G1 -> G2; eta is the action of G1 on H. All structure maps are
// index tables on the explicit carriers.

struct GroupCrossedModule {
  i64 p = 0;
  CayleyGroup H, G1, G2;
  std::vector<i64> mu;                // |H|: H index -> G1 index
  std::vector<std::vector<i64>> eta;  // |G1| tables, each a permutation of H
  Module M;                           // the kernel, as an abstract module
  std::vector<i64> ker;               // M element index -> H index
  std::vector<i64> alpha;             // |G1|: G1 index -> G2 index
};

struct LieCrossedModule {
  i64 p = 0;
  TableLie g, g1, g2;
  std::vector<i64> mu;
  std::vector<std::vector<i64>> eta;  // |g1| tables, additive self-maps of g
  Module M;
  std::vector<i64> ker;
  std::vector<i64> alpha;
};

// Empty list iff every axiom holds: mu and alpha are structure-preserving,
// eta is an action by automorphisms (derivations), axiom (i)
// mu(eta(g)h) = g mu(h) g^-1 (resp. mu(eta(a)x) = [a, mu(x)]), axiom (ii)
// eta(mu(h))h' = h h' h^-1 (resp. eta(mu(x))y = [x,y]), ker mu = im(ker)
// central, and ker alpha = im mu with alpha onto. Violations are data.
std::vector<std::string> check_axioms(const GroupCrossedModule& X);
std::vector<std::string> check_axioms(const LieCrossedModule& X);

// class of the base pair: max of the classes of G1 and G2 (resp. g1, g2)
int crossed_class(const GroupCrossedModule& X);
int crossed_class(const LieCrossedModule& X);
// length of the induced action of G2 (resp. g2) on M; at least 1
int crossed_action_length(const GroupCrossedModule& X);
int crossed_action_length(const LieCrossedModule& X);

// Objectwise log/exp; the underlying index sets do not move, eta transports
// through the operator log/exp of each automorphism/derivation. Throws
// hypothesis_violation "need c + d < p" (with the computed gamma-witness on
// the base) when c + d >= p, and "Lazard bound violated" when a carrier
// class reaches p. exp_crossed(log_crossed(X)) == X bit for bit.
LieCrossedModule log_crossed(const GroupCrossedModule& X);
GroupCrossedModule exp_crossed(const LieCrossedModule& Y);

// Baer sum: pull back over G1, then quotient by the antidiagonal copy of M.
// Inputs must carry identical boundary data (G1, G2, alpha, M); the output
// repeats it bit for bit. Throws std::invalid_argument on mismatch.
GroupCrossedModule baer_sum(const GroupCrossedModule& X,
                            const GroupCrossedModule& Y);
LieCrossedModule baer_sum(const LieCrossedModule& X,
                          const LieCrossedModule& Y);

// Brute-force search for an isomorphism H_X -> H_Y over mu, compatible with
// eta, identity on M (through ker) and on G1. Returns false immediately on
// boundary mismatch. Throws undecided_error("undecided at this scale") when
// |H| exceeds the bound (default p^3).
bool crossed_equivalent(const GroupCrossedModule& X,
                        const GroupCrossedModule& Y, i64 max_h = -1);
bool crossed_equivalent(const LieCrossedModule& X, const LieCrossedModule& Y,
                        i64 max_h = -1);

// ---------------------------------------------------------------------------
// Builders.

// Multiplication table of a group given by index ops (indices preserved).
CayleyGroup cayley_of(const GroupOps& G);

// N a normal subgroup (full element set): N -> G with conjugation action,
// trivial kernel, cokernel G -> G/N.
GroupCrossedModule conjugation_crossed(const LazardGroup& G, const ElemSet& N);
// Adjoint Lie analog: I an ideal of L.
LieCrossedModule ideal_crossed(const NilLieRing& L, const Submodule& I);

// M -> 1 -> G2: H = M with trivial mu, G1 = G2 = the acting group/ring,
// eta the module action.
GroupCrossedModule module_crossed(const GroupTriple& T);
LieCrossedModule module_crossed(const LieTriple& T);

// Z a central ideal of L: exp(L) -> exp(L)/exp(Z) with kernel Z and trivial
// cokernel (G2 = 1); the crossed module of the central extension.
GroupCrossedModule quotient_crossed(const LazardGroup& G, const Submodule& Z);
LieCrossedModule quotient_crossed(const NilLieRing& L, const Submodule& Z);

// The split (neutral) crossed module with the boundary of X:
// H = M x ker(alpha), mu the projection, eta acting per coordinate.
GroupCrossedModule split_crossed(const GroupCrossedModule& X);
LieCrossedModule split_crossed(const LieCrossedModule& X);

// X with the carrier H relabelled by one of its crossed automorphisms
// eta(g); equivalent to X with explicit witness eta(g).
GroupCrossedModule relabel_by_action(const GroupCrossedModule& X, i64 g);

}  // namespace lazard
