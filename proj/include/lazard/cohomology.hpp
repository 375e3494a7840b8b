#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lazard/bchgroup.hpp"
#include "lazard/triples.hpp"

namespace lazard {

// ===========================================================================
// Streamed sparse linear systems over mixed moduli.
//
// Variables are residues mod p^E. A constraint row is sparse and is only
// required to hold mod p^{eq_order}; it is scaled by p^{E-eq_order} before
// elimination. Rows are supplied by a re-enumerable deterministic source so
// that redundant constraints can be screened against a candidate kernel
// instead of being eliminated one by one.

using SparseRow = std::vector<std::pair<int, i64>>;
using RowEmit = std::function<void(const SparseRow&, int /*eq_order*/)>;
using RowSource = std::function<void(const RowEmit&)>;

// Basis (Howell-reduced) of {x in (Z/p^E)^nvars : every row annihilates x}.
std::vector<Vec> streamed_kernel(i64 p, int E, int nvars, const RowSource& rows);

// ===========================================================================
// Cohomology values. Classes live in a quotient Z/B of an x-vector space
// whose layout is owned by the side-specific model below; `pres` projects an
// x-vector to class coordinates (one per invariant factor).

struct CohomologyGroup {
  InvariantFactors inv;
  std::vector<Vec> reps;  // x-vectors lifting the invariant-factor generators
  SubquotientMap pres;
};

// ---------------------------------------------------------------------------
// Degree 0. Fixed points as a literal submodule of M; coinvariants M/[M,·].

Submodule h0(const LieTriple& T);
Submodule h0(const GroupTriple& T);
InvariantFactors h0_co(const LieTriple& T);
InvariantFactors h0_co(const GroupTriple& T);

// ---------------------------------------------------------------------------
// Degree 1. Group side: crossed homs F : G -> M, F(xy) = F(x) + phi(x)F(y),
// modulo principal F_m(x) = phi(x)m - m. x-vector layout: F(x) for every
// element index x, coordinates of M flattened. Lie side: derivations
// f : L -> M, f([a,b]) = psi(a)f(b) - psi(b)f(a), modulo inner f_m(a) =
// psi(a)m; x-vector layout: f(e_i) per basis element of L.

class GroupH1 {
 public:
  explicit GroupH1(const GroupTriple& T);
  const CohomologyGroup& H() const { return H_; }
  Vec value(const Vec& xvec, i64 g) const;  // F(g)
  Vec xvec_of(const std::function<Vec(i64)>& F) const;
  Vec class_coords(const std::function<Vec(i64)>& F) const;

 private:
  Module M_;
  i64 n_;
  CohomologyGroup H_;
};

class LieH1 {
 public:
  explicit LieH1(const LieTriple& T);
  const CohomologyGroup& H() const { return H_; }
  Vec value(const Vec& xvec, const Vec& a) const;  // f(a)
  Vec xvec_of(const Mat& deriv) const;             // columns f(e_i)
  Mat matrix_of(const Vec& xvec) const;
  Vec class_coords(const Mat& deriv) const;

 private:
  Module M_, L_;
  CohomologyGroup H_;
};

// ---------------------------------------------------------------------------
// Degree 2 cocycle data, stored as full value tables (row-major, index
// a * n + b). Both kinds are normalized: value 0 whenever an argument is the
// neutral element.

struct GroupCocycle2 {
  std::vector<Vec> f;  // f(x,y) in M coordinates, size |G|^2
};

// Section data of a Lie extension M -> E -> L: g twists the addition,
// f twists the bracket. E = M x L with
//   (m,a) + (n,b)   = (m + n + g(a,b), a + b)
//   [(m,a),(n,b)]   = (psi(a)n - psi(b)m + f(a,b), [a,b]).
struct LieFactorSystem {
  std::vector<Vec> g, f;  // size |L|^2 each
};

bool cocycle_valid(const GroupTriple& T, const GroupCocycle2& c,
                   std::string* why = nullptr);
bool factor_system_valid(const LieTriple& T, const LieFactorSystem& s,
                         std::string* why = nullptr);

// Generator-parametrized solvers. A cocycle is determined by the slot values
// t(x, s) = f(x, s), s a generator, via the cocycle identity along a BFS
// spanning tree; constraints with the third argument restricted to
// generators then imply the full identity. The Lie model is parametrized by
// u_i(a) = g(a, e_i) and w_i(c) = f(e_i, c) analogously.

class GroupH2 {
 public:
  explicit GroupH2(const GroupTriple& T, i64 max_elements = -1);
  const GroupTriple& triple() const { return T_; }
  const CohomologyGroup& H() const { return H_; }
  GroupCocycle2 cocycle(const Vec& xvec) const;
  Vec xvec_of(const GroupCocycle2& c) const;
  Vec class_coords(const GroupCocycle2& c) const;  // rejects non-cocycles

 private:
  Vec slot_vector(const std::function<Vec(i64, i64)>& f) const;

  GroupTriple T_;
  i64 n_;
  int r_, E_;
  std::vector<i64> parent_, pgen_;  // BFS tree: x = parent * gen
  CohomologyGroup H_;
};

class LieH2 {
 public:
  explicit LieH2(const LieTriple& T, i64 max_elements = -1);
  const LieTriple& triple() const { return T_; }
  const CohomologyGroup& H() const { return H_; }
  LieFactorSystem factor_system(const Vec& xvec) const;
  Vec xvec_of(const LieFactorSystem& s) const;
  Vec class_coords(const LieFactorSystem& s) const;

 private:
  LieTriple T_;
  i64 n_;
  int rL_, E_;
  CohomologyGroup H_;
};

// ---------------------------------------------------------------------------
// Extension objects. Group extensions are realized on the carrier
// idx = m_idx * |G| + x_idx with (m,x)(n,y) = (m + phi(x)n + f(x,y), xy).

struct GroupExtension {
  Module M;
  i64 nG = 0;
  GroupOps ops;  // self-contained (owns its captured data)
  i64 pair_index(i64 m_idx, i64 x_idx) const { return m_idx * nG + x_idx; }
  Vec m_part(i64 idx, const Module& m) const { return m.element(idx / nG); }
  i64 g_part(i64 idx) const { return idx % nG; }
};

GroupExtension extension_from_cocycle(const GroupTriple& T,
                                      const GroupCocycle2& c);
// Canonical section x -> (0, x); the result equals the defining cocycle.
GroupCocycle2 cocycle_from_extension(const GroupTriple& T,
                                     const GroupExtension& E);

// The middle object of a Lie factor system, re-entered into the
// structure-constant world: a basis of (M x L, +_g) via Smith normal form,
// then structure constants of the twisted bracket.
struct LieExtension {
  NilLieRing ring;
  std::vector<Vec> coords_of_pair;  // pair index m_idx*|L|+a_idx -> ring coords
  std::vector<i64> pair_of_coords;  // ring element index -> pair index
  Module M, L;
  i64 pair_index(i64 m_idx, i64 a_idx) const { return m_idx * L.size() + a_idx; }
  Vec pair_m(i64 pair) const { return M.element(pair / L.size()); }
  i64 pair_a(i64 pair) const { return pair % L.size(); }
};

LieExtension lie_ring_from_factor_system(const LieTriple& T,
                                         const LieFactorSystem& s);

// ---------------------------------------------------------------------------
// Baer sums, computed at the extension level (pull-back over the base, then
// quotient by the anti-diagonal copy of M) and returned as cocycle data of
// the canonical section. Always equals the cocycle-level sum; tests rely on
// the construction actually being carried out.

GroupCocycle2 baer_sum(const GroupTriple& T, const GroupCocycle2& a,
                       const GroupCocycle2& b);
LieFactorSystem baer_sum(const LieTriple& T, const LieFactorSystem& a,
                         const LieFactorSystem& b);
// Module flavor (degree 1): crossed homs F encode extensions of the trivial
// module Z/p^N by M; the Baer sum extension's crossed hom is returned.
std::vector<Vec> baer_sum_crossed(const GroupTriple& T,
                                  const std::vector<Vec>& F1,
                                  const std::vector<Vec>& F2);

// ---------------------------------------------------------------------------
// Exp/Log transport of classes. The group side of a LieTriple T is always
// exp_triple(T); element indices agree on both sides.

// degree 1 (needs d < p-1): Lie derivation -> crossed hom and back, via the
// unipotent extension of the action to M + Z/p^N.
std::vector<Vec> transport_h1(const LieTriple& T, const Mat& deriv);
Mat transport_h1_back(const LieTriple& T, const std::vector<Vec>& F);

// degree 2 (needs c + d < p): factor system -> build the middle ring,
// exponentiate, extract the group cocycle of the canonical section; back
// direction reads the recovered ring operations off the extension group.
GroupCocycle2 transport_h2(const LieTriple& T, const LieFactorSystem& s);
LieFactorSystem transport_h2_back(const LieTriple& T, const GroupCocycle2& c);

// Functoriality: a morphism m : T1 -> T2 carries alpha (second carrier to
// first) and beta (M1 to M2), so a class on T1 moves to T2 as
// beta . f . (alpha x alpha): pull back along alpha, push out along beta.
// The group overload with `extension_level = true` performs the actual
// pull-back/push-out construction on the extension and must agree.
GroupCocycle2 transport_along_morphism(const GroupTriple& T1,
                                       const GroupTriple& T2,
                                       const TripleMorphism& m,
                                       const GroupCocycle2& c,
                                       bool extension_level = false);
LieFactorSystem transport_along_morphism(const LieTriple& T1,
                                         const LieTriple& T2,
                                         const TripleMorphism& m,
                                         const LieFactorSystem& s);
std::vector<Vec> transport_along_morphism_h1(const GroupTriple& T1,
                                             const GroupTriple& T2,
                                             const TripleMorphism& m,
                                             const std::vector<Vec>& F);

// ---------------------------------------------------------------------------
// Comparison report for one triple and one degree.

struct CompareReport {
  int degree = 0;
  bool in_scope = true;        // degree-specific hypothesis satisfied
  std::string scope_note;      // "out of theorem scope" when violated
  InvariantFactors lie_inv, group_inv;
  bool invariants_equal = false;
  bool set_equal = false;      // degree 0: literal submodule equality
  bool transport_ok = false;   // degrees 1,2: bijective + additive evidence
  std::vector<std::string> witnesses;
  bool verdict() const;
};

CompareReport compare(const LieTriple& T, int degree, i64 max_elements = -1);

}  // namespace lazard
