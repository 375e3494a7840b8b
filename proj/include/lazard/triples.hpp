#pragma once

// Triples (group or Lie ring, finite abelian p-module, unipotent action)
// and the Exp/Log functors between the two categories, with the class and
// action-length guards.

#include <vector>

#include "lazard/bchgroup.hpp"
#include "lazard/liering.hpp"

namespace lazard {

// --- endomorphisms / homomorphisms of mixed-order modules ----------------
// A hom from `from` to `to` is a matrix over p^{max_order(to)} whose column
// j is the image of e_j; entry (i,j) is read mod p^{to.orders[i]}.

i64 hom_modulus(const Module& to);
Mat hom_zero(const Module& from, const Module& to);
Mat hom_identity(const Module& m);
// well-definedness: p^{from.orders[j]} * column j vanishes in `to`
bool hom_valid(const Module& from, const Module& to, const Mat& A);
Vec hom_apply(const Module& from, const Module& to, const Mat& A,
              const Vec& v);
bool hom_equal(const Module& from, const Module& to, const Mat& A,
               const Mat& B);
bool hom_is_zero(const Module& from, const Module& to, const Mat& A);
// B after A, where A: from -> mid, B: mid -> to
Mat hom_compose(const Module& from, const Module& mid, const Module& to,
                const Mat& B, const Mat& A);

// exp of a nilpotent endomorphism / log of a unipotent one, truncated at
// k = p-1; throws hypothesis_violation when the p-1st power still acts.
Mat endo_exp(const Module& m, i64 p, const Mat& N);
Mat endo_log(const Module& m, i64 p, const Mat& A);

// --- triples ---------------------------------------------------------------

struct LieTriple {
  NilLieRing L;
  Module M;
  std::vector<Mat> psi;  // per basis element of L

  Mat psi_of(const Vec& a) const;  // additive extension
};

class GroupTriple {
 public:
  GroupTriple(LazardGroup G, Module M, std::vector<Mat> phi_by_index)
      : G(std::move(G)), M(std::move(M)), phi(std::move(phi_by_index)) {}

  LazardGroup G;
  Module M;
  std::vector<Mat> phi;  // materialized on every element, by element index

  const Mat& phi_of(const Vec& a) const { return phi[G.index_of(a)]; }
};

std::vector<std::string> validate(const LieTriple& T);
std::vector<std::string> validate(const GroupTriple& T);

// least d with [M, _d L] = 0 resp. [M, _d G] = 1; 0 when M = 0; throws
// when the chain stalls before reaching zero ("action not unipotent")
int action_length(const LieTriple& T);
int action_length(const GroupTriple& T);
// the full descending chain M = S_0 > S_1 > ... > 0
std::vector<Submodule> action_chain(const LieTriple& T);
std::vector<Submodule> action_chain(const GroupTriple& T);

// guards: class < p and action length < p; throws hypothesis_violation
// "outside Tpl^{c,d} with c,d < p" otherwise
GroupTriple exp_triple(const LieTriple& T);
LieTriple log_triple(const GroupTriple& T);

// A morphism T1 -> T2: alpha maps the carrier of the second group/ring to
// the first (contravariant slot), beta maps M1 to M2. By the
// correspondence, both are additive on coordinates, so both are matrices.
struct TripleMorphism {
  Mat alpha;
  Mat beta;
};

std::vector<std::string> check_morphism(const LieTriple& T1,
                                        const LieTriple& T2,
                                        const TripleMorphism& m);
std::vector<std::string> check_morphism(const GroupTriple& T1,
                                        const GroupTriple& T2,
                                        const TripleMorphism& m);

// composite of f: T1 -> T2 and g: T2 -> T3
TripleMorphism compose(const TripleMorphism& f, const TripleMorphism& g);
TripleMorphism identity_morphism(const Module& carrier, const Module& M);

// The functors act as the identity on morphism data (the underlying set
// maps coincide); these re-validate in the target category.
TripleMorphism exp_morphism(const GroupTriple& E1, const GroupTriple& E2,
                            const TripleMorphism& m);
TripleMorphism log_morphism(const LieTriple& L1, const LieTriple& L2,
                            const TripleMorphism& m);

}  // namespace lazard
