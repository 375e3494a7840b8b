#pragma once

#include <string>
#include <vector>

#include "lazard/cohomology.hpp"

namespace lazard {

// ===========================================================================
// The inflation-restriction-transgression sequence with F_p trivial
// coefficients,
//   0 -> H^1(G/N) -> H^1(G) -> H^1(N)^{G/N} -> H^2(G/N) -> H^2(G),
// built on both sides of the correspondence and compared square by square.
// Degree-1 groups are realized through the elementary-abelian quotients
// H^1(G) = Hom(G/(G^p[G,G]), F_p) and H^1(N)^{G/N} = Hom(N/(N^p[G,N]), F_p);
// the Lie row uses pL + [L,L] and pI + [L,I].

// Coordinates on Hom(L, F_p): the returned map projects an element onto the
// basis of L/(pL + [L,L]); the dual basis functionals are the H^1 basis.
SubquotientMap h1_hom(const NilLieRing& L);
// Coordinates on Hom(I/(pI + [L,I]), F_p); throws when the span of the
// generators is not an ideal.
SubquotientMap h1_fixed(const NilLieRing& L, const std::vector<Vec>& ideal_gens);

struct FiveTermReport {
  // the five groups, left to right; all elementary abelian
  std::vector<InvariantFactors> lie_inv, group_inv;
  // the four maps in class coordinates, mod p
  std::vector<Mat> lie_maps, group_maps;
  // exactness at the three interior nodes (im = ker), per side
  std::vector<bool> lie_exact, group_exact;
  bool injective_start = false;  // 0 -> H^1(G/N)
  // the group-generated subgroups G^p[G,G] and N^p[G,N] coincide with the
  // Lie spans pL+[L,L] and pI+[L,I] element-for-element; this is what makes
  // the degree-1 comparison maps the identity on value tables
  bool carriers_match = false;
  bool squares_commute = false;  // transgression and degree-2 inflation
  std::vector<std::string> witnesses;
  // records the orientation used for the transgression kernel term
  std::string note;
  bool verdict() const;
};

// Transgression of a fixed-part character, returned as section data of the
// induced quotient extension with coefficients N/M identified along f
// (Ker f = M/(N^p[G,N]), N/M = F_p). f is given by its values (mod p) on the
// ambient element indices of N; it must kill N^p[G,N].
GroupCocycle2 transgress_group(const NilLieRing& L,
                               const std::vector<Vec>& ideal_gens,
                               const std::vector<i64>& f_on_ambient);
LieFactorSystem transgress_lie(const NilLieRing& L,
                               const std::vector<Vec>& ideal_gens,
                               const std::vector<i64>& f_on_ambient);

// Throws hypothesis_violation unless class(L) < p-1; throws domain_error
// when the generators do not span an ideal.
FiveTermReport five_term_verify(const NilLieRing& L,
                                const std::vector<Vec>& ideal_gens);

}  // namespace lazard
