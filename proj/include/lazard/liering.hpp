#pragma once

// Finite nilpotent Lie rings over the Z/p^e chain, presented by structure
// constants on a fixed basis. Mixed coordinate orders are allowed subject
// to the order-compatibility congruence checked by validate().

#include <string>
#include <vector>

#include "lazard/ring.hpp"

namespace lazard {

struct NilLieRing {
  i64 p = 0;
  std::vector<std::string> labels;
  std::vector<int> orders;             // coordinate i lives mod p^orders[i]
  std::vector<std::vector<Vec>> sc;    // sc[i][j] = coords of [b_i, b_j]
  int class_hint = 0;                  // 0 = unknown

  Module module() const { return Module{p, orders}; }
  int rank() const { return static_cast<int>(orders.size()); }
  i64 size() const { return module().size(); }

  // bilinear extension of the structure constants
  Vec bracket(const Vec& u, const Vec& v) const;
};

// Empty list means the presentation is a valid nilpotent Lie ring;
// otherwise each entry names one violated axiom.
std::vector<std::string> validate(const NilLieRing& L);

// gamma_1 = L, gamma_{i+1} = [gamma_i, L]; last entry is the zero span.
std::vector<Submodule> lower_central_series(const NilLieRing& L);
int nilpotency_class(const NilLieRing& L);

Submodule subring_closure(const NilLieRing& L, const std::vector<Vec>& gens);
Submodule ideal_closure(const NilLieRing& L, const std::vector<Vec>& gens);
bool is_ideal(const NilLieRing& L, const Submodule& S);
bool is_subring(const NilLieRing& L, const Submodule& S);

struct QuotientRing {
  NilLieRing ring;
  SubquotientMap onto;  // ambient coordinates -> quotient coordinates
};
QuotientRing quotient_ring(const NilLieRing& L, const Submodule& ideal);

NilLieRing direct_sum(const NilLieRing& a, const NilLieRing& b);

NilLieRing abelian(i64 p, const std::vector<int>& orders);
// rank 3, all coordinates mod p^e, [x,y] = z
NilLieRing heisenberg(i64 p, int e);
// free nilpotent of class c on n generators, coefficients mod p^e,
// on the Lyndon-word basis
NilLieRing free_nilpotent(int n_gens, int c, i64 p, int e);

}  // namespace lazard
