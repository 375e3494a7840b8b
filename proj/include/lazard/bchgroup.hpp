#pragma once

// The group exp(L) on the coordinate set of a nilpotent Lie ring, with
// multiplication given by the BCH series; generic finite-group closures;
// and recovery of the ring operations from the group law alone.

#include <functional>
#include <set>
#include <vector>

#include "lazard/freelie.hpp"
#include "lazard/liering.hpp"

namespace lazard {

class LazardGroup {
 public:
  // Throws hypothesis_violation("Lazard bound violated") when
  // class(L) >= p.
  explicit LazardGroup(NilLieRing L);

  const NilLieRing& ring() const { return L_; }
  int cls() const { return cls_; }
  i64 p() const { return L_.p; }
  i64 size() const { return L_.size(); }
  Module module() const { return L_.module(); }

  Vec id() const { return L_.module().zero(); }
  Vec mul(const Vec& a, const Vec& b) const;
  Vec inv(const Vec& a) const { return L_.module().neg(a); }
  Vec pow(const Vec& a, i64 n) const;
  // a^-1 b^-1 a b
  Vec comm(const Vec& a, const Vec& b) const;
  // g^-1 a g
  Vec conj(const Vec& a, const Vec& g) const;

  i64 index_of(const Vec& v) const { return L_.module().index_of(v); }
  Vec element(i64 i) const { return L_.module().element(i); }

 private:
  NilLieRing L_;
  int cls_;
  // BCH terms of weight >= 2, precompiled: each step brackets two earlier
  // values (0 = a, 1 = b, k+2 = step k) and adds scalar * result when the
  // reduced coefficient is nonzero.
  struct Step {
    int left, right;
    i64 scalar;  // 0 when the word only feeds later brackets
  };
  std::vector<Step> steps_;
};

LazardGroup exp_group(const NilLieRing& L);

// Explicit multiplication table on element indices 0..n-1.
struct CayleyGroup {
  int n = 0;
  int id = 0;
  std::vector<int> table;  // n*n, row-major
  std::vector<int> invs;

  int mul(int a, int b) const { return table[(size_t)a * n + b]; }
  int inv(int a) const { return invs[a]; }
};

// Fills inverses and checks the group axioms (associativity exhaustively
// up to ~250 elements, by sampling beyond); throws on violation.
CayleyGroup make_cayley(int n, int id, std::vector<int> table);

// Uniform index-based access for the closure algorithms below.
struct GroupOps {
  i64 n = 0;
  i64 id = 0;
  std::function<i64(i64, i64)> mul;
  std::function<i64(i64)> inv;
  std::vector<i64> gens;  // a generating set
};

GroupOps group_ops(const LazardGroup& G);
GroupOps group_ops(const CayleyGroup& G);

// Element sets are sorted vectors of element indices.
using ElemSet = std::vector<i64>;

ElemSet subgroup_closure(const GroupOps& G, const ElemSet& gens);
ElemSet normal_closure(const GroupOps& G, const ElemSet& gens);
// subgroup generated by commutators [a,b], a in A, b in B; when both are
// normal this is [A, B]
ElemSet commutator_subgroup(const GroupOps& G, const ElemSet& a_gens,
                            const ElemSet& b_gens);
// gamma_1 = G, gamma_{i+1} = [gamma_i, G]; last entry = {id}
std::vector<ElemSet> gamma_series(const GroupOps& G);
int group_class(const GroupOps& G);
// subgroup generated by n^p over all n in N (N a full element set)
ElemSet power_subgroup(const GroupOps& G, const ElemSet& N, i64 p);
// N^p [G, N] for N normal (N a full element set)
ElemSet agemo_mixed(const GroupOps& G, const ElemSet& N, i64 p);

bool is_subgroup(const GroupOps& G, const ElemSet& S);
bool is_normal(const GroupOps& G, const ElemSet& S);

struct QuotientGroup {
  CayleyGroup grp;
  std::vector<int> coset_of;  // element index -> coset index
  std::vector<i64> reps;      // coset index -> representative element
};
QuotientGroup quotient_group(const GroupOps& G, const ElemSet& N);

// Reconstructs addition and bracket from mul/inv alone by descending the
// filtration; returns a ring with the same carrier whose operations
// reproduce the group. Class and carrier module are taken as given.
NilLieRing recover_lie(const LazardGroup& G);

// The same filtration fixpoint on an arbitrary finite p-group given by
// index arithmetic: recovered addition, negation and bracket of log(G).
// cls must be the nilpotency class (< p); exponent_e an upper bound with
// g^{p^exponent_e} = 1 for all g.
class IndexLog {
 public:
  IndexLog(GroupOps G, i64 p, int cls, int exponent_e);

  i64 add(i64 a, i64 b);
  i64 neg(i64 a) const { return G_.inv(a); }
  i64 br(i64 a, i64 b);
  i64 zero() const { return G_.id; }
  i64 smul(i64 n, i64 a) const;  // n * a = a^n, exact

 private:
  i64 sum_k(int k, i64 a, i64 b);
  i64 br_k(int k, i64 a, i64 b);
  i64 eval_series(int k, const std::map<Word, Rat>& series, i64 a, i64 b);
  i64 comm(i64 a, i64 b) const;

  GroupOps G_;
  i64 p_;
  int c_, E_;
  std::map<Word, Rat> rem_, kcorr_;
  std::map<std::tuple<int, i64, i64>, i64> sum_memo_, br_memo_;
};

}  // namespace lazard
