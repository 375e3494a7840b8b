#include "lazard/schur.hpp"

#include <stdexcept>

namespace lazard {

namespace {

void guard_class(const NilLieRing& L) {
  if (nilpotency_class(L) >= (int)L.p - 1)
    throw hypothesis_violation(
        "hypothesis of Theorem C violated: need c < p-1");
}

Module level_module(i64 p, int i) { return Module{p, {i}}; }

LieTriple trivial_lie_triple(const NilLieRing& L, int i) {
  LieTriple T;
  T.L = L;
  T.M = level_module(L.p, i);
  T.psi.assign(L.rank(), hom_zero(T.M, T.M));
  return T;
}

GroupTriple trivial_group_triple(const LazardGroup& G, int i) {
  Module M = level_module(G.p(), i);
  std::vector<Mat> phi(G.size(), hom_identity(M));
  return GroupTriple(G, M, std::move(phi));
}

// the coefficient inclusion Z/p^i -> Z/p^{i+1}, generator |-> p * generator
Vec push_value(const Vec& v, i64 p, int i) {
  return {mod_norm(p * v[0], pow_i(p, i + 1))};
}

GroupCocycle2 push_cocycle(const GroupCocycle2& c, i64 p, int i) {
  GroupCocycle2 out;
  out.f.reserve(c.f.size());
  for (const Vec& v : c.f) out.f.push_back(push_value(v, p, i));
  return out;
}

LieFactorSystem push_factor_system(const LieFactorSystem& s, i64 p, int i) {
  LieFactorSystem out;
  out.g.reserve(s.g.size());
  out.f.reserve(s.f.size());
  for (const Vec& v : s.g) out.g.push_back(push_value(v, p, i));
  for (const Vec& v : s.f) out.f.push_back(push_value(v, p, i));
  return out;
}

// One side of the tower: level models on demand, plus the class-coordinate
// form of the connecting map.
struct Tower {
  virtual ~Tower() = default;
  virtual InvariantFactors inv(int i) = 0;
  // class coords at level i -> class coords of the pushed class at level i+1
  virtual Vec push_class(int i, const Vec& coords) = 0;
};

struct LieTower : Tower {
  const NilLieRing& L;
  i64 bound;
  std::vector<std::unique_ptr<LieH2>> models;
  LieTower(const NilLieRing& L, i64 bound) : L(L), bound(bound) {}
  LieH2& at(int i) {
    if ((int)models.size() < i) models.resize(i);
    if (!models[i - 1])
      models[i - 1] =
          std::make_unique<LieH2>(trivial_lie_triple(L, i), bound);
    return *models[i - 1];
  }
  InvariantFactors inv(int i) override { return at(i).H().inv; }
  Vec push_class(int i, const Vec& coords) override {
    LieFactorSystem s = at(i).factor_system(at(i).H().pres.lift(coords));
    return at(i + 1).class_coords(push_factor_system(s, L.p, i));
  }
};

struct GroupTower : Tower {
  LazardGroup G;
  i64 bound;
  std::vector<std::unique_ptr<GroupH2>> models;
  GroupTower(const NilLieRing& L, i64 bound) : G(L), bound(bound) {}
  GroupH2& at(int i) {
    if ((int)models.size() < i) models.resize(i);
    if (!models[i - 1])
      models[i - 1] =
          std::make_unique<GroupH2>(trivial_group_triple(G, i), bound);
    return *models[i - 1];
  }
  InvariantFactors inv(int i) override { return at(i).H().inv; }
  Vec push_class(int i, const Vec& coords) override {
    GroupCocycle2 c = at(i).cocycle(at(i).H().pres.lift(coords));
    return at(i + 1).class_coords(push_cocycle(c, G.p(), i));
  }
};

MultiplierReport run_tower(Tower& tw, i64 p, int e_max, int log_size,
                           int extra_levels) {
  MultiplierReport R;
  int cap = e_max + log_size;
  // stride: extension-type classes survive single coefficient inclusions
  // when the object has exponent > p, but die after e_max composite steps;
  // comparing images across an e_max-stride makes the criterion sound for
  // arbitrary exponent (and equals the one-step comparison when e_max = 1)
  int s = e_max;
  // composite image of level i in level i+s, as class coordinates
  auto push_composite = [&](int i, Vec v) {
    for (int k = 0; k < s; ++k) v = tw.push_class(i + k, v);
    return v;
  };
  Submodule prev_image(level_module(p, 1));  // J_0 = 0
  for (int i = 1; i <= cap + extra_levels; ++i) {
    InvariantFactors hi = tw.inv(i);
    while ((int)R.level_inv.size() < i + s)
      R.level_inv.push_back(tw.inv((int)R.level_inv.size() + 1));
    Module Hi{p, hi}, Hn{p, tw.inv(i + s)};

    // connecting map to the next level and the stride image J_i
    Mat step(Module{p, tw.inv(i + 1)}.rank(), Hi.rank(),
             pow_i(p, std::max(1, Module{p, tw.inv(i + 1)}.max_order())));
    std::vector<Vec> igens;
    for (int k = 0; k < Hi.rank(); ++k) {
      Vec e = Hi.zero();
      e[k] = 1;
      Vec one = tw.push_class(i, e);
      for (int r = 0; r < step.rows; ++r) step.at(r, k) = one[r];
      igens.push_back(push_composite(i, e));
    }
    Submodule image(Hn, igens);
    R.induced.push_back(step);
    R.image_inv.push_back(image.invariants());

    if (!R.stabilized) {
      // J_{i-1} pushed one more level must fill J_i bijectively
      std::vector<Vec> pushed;
      for (const Vec& g : prev_image.basis())
        pushed.push_back(tw.push_class(i - 1 + s, g));
      Submodule carried(Hn, pushed);
      bool iso = prev_image.invariants() == image.invariants() &&
                 carried == image && prev_image.size() == image.size();
      if (iso) {
        R.stabilized = true;
        R.stabilization_level = i;
        R.stable = image.invariants();
        if (extra_levels == 0) break;
      }
    } else if (R.stable != image.invariants()) {
      throw std::logic_error("schur: stable value moved after stabilization");
    }
    prev_image = std::move(image);
  }
  if (!R.stabilized) R.note = "inconclusive";
  return R;
}

int log_size_of(const NilLieRing& L) {
  int s = 0;
  for (int o : L.orders) s += o;
  return s;
}

}  // namespace

MultiplierReport schur_lie(const NilLieRing& L, int extra_levels,
                           i64 max_elements) {
  guard_class(L);
  LieTower tw(L, max_elements);
  return run_tower(tw, L.p, L.module().max_order(), log_size_of(L),
                   extra_levels);
}

MultiplierReport schur_group(const NilLieRing& L, int extra_levels,
                             i64 max_elements) {
  guard_class(L);
  GroupTower tw(L, max_elements);
  return run_tower(tw, L.p, L.module().max_order(), log_size_of(L),
                   extra_levels);
}

SchurCompare compare_schur(const NilLieRing& L, i64 max_elements) {
  guard_class(L);
  SchurCompare C;
  LieTower lt(L, max_elements);
  GroupTower gt(L, max_elements);
  int e_max = L.module().max_order(), lsz = log_size_of(L);
  C.lie = run_tower(lt, L.p, e_max, lsz, 0);
  C.group = run_tower(gt, L.p, e_max, lsz, 0);
  C.stable_equal = C.lie.stabilized && C.group.stabilized &&
                   C.lie.stable == C.group.stable;
  if (!C.stable_equal)
    C.witnesses.push_back("stable values: lie " +
                          factors_str(C.lie.stable, L.p) + ", group " +
                          factors_str(C.group.stable, L.p));

  // level-by-level: pushing coefficients commutes with exp/log transport
  C.squares_commute = true;
  int top = std::min(C.lie.stabilization_level, C.group.stabilization_level);
  for (int i = 1; i <= top && C.squares_commute; ++i) {
    LieH2& HL = lt.at(i);
    GroupH2& HGn = gt.at(i + 1);
    LieTriple Ti = trivial_lie_triple(L, i);
    LieTriple Tn = trivial_lie_triple(L, i + 1);
    Module Hi{L.p, HL.H().inv};
    for (int k = 0; k < Hi.rank(); ++k) {
      Vec e = Hi.zero();
      e[k] = 1;
      LieFactorSystem s = HL.factor_system(HL.H().pres.lift(e));
      Vec via_group =
          HGn.class_coords(push_cocycle(transport_h2(Ti, s), L.p, i));
      Vec via_lie =
          HGn.class_coords(transport_h2(Tn, push_factor_system(s, L.p, i)));
      if (via_group != via_lie) {
        C.squares_commute = false;
        C.witnesses.push_back("square fails at level " + std::to_string(i) +
                              ", generator " + std::to_string(k));
        break;
      }
    }
  }
  return C;
}

}  // namespace lazard
