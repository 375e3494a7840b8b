#include <map>
#include <stdexcept>

#include "lazard/cohomology.hpp"

namespace lazard {

// ===========================================================================
// degree 1

namespace {

// M + Z/p^E with the unipotent extension of psi by the derivation columns
Module extended_module(const Module& M) {
  std::vector<int> ords = M.orders;
  ords.push_back(M.max_order());
  return Module{M.p, ords};
}

void guard_h1(const LieTriple& T) {
  if (action_length(T) >= (int)T.L.p - 1)
    throw hypothesis_violation(
        "hypothesis of Theorem B(2) violated: need d < p-1");
}

void guard_h2(const LieTriple& T) {
  if (nilpotency_class(T.L) + action_length(T) >= (int)T.L.p)
    throw hypothesis_violation(
        "hypothesis of Theorem B(3) violated: need c + d < p");
}

}  // namespace

std::vector<Vec> transport_h1(const LieTriple& T, const Mat& deriv) {
  guard_h1(T);
  const Module& M = T.M;
  Module Mt = extended_module(M);
  i64 p = M.p;
  int rM = M.rank();
  i64 modt = hom_modulus(Mt);
  // psi~(e_i) = [[psi(e_i), deriv column i], [0, 0]]
  std::vector<Mat> psit;
  for (int i = 0; i < T.L.rank(); ++i) {
    Mat A = hom_zero(Mt, Mt);
    for (int k = 0; k < rM; ++k) {
      for (int j = 0; j < rM; ++j) A.at(k, j) = T.psi[i].at(k, j);
      A.at(k, rM) = mod_norm(deriv.at(k, i), modt);
    }
    psit.push_back(A);
  }
  Module Lm = T.L.module();
  std::vector<Vec> F;
  for (i64 x = 0; x < Lm.size(); ++x) {
    Vec a = Lm.element(x);
    Mat N = hom_zero(Mt, Mt);
    for (int i = 0; i < T.L.rank(); ++i)
      for (int k = 0; k <= rM; ++k)
        for (int j = 0; j <= rM; ++j)
          N.at(k, j) = mod_norm(N.at(k, j) + a[i] * psit[i].at(k, j), modt);
    Mat phix = endo_exp(Mt, p, N);
    Vec unit = Mt.zero();
    unit[rM] = 1;
    Vec img = hom_apply(Mt, Mt, phix, unit);
    F.push_back(M.reduce(Vec(img.begin(), img.begin() + rM)));
  }
  return F;
}

Mat transport_h1_back(const LieTriple& T, const std::vector<Vec>& F) {
  guard_h1(T);
  const Module& M = T.M;
  Module Mt = extended_module(M);
  i64 p = M.p;
  int rM = M.rank();
  i64 modt = hom_modulus(Mt);
  GroupTriple GT = exp_triple(T);
  Mat D(rM, T.L.rank(), hom_modulus(M));
  for (int i = 0; i < T.L.rank(); ++i) {
    Vec e(T.L.rank(), 0);
    e[i] = 1;
    i64 x = GT.G.index_of(e);
    // phi~(x) = [[phi(x), F(x)], [0, 1]]
    Mat A = hom_zero(Mt, Mt);
    for (int k = 0; k < rM; ++k) {
      for (int j = 0; j < rM; ++j) A.at(k, j) = GT.phi[x].at(k, j);
      A.at(k, rM) = mod_norm(F[x][k], modt);
    }
    A.at(rM, rM) = 1;
    Mat lg = endo_log(Mt, p, A);
    for (int k = 0; k < rM; ++k)
      D.at(k, i) = mod_norm(lg.at(k, rM), hom_modulus(M));
  }
  return D;
}

// ===========================================================================
// degree 2

GroupCocycle2 transport_h2(const LieTriple& T, const LieFactorSystem& s) {
  guard_h2(T);
  const Module& M = T.M;
  Module Lm = T.L.module();
  i64 nL = Lm.size();
  LieExtension X = lie_ring_from_factor_system(T, s);
  LazardGroup GE(X.ring);  // throws "Lazard bound violated" if class >= p
  LazardGroup G(T.L);
  Module Em = X.ring.module();

  std::vector<Vec> sec(nL);
  for (i64 x = 0; x < nL; ++x) sec[x] = X.coords_of_pair[x];  // (0, x)
  GroupCocycle2 out;
  out.f.assign((size_t)nL * nL, M.zero());
  for (i64 x = 0; x < nL; ++x)
    for (i64 y = 0; y < nL; ++y) {
      Vec w = GE.mul(sec[x], sec[y]);
      i64 xy = G.index_of(G.mul(Lm.element(x), Lm.element(y)));
      Vec r = GE.mul(w, GE.inv(sec[xy]));
      i64 pair = X.pair_of_coords[Em.index_of(r)];
      if (X.pair_a(pair) != 0)
        throw std::logic_error("transport_h2: section defect");
      out.f[(size_t)x * nL + y] = X.pair_m(pair);
    }
  return out;
}

LieFactorSystem transport_h2_back(const LieTriple& T,
                                  const GroupCocycle2& c) {
  guard_h2(T);
  const Module& M = T.M;
  Module Lm = T.L.module();
  i64 nL = Lm.size();
  i64 p = M.p;
  GroupTriple GT = exp_triple(T);
  GroupExtension E = extension_from_cocycle(GT, c);
  int cls = std::max(1, nilpotency_class(T.L) + action_length(T));
  int ee = M.max_order() + Lm.max_order();
  IndexLog IL(E.ops, p, cls, ee);

  LieFactorSystem out;
  out.g.assign((size_t)nL * nL, M.zero());
  out.f.assign((size_t)nL * nL, M.zero());
  for (i64 a = 0; a < nL; ++a)
    for (i64 b = 0; b < nL; ++b) {
      // sections are (0, a) = pair index a
      i64 su = IL.add(a, b);
      i64 ab = Lm.index_of(Lm.add(Lm.element(a), Lm.element(b)));
      if (su % nL != ab)
        throw std::logic_error("transport_h2_back: addition defect");
      out.g[(size_t)a * nL + b] = M.element(su / nL);
      i64 br = IL.br(a, b);
      i64 lab = Lm.index_of(T.L.bracket(Lm.element(a), Lm.element(b)));
      if (br % nL != lab)
        throw std::logic_error("transport_h2_back: bracket defect");
      out.f[(size_t)a * nL + b] = M.element(br / nL);
    }
  return out;
}

// ===========================================================================
// transport along morphisms

GroupCocycle2 transport_along_morphism(const GroupTriple& T1,
                                       const GroupTriple& T2,
                                       const TripleMorphism& m,
                                       const GroupCocycle2& c,
                                       bool extension_level) {
  const Module& M1 = T1.M;
  const Module& M2 = T2.M;
  Module C1 = T1.G.module(), C2 = T2.G.module();
  i64 n1 = T1.G.size(), n2 = T2.G.size();
  if ((i64)c.f.size() != n1 * n1)
    throw std::domain_error("transport_along_morphism: table size mismatch");

  auto alpha_idx = [&](i64 x2) {
    return T1.G.index_of(hom_apply(C2, C1, m.alpha, C2.element(x2)));
  };
  GroupCocycle2 out;
  out.f.assign((size_t)n2 * n2, M2.zero());
  for (i64 x = 0; x < n2; ++x)
    for (i64 y = 0; y < n2; ++y)
      out.f[(size_t)x * n2 + y] = hom_apply(
          M1, M2, m.beta, c.f[(size_t)alpha_idx(x) * n1 + alpha_idx(y)]);
  if (!extension_level) return out;

  // pull back the extension along alpha, push out along beta, extract the
  // canonical-section cocycle, and insist it matches the cochain formula
  GroupOps b1 = group_ops(T1.G), b2 = group_ops(T2.G);
  i64 nM1 = M1.size(), nM2 = M2.size();
  auto pidx = [&](i64 m2, i64 m1, i64 x2) {
    return (m2 * nM1 + m1) * n2 + x2;
  };
  GroupOps P;
  P.n = nM2 * nM1 * n2;
  P.id = b2.id;
  P.mul = [&](i64 u, i64 v) {
    i64 x = u % n2, y = v % n2;
    i64 um1 = u / n2 % nM1, vm1 = v / n2 % nM1;
    i64 um2 = u / n2 / nM1, vm2 = v / n2 / nM1;
    i64 ax = alpha_idx(x);
    Vec w1 = M1.add(M1.element(um1),
                    hom_apply(M1, M1, T1.phi[ax], M1.element(vm1)));
    w1 = M1.add(w1, c.f[(size_t)ax * n1 + alpha_idx(y)]);
    Vec w2 = M2.add(M2.element(um2),
                    hom_apply(M2, M2, T2.phi[x], M2.element(vm2)));
    return pidx(M2.index_of(w2), M1.index_of(w1), b2.mul(x, y));
  };
  P.inv = [&](i64 u) {
    i64 x = u % n2;
    i64 xi = b2.inv(x);
    i64 axi = alpha_idx(xi);
    Vec w1 = hom_apply(M1, M1, T1.phi[axi], M1.element(u / n2 % nM1));
    w1 = M1.neg(M1.add(w1, c.f[(size_t)axi * n1 + alpha_idx(x)]));
    Vec w2 = hom_apply(M2, M2, T2.phi[x], M2.element(u / n2 / nM1));
    w2 = M2.neg(w2);
    return pidx(M2.index_of(w2), M1.index_of(w1), xi);
  };
  ElemSet D;
  for (i64 mm = 0; mm < nM1; ++mm) {
    Vec bm = hom_apply(M1, M2, m.beta, M1.element(mm));
    i64 mneg = M1.index_of(M1.neg(M1.element(mm)));
    D.push_back(pidx(M2.index_of(bm), mneg, b2.id));
  }
  std::sort(D.begin(), D.end());
  D.erase(std::unique(D.begin(), D.end()), D.end());
  QuotientGroup Q = quotient_group(P, D);
  std::map<int, i64> mtab;
  for (i64 mm = 0; mm < nM2; ++mm) mtab[Q.coset_of[pidx(mm, 0, b2.id)]] = mm;
  auto sec = [&](i64 x) { return Q.coset_of[pidx(0, 0, x)]; };
  for (i64 x = 0; x < n2; ++x)
    for (i64 y = 0; y < n2; ++y) {
      int r = Q.grp.mul(Q.grp.mul(sec(x), sec(y)),
                        Q.grp.inv(sec(b2.mul(x, y))));
      auto it = mtab.find(r);
      if (it == mtab.end())
        throw std::logic_error("transport_along_morphism: section defect");
      if (M2.element(it->second) != out.f[(size_t)x * n2 + y])
        throw std::logic_error(
            "transport_along_morphism: extension level disagrees with the "
            "cochain level");
    }
  return out;
}

LieFactorSystem transport_along_morphism(const LieTriple& T1,
                                         const LieTriple& T2,
                                         const TripleMorphism& m,
                                         const LieFactorSystem& s) {
  const Module& M1 = T1.M;
  const Module& M2 = T2.M;
  Module C1 = T1.L.module(), C2 = T2.L.module();
  i64 n1 = C1.size(), n2 = C2.size();
  if ((i64)s.g.size() != n1 * n1)
    throw std::domain_error("transport_along_morphism: table size mismatch");
  auto alpha_idx = [&](i64 x2) {
    return C1.index_of(hom_apply(C2, C1, m.alpha, C2.element(x2)));
  };
  LieFactorSystem out;
  out.g.assign((size_t)n2 * n2, M2.zero());
  out.f.assign((size_t)n2 * n2, M2.zero());
  for (i64 x = 0; x < n2; ++x)
    for (i64 y = 0; y < n2; ++y) {
      i64 a = alpha_idx(x), b = alpha_idx(y);
      out.g[(size_t)x * n2 + y] =
          hom_apply(M1, M2, m.beta, s.g[(size_t)a * n1 + b]);
      out.f[(size_t)x * n2 + y] =
          hom_apply(M1, M2, m.beta, s.f[(size_t)a * n1 + b]);
    }
  return out;
}

std::vector<Vec> transport_along_morphism_h1(const GroupTriple& T1,
                                             const GroupTriple& T2,
                                             const TripleMorphism& m,
                                             const std::vector<Vec>& F) {
  Module C1 = T1.G.module(), C2 = T2.G.module();
  std::vector<Vec> out;
  for (i64 x = 0; x < T2.G.size(); ++x) {
    i64 a = T1.G.index_of(hom_apply(C2, C1, m.alpha, C2.element(x)));
    out.push_back(hom_apply(T1.M, T2.M, m.beta, F[a]));
  }
  return out;
}

// ===========================================================================
// comparison

bool CompareReport::verdict() const {
  if (degree == 0) return invariants_equal && set_equal;
  return invariants_equal && transport_ok;
}

namespace {

std::string inv_str(const InvariantFactors& f, i64 p) {
  return factors_str(f, p);
}

// transported class coordinates must generate the full target group
bool spans_all(const InvariantFactors& target, const std::vector<Vec>& coords,
               i64 p) {
  Module tm{p, target};
  Submodule span(tm);
  for (const Vec& c : coords) span.add(tm.reduce(c));
  return span.size() == tm.size();
}

}  // namespace

CompareReport compare(const LieTriple& T, int degree, i64 max_elements) {
  CompareReport R;
  R.degree = degree;
  i64 p = T.L.p;
  int c = nilpotency_class(T.L);
  int d = action_length(T);

  auto scope = [&](bool ok, const std::string& need) {
    R.in_scope = ok;
    if (!ok) R.scope_note = "out of theorem scope (" + need + ")";
  };
  switch (degree) {
    case 0:
      scope(c < p && d < p, "need c, d < p");
      break;
    case 1:
      scope(c < p && d < p - 1, "need c < p and d < p-1");
      break;
    case 2:
      scope(c + d < p, "need c + d < p");
      break;
    default:
      throw std::domain_error("compare: degree must be 0, 1 or 2");
  }

  try {
    GroupTriple GT = exp_triple(T);
    if (degree == 0) {
      Submodule hl = h0(T), hg = h0(GT);
      R.lie_inv = hl.invariants();
      R.group_inv = hg.invariants();
      R.invariants_equal = R.lie_inv == R.group_inv;
      bool fixed_eq = hl == hg;
      // coinvariants: the denominators [M,L] and [M,G] must literally agree
      Submodule imL(T.M), imG(T.M);
      for (const Mat& A : T.psi)
        for (int j = 0; j < T.M.rank(); ++j) {
          Vec col(T.M.rank(), 0);
          for (int k = 0; k < T.M.rank(); ++k) col[k] = A.at(k, j);
          imL.add(T.M.reduce(col));
        }
      for (int i = 0; i < T.L.rank(); ++i) {
        Vec e(T.L.rank(), 0);
        e[i] = 1;
        Mat A = GT.phi_of(e);
        for (int j = 0; j < T.M.rank(); ++j) {
          Vec col(T.M.rank(), 0);
          for (int k = 0; k < T.M.rank(); ++k)
            col[k] = mod_norm(A.at(k, j) - (k == j ? 1 : 0),
                              hom_modulus(T.M));
          imG.add(T.M.reduce(col));
        }
      }
      bool denom_eq = imL == imG;
      R.set_equal = fixed_eq && denom_eq;
      R.witnesses.push_back(std::string("fixed points ") +
                            (fixed_eq ? "equal as sets" : "DIFFER"));
      R.witnesses.push_back(std::string("[M,L] vs [M,G] ") +
                            (denom_eq ? "equal as sets" : "DIFFER"));
      R.witnesses.push_back("coinvariants lie=" + inv_str(h0_co(T), p) +
                            " group=" + inv_str(h0_co(GT), p));
      R.invariants_equal = R.invariants_equal && h0_co(T) == h0_co(GT);
    } else if (degree == 1) {
      LieH1 HL(T);
      GroupH1 HG(GT);
      R.lie_inv = HL.H().inv;
      R.group_inv = HG.H().inv;
      R.invariants_equal = R.lie_inv == R.group_inv;
      bool ok = R.lie_inv.size() == R.group_inv.size();
      std::vector<Vec> coords;
      std::vector<std::vector<Vec>> images;
      for (const Vec& rep : HL.H().reps) {
        Mat D = HL.matrix_of(rep);
        std::vector<Vec> F = transport_h1(T, D);
        images.push_back(F);
        coords.push_back(HG.class_coords([&](i64 g) { return F[g]; }));
        // round trip to the Lie side
        Mat Db = transport_h1_back(T, F);
        if (HL.class_coords(Db) != HL.class_coords(D)) ok = false;
      }
      if (!spans_all(R.group_inv, coords, p)) ok = false;
      // additivity of the transport on pairs of generators
      Module tm{p, R.group_inv};
      for (size_t i = 0; i < HL.H().reps.size() && ok; ++i)
        for (size_t j = i; j < HL.H().reps.size(); ++j) {
          Mat D = HL.matrix_of(HL.H().reps[i]);
          Mat Dj = HL.matrix_of(HL.H().reps[j]);
          Mat Ds(D.rows, D.cols, D.mod);
          for (int a = 0; a < D.rows; ++a)
            for (int b = 0; b < D.cols; ++b)
              Ds.at(a, b) = mod_norm(D.at(a, b) + Dj.at(a, b), D.mod);
          std::vector<Vec> F = transport_h1(T, Ds);
          Vec want = tm.add(coords[i], coords[j]);
          if (HG.class_coords([&](i64 g) { return F[g]; }) != want) ok = false;
        }
      R.transport_ok = ok;
      R.witnesses.push_back("transported generating set spans: " +
                            std::string(spans_all(R.group_inv, coords, p)
                                            ? "yes"
                                            : "no"));
    } else {
      LieH2 HL(T, max_elements);
      GroupH2 HG(GT, max_elements);
      R.lie_inv = HL.H().inv;
      R.group_inv = HG.H().inv;
      R.invariants_equal = R.lie_inv == R.group_inv;
      bool ok = true;
      std::vector<Vec> coords;
      std::vector<LieFactorSystem> systems;
      for (const Vec& rep : HL.H().reps) {
        LieFactorSystem s = HL.factor_system(rep);
        systems.push_back(s);
        GroupCocycle2 cg = transport_h2(T, s);
        coords.push_back(HG.class_coords(cg));
        LieFactorSystem sb = transport_h2_back(T, cg);
        if (HL.class_coords(sb) != HL.class_coords(s)) ok = false;
      }
      if (!spans_all(R.group_inv, coords, p)) ok = false;
      Module tm{p, R.group_inv};
      const Module& M = T.M;
      for (size_t i = 0; i < systems.size() && ok; ++i)
        for (size_t j = i; j < systems.size(); ++j) {
          LieFactorSystem sum;
          sum.g.reserve(systems[i].g.size());
          sum.f.reserve(systems[i].f.size());
          for (size_t t = 0; t < systems[i].g.size(); ++t) {
            sum.g.push_back(M.add(systems[i].g[t], systems[j].g[t]));
            sum.f.push_back(M.add(systems[i].f[t], systems[j].f[t]));
          }
          GroupCocycle2 cg = transport_h2(T, sum);
          if (HG.class_coords(cg) != tm.add(coords[i], coords[j])) ok = false;
        }
      R.transport_ok = ok;
      R.witnesses.push_back("transported generating set spans: " +
                            std::string(spans_all(R.group_inv, coords, p)
                                            ? "yes"
                                            : "no"));
    }
  } catch (const hypothesis_violation& e) {
    R.witnesses.push_back(std::string("aborted: ") + e.what());
  }
  R.witnesses.push_back("lie " + inv_str(R.lie_inv, p) + ", group " +
                        inv_str(R.group_inv, p));
  return R;
}

}  // namespace lazard
