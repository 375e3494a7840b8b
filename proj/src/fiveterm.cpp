#include "lazard/fiveterm.hpp"

#include <stdexcept>

namespace lazard {

namespace {

std::vector<Vec> unit_vectors(const Module& m) {
  std::vector<Vec> out;
  for (int i = 0; i < m.rank(); ++i) {
    Vec e = m.zero();
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

// span of pS + [L, S] for a submodule S (an ideal when S is one)
Submodule frattini_part(const NilLieRing& L, const Submodule& S) {
  Module m = L.module();
  std::vector<Vec> gens;
  for (const Vec& b : S.basis()) {
    gens.push_back(m.smul(L.p, b));
    for (int i = 0; i < L.rank(); ++i) {
      Vec e = m.zero();
      e[i] = 1;
      gens.push_back(L.bracket(e, b));
    }
  }
  return Submodule(m, gens);
}

bool set_matches_span(const Module& m, const ElemSet& s, const Submodule& S) {
  if ((i64)s.size() != S.size()) return false;
  for (i64 x : s)
    if (!S.member(m.element(x))) return false;
  return true;
}

struct Setup {
  NilLieRing L;
  Module Lm;
  i64 p, n;
  Submodule I;
  QuotientRing Q;
  Module Qm;
  i64 nQ;
  LazardGroup G, GQ;
  std::vector<i64> pi;   // ambient element index -> quotient element index
  std::vector<i64> sec;  // quotient index -> first ambient preimage
  ElemSet Nset;

  Setup(const NilLieRing& ring, const std::vector<Vec>& ideal_gens)
      : L(ring),
        Lm(L.module()),
        p(L.p),
        n(Lm.size()),
        I(Lm, ideal_gens),
        Q(quotient_ring(L, I)),
        Qm(Q.ring.module()),
        nQ(Qm.size()),
        G(L),
        GQ(Q.ring) {
    if (!is_ideal(L, I))
      throw std::domain_error("five-term: generators do not span an ideal");
    pi.resize(n);
    sec.assign(nQ, -1);
    for (i64 x = 0; x < n; ++x) {
      pi[x] = Qm.index_of(Q.onto.project(Lm.element(x)));
      if (sec[pi[x]] < 0) sec[pi[x]] = x;
      if (pi[x] == pi[0]) Nset.push_back(x);
    }
  }
};

LieTriple trivial_triple(const NilLieRing& L) {
  LieTriple T;
  T.L = L;
  T.M = Module{L.p, {1}};
  T.psi.assign(L.rank(), hom_zero(T.M, T.M));
  return T;
}

GroupTriple trivial_group_triple(const LazardGroup& G) {
  Module M{G.p(), {1}};
  std::vector<Mat> phi(G.size(), hom_identity(M));
  return GroupTriple(G, M, std::move(phi));
}

GroupCocycle2 transgress_group_impl(const Setup& S,
                                    const std::vector<i64>& f) {
  GroupOps go = group_ops(S.G);
  GroupCocycle2 c;
  c.f.assign((size_t)S.nQ * S.nQ, Vec{0});
  for (i64 x = 0; x < S.nQ; ++x)
    for (i64 y = 0; y < S.nQ; ++y) {
      i64 prod = go.mul(S.sec[x], S.sec[y]);
      i64 nn = go.mul(prod, go.inv(S.sec[S.pi[prod]]));
      if (S.pi[nn] != S.pi[0])
        throw std::logic_error("transgression: section defect");
      c.f[x * S.nQ + y] = {mod_norm(f[nn], S.p)};
    }
  return c;
}

LieFactorSystem transgress_lie_impl(const Setup& S,
                                    const std::vector<i64>& f) {
  LieFactorSystem s;
  s.g.assign((size_t)S.nQ * S.nQ, Vec{0});
  s.f.assign((size_t)S.nQ * S.nQ, Vec{0});
  for (i64 x = 0; x < S.nQ; ++x)
    for (i64 y = 0; y < S.nQ; ++y) {
      Vec sum = S.Lm.add(S.Lm.element(S.sec[x]), S.Lm.element(S.sec[y]));
      Vec dg = S.Lm.sub(sum, S.Lm.element(S.sec[S.pi[S.Lm.index_of(sum)]]));
      Vec br = S.L.bracket(S.Lm.element(S.sec[x]), S.Lm.element(S.sec[y]));
      Vec df = S.Lm.sub(br, S.Lm.element(S.sec[S.pi[S.Lm.index_of(br)]]));
      if (!S.I.member(dg) || !S.I.member(df))
        throw std::logic_error("transgression: section defect");
      s.g[x * S.nQ + y] = {mod_norm(f[S.Lm.index_of(dg)], S.p)};
      s.f[x * S.nQ + y] = {mod_norm(f[S.Lm.index_of(df)], S.p)};
    }
  return s;
}

// im(columns of `into`) == ker(`out`), everything mod p elementary abelian
bool exact_at(const Mat& into, const Mat& out, i64 p) {
  Module mid{p, std::vector<int>(out.cols, 1)};
  std::vector<Vec> im;
  for (int j = 0; j < into.cols; ++j) {
    Vec v(into.rows);
    for (int i = 0; i < into.rows; ++i) v[i] = into.at(i, j);
    im.push_back(v);
  }
  Submodule image(mid, im);
  Submodule kernel(mid, right_kernel(out, p));
  return image == kernel;
}

Vec column(const Mat& m, int j) {
  Vec v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

}  // namespace

SubquotientMap h1_hom(const NilLieRing& L) {
  Module m = L.module();
  std::vector<Vec> whole = unit_vectors(m);
  std::vector<Vec> b;
  for (const Vec& e : unit_vectors(m)) b.push_back(m.smul(L.p, e));
  for (int i = 0; i < L.rank(); ++i)
    for (int j = i + 1; j < L.rank(); ++j) {
      Vec ei = m.zero(), ej = m.zero();
      ei[i] = 1;
      ej[j] = 1;
      b.push_back(L.bracket(ei, ej));
    }
  return SubquotientMap(m, whole, b);
}

SubquotientMap h1_fixed(const NilLieRing& L,
                        const std::vector<Vec>& ideal_gens) {
  Module m = L.module();
  Submodule I(m, ideal_gens);
  if (!is_ideal(L, I))
    throw std::domain_error("h1_fixed: generators do not span an ideal");
  return SubquotientMap(m, I.basis(), frattini_part(L, I).basis());
}

GroupCocycle2 transgress_group(const NilLieRing& L,
                               const std::vector<Vec>& ideal_gens,
                               const std::vector<i64>& f_on_ambient) {
  Setup S(L, ideal_gens);
  return transgress_group_impl(S, f_on_ambient);
}

LieFactorSystem transgress_lie(const NilLieRing& L,
                               const std::vector<Vec>& ideal_gens,
                               const std::vector<i64>& f_on_ambient) {
  Setup S(L, ideal_gens);
  return transgress_lie_impl(S, f_on_ambient);
}

bool FiveTermReport::verdict() const {
  auto all = [](const std::vector<bool>& v) {
    for (bool b : v)
      if (!b) return false;
    return true;
  };
  return lie_inv == group_inv && all(lie_exact) && all(group_exact) &&
         injective_start && carriers_match && squares_commute;
}

FiveTermReport five_term_verify(const NilLieRing& L,
                                const std::vector<Vec>& ideal_gens) {
  if (nilpotency_class(L) >= (int)L.p - 1)
    throw hypothesis_violation(
        "hypothesis of the five-term proposition violated: need c < p-1");
  Setup S(L, ideal_gens);
  i64 p = S.p;
  FiveTermReport R;
  R.note =
      "transgression kernel term: Ker(f) = M/(N^p[G,N]) with coefficient "
      "group N/M = F_p";

  // degree-1 coordinate systems (shared carriers across the two rows)
  SubquotientMap DQ = h1_hom(S.Q.ring);
  SubquotientMap DL = h1_hom(S.L);
  Submodule KL = frattini_part(S.L, S.I);
  SubquotientMap DN(S.Lm, S.I.basis(), KL.basis());
  int rA = (int)DQ.invariants().size();
  int rB = (int)DL.invariants().size();
  int rC = (int)DN.invariants().size();

  // the group row generates its subgroups with group operations; they must
  // coincide with the Lie spans element-for-element
  GroupOps go = group_ops(S.G);
  GroupOps gq = group_ops(S.GQ);
  ElemSet full(S.n);
  for (i64 x = 0; x < S.n; ++x) full[x] = x;
  ElemSet fullQ(S.nQ);
  for (i64 x = 0; x < S.nQ; ++x) fullQ[x] = x;
  ElemSet SG = agemo_mixed(go, full, p);
  ElemSet SQg = agemo_mixed(gq, fullQ, p);
  ElemSet KG = agemo_mixed(go, S.Nset, p);
  Submodule SL = frattini_part(S.L, Submodule(S.Lm, unit_vectors(S.Lm)));
  Submodule SQ = frattini_part(S.Q.ring,
                               Submodule(S.Qm, unit_vectors(S.Qm)));
  R.carriers_match = set_matches_span(S.Lm, SG, SL) &&
                     set_matches_span(S.Qm, SQg, SQ) &&
                     set_matches_span(S.Lm, KG, KL);
  if (!R.carriers_match) R.witnesses.push_back("degree-1 carriers differ");

  // degree-2 models
  LieTriple TQ = trivial_triple(S.Q.ring);
  LieTriple TL = trivial_triple(S.L);
  LieH2 HLQ(TQ, S.n);
  LieH2 HLL(TL, S.n);
  GroupH2 HGQ(trivial_group_triple(S.GQ), S.n);
  GroupH2 HGL(trivial_group_triple(S.G), S.n);

  auto ones = [](int r) { return InvariantFactors((size_t)r, 1); };
  R.lie_inv = {ones(rA), ones(rB), ones(rC), HLQ.H().inv, HLL.H().inv};
  // group row degree-1 ranks from the group-generated subgroups
  auto logp = [&](i64 total, size_t sub) {
    int r = 0;
    i64 q = total / (i64)sub;
    while (q > 1) q /= p, ++r;
    return r;
  };
  R.group_inv = {ones(logp(S.nQ, SQg.size())), ones(logp(S.n, SG.size())),
                 ones(logp((i64)S.Nset.size(), KG.size())), HGQ.H().inv,
                 HGL.H().inv};

  // inflation H^1(G/N) -> H^1(G): precompose with the projection
  Mat m1(rB, rA, p);
  for (int k = 0; k < rA; ++k) {
    for (int i = 0; i < rB; ++i) {
      Vec lift = DL.lift([&] {
        Vec e(rB, 0);
        e[i] = 1;
        return e;
      }());
      m1.at(i, k) = DQ.project(S.Q.onto.project(lift))[k];
    }
  }
  // restriction H^1(G) -> H^1(N)^{G/N}: evaluate on the fixed-part basis
  Mat m2(rC, rB, p);
  for (int k = 0; k < rB; ++k)
    for (int j = 0; j < rC; ++j) {
      Vec e(rC, 0);
      e[j] = 1;
      m2.at(j, k) = DL.project(DN.lift(e))[k];
    }

  // transgression columns, per fixed-part basis functional
  Mat m3L((int)HLQ.H().inv.size(), rC, p);
  Mat m3G((int)HGQ.H().inv.size(), rC, p);
  std::vector<GroupCocycle2> tr_g;
  std::vector<LieFactorSystem> tr_l;
  for (int k = 0; k < rC; ++k) {
    std::vector<i64> f(S.n, 0);
    for (i64 x : S.Nset) f[x] = DN.project(S.Lm.element(x))[k];
    tr_l.push_back(transgress_lie_impl(S, f));
    tr_g.push_back(transgress_group_impl(S, f));
    Vec cl = HLQ.class_coords(tr_l.back());
    Vec cg = HGQ.class_coords(tr_g.back());
    for (int i = 0; i < m3L.rows; ++i) m3L.at(i, k) = cl[i];
    for (int i = 0; i < m3G.rows; ++i) m3G.at(i, k) = cg[i];
  }

  // degree-2 inflation: pull cocycles back along the projection
  auto pull_lie = [&](const LieFactorSystem& s) {
    LieFactorSystem out;
    out.g.assign((size_t)S.n * S.n, Vec{0});
    out.f.assign((size_t)S.n * S.n, Vec{0});
    for (i64 a = 0; a < S.n; ++a)
      for (i64 b = 0; b < S.n; ++b) {
        out.g[a * S.n + b] = s.g[S.pi[a] * S.nQ + S.pi[b]];
        out.f[a * S.n + b] = s.f[S.pi[a] * S.nQ + S.pi[b]];
      }
    return out;
  };
  auto pull_group = [&](const GroupCocycle2& c) {
    GroupCocycle2 out;
    out.f.assign((size_t)S.n * S.n, Vec{0});
    for (i64 a = 0; a < S.n; ++a)
      for (i64 b = 0; b < S.n; ++b)
        out.f[a * S.n + b] = c.f[S.pi[a] * S.nQ + S.pi[b]];
    return out;
  };
  int rD = (int)HLQ.H().inv.size();
  Mat m4L((int)HLL.H().inv.size(), rD, p);
  std::vector<LieFactorSystem> dreps;
  for (int k = 0; k < rD; ++k) {
    Vec e(rD, 0);
    e[k] = 1;
    dreps.push_back(HLQ.factor_system(HLQ.H().pres.lift(e)));
    Vec cl = HLL.class_coords(pull_lie(dreps.back()));
    for (int i = 0; i < m4L.rows; ++i) m4L.at(i, k) = cl[i];
  }
  int rDg = (int)HGQ.H().inv.size();
  Mat m4G((int)HGL.H().inv.size(), rDg, p);
  for (int k = 0; k < rDg; ++k) {
    Vec e(rDg, 0);
    e[k] = 1;
    GroupCocycle2 c = HGQ.cocycle(HGQ.H().pres.lift(e));
    Vec cg = HGL.class_coords(pull_group(c));
    for (int i = 0; i < m4G.rows; ++i) m4G.at(i, k) = cg[i];
  }

  R.lie_maps = {m1, m2, m3L, m4L};
  R.group_maps = {m1, m2, m3G, m4G};
  R.lie_exact = {exact_at(m1, m2, p), exact_at(m2, m3L, p),
                 exact_at(m3L, m4L, p)};
  R.group_exact = {exact_at(m1, m2, p), exact_at(m2, m3G, p),
                   exact_at(m3G, m4G, p)};
  R.injective_start = Submodule(Module{p, std::vector<int>(rA, 1)},
                                right_kernel(m1, p))
                          .is_zero();

  // square with the exp/log transport at the transgression node
  R.squares_commute = true;
  for (int k = 0; k < rC; ++k) {
    LieFactorSystem back = transport_h2_back(TQ, tr_g[k]);
    if (HLQ.class_coords(back) != column(m3L, k)) {
      R.squares_commute = false;
      R.witnesses.push_back("transgression square fails at basis " +
                            std::to_string(k));
    }
  }
  // and at the degree-2 inflation node
  for (int k = 0; k < rD; ++k) {
    GroupCocycle2 c = transport_h2(TQ, dreps[k]);
    LieFactorSystem back = transport_h2_back(TL, pull_group(c));
    if (HLL.class_coords(back) != column(m4L, k)) {
      R.squares_commute = false;
      R.witnesses.push_back("inflation square fails at basis " +
                            std::to_string(k));
    }
  }
  return R;
}

}  // namespace lazard
