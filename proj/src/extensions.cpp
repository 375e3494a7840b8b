#include <map>
#include <memory>
#include <stdexcept>

#include "lazard/cohomology.hpp"

namespace lazard {

// ===========================================================================
// group extensions on the carrier M x G

GroupExtension extension_from_cocycle(const GroupTriple& T,
                                      const GroupCocycle2& c) {
  std::string why;
  if (!cocycle_valid(T, c, &why))
    throw std::domain_error("invalid cocycle: " + why);
  auto Tsp = std::make_shared<GroupTriple>(T);
  auto fsp = std::make_shared<std::vector<Vec>>(c.f);
  auto base = std::make_shared<GroupOps>(group_ops(Tsp->G));

  GroupExtension E;
  E.M = T.M;
  E.nG = T.G.size();
  i64 nG = E.nG;
  E.ops.n = T.M.size() * nG;
  E.ops.id = base->id;  // m = 0 block
  E.ops.mul = [Tsp, fsp, base, nG](i64 a, i64 b) {
    const Module& M = Tsp->M;
    i64 xa = a % nG, xb = b % nG;
    Vec m = M.add(M.element(a / nG),
                  hom_apply(M, M, Tsp->phi[xa], M.element(b / nG)));
    m = M.add(m, (*fsp)[(size_t)xa * nG + xb]);
    return M.index_of(m) * nG + base->mul(xa, xb);
  };
  E.ops.inv = [Tsp, fsp, base, nG](i64 a) {
    const Module& M = Tsp->M;
    i64 x = a % nG;
    i64 xi = base->inv(x);
    Vec m = hom_apply(M, M, Tsp->phi[xi], M.element(a / nG));
    m = M.neg(M.add(m, (*fsp)[(size_t)xi * nG + x]));
    return M.index_of(m) * nG + xi;
  };
  for (i64 g : base->gens) E.ops.gens.push_back(g);  // (0, generator)
  for (int k = 0; k < T.M.rank(); ++k) {
    Vec e = T.M.zero();
    e[k] = 1;
    E.ops.gens.push_back(T.M.index_of(e) * nG + base->id);
  }
  // small carriers: assemble the full table and run the axiom checks
  if (E.ops.n <= 2048) {
    std::vector<int> table((size_t)E.ops.n * E.ops.n);
    for (i64 a = 0; a < E.ops.n; ++a)
      for (i64 b = 0; b < E.ops.n; ++b)
        table[(size_t)a * E.ops.n + b] = (int)E.ops.mul(a, b);
    make_cayley((int)E.ops.n, (int)E.ops.id, std::move(table));
  }
  return E;
}

GroupCocycle2 cocycle_from_extension(const GroupTriple& T,
                                     const GroupExtension& E) {
  const Module& M = T.M;
  i64 nG = E.nG;
  if (nG != T.G.size() || !(M.orders == T.M.orders))
    throw std::domain_error("extension does not match the triple");
  GroupOps base = group_ops(T.G);
  GroupCocycle2 out;
  out.f.assign((size_t)nG * nG, M.zero());
  for (i64 x = 0; x < nG; ++x)
    for (i64 y = 0; y < nG; ++y) {
      i64 w = E.ops.mul(x, y);  // s(x) s(y), sections are (0, .)
      i64 r = E.ops.mul(w, E.ops.inv(base.mul(x, y)));
      if (r % nG != base.id)
        throw std::logic_error("cocycle_from_extension: section defect");
      out.f[(size_t)x * nG + y] = M.element(r / nG);
    }
  return out;
}

// ===========================================================================
// the middle ring of a Lie factor system

LieExtension lie_ring_from_factor_system(const LieTriple& T,
                                         const LieFactorSystem& s) {
  std::string why;
  if (!factor_system_valid(T, s, &why))
    throw std::domain_error("invalid factor system: " + why);
  const Module& M = T.M;
  Module L = T.L.module();
  i64 p = M.p;
  int rM = M.rank(), rL = L.rank();
  i64 nL = L.size(), nM = M.size();
  std::vector<Vec> lelems;
  for (i64 i = 0; i < nL; ++i) lelems.push_back(L.element(i));

  // twisted addition on pair indices m * nL + a
  auto plus = [&](i64 u, i64 v) {
    i64 au = u % nL, av = v % nL;
    Vec m = M.add(M.element(u / nL), M.element(v / nL));
    m = M.add(m, s.g[(size_t)au * nL + av]);
    return M.index_of(m) * nL + L.index_of(L.add(lelems[au], lelems[av]));
  };
  auto brk = [&](i64 u, i64 v) {
    i64 au = u % nL, av = v % nL;
    Vec m = hom_apply(M, M, T.psi_of(lelems[au]), M.element(v / nL));
    m = M.sub(m, hom_apply(M, M, T.psi_of(lelems[av]), M.element(u / nL)));
    m = M.add(m, s.f[(size_t)au * nL + av]);
    return M.index_of(m) * nL +
           L.index_of(T.L.bracket(lelems[au], lelems[av]));
  };
  auto smul_pair = [&](i64 n, i64 u) {
    i64 acc = 0, base = u;
    while (n > 0) {
      if (n & 1) acc = plus(acc, base);
      base = plus(base, base);
      n >>= 1;
    }
    return acc;
  };

  // presentation of (M x L, +): generators mu_j (images of e_j^M) and xi_i
  // (images of (0, e_i)); relations p^{m_j} mu_j = 0 and
  // p^{l_i} xi_i = (sum of the g-corrections along the chain of e_i)
  int EE = M.max_order() + L.max_order();
  i64 modE = pow_i(p, EE);
  int ngen = rM + rL;
  auto gen_pair = [&](int j) -> i64 {
    if (j < rM) {
      Vec e = M.zero();
      e[j] = 1;
      return M.index_of(e) * nL;
    }
    Vec e = L.zero();
    e[j - rM] = 1;
    return L.index_of(e);
  };
  Mat R(ngen, ngen, modE);
  for (int j = 0; j < rM; ++j) R.at(j, j) = pow_i(p, M.orders[j]);
  for (int i = 0; i < rL; ++i) {
    R.at(rM + i, rM + i) = pow_i(p, L.orders[i]);
    i64 c = smul_pair(pow_i(p, L.orders[i]), gen_pair(rM + i));
    if (c % nL != 0)
      throw std::logic_error("factor system: basis power left the module");
    Vec cm = M.element(c / nL);
    for (int j = 0; j < rM; ++j) R.at(rM + i, j) = mod_norm(-cm[j], modE);
  }
  SmithLocal sm = smith_local(R, p);

  std::vector<int> keep, orders;
  for (int k = 0; k < ngen; ++k)
    if (sm.diag_val[k] > 0) {
      keep.push_back(k);
      orders.push_back(sm.diag_val[k]);
    }
  {
    int total = 0;
    for (int o : orders) total += o;
    int want = 0;
    for (int o : M.orders) want += o;
    for (int o : L.orders) want += o;
    if (total != want)
      throw std::logic_error("factor system: presentation size mismatch");
  }

  LieExtension X;
  X.M = M;
  X.L = L;
  X.ring.p = p;
  X.ring.orders = orders;
  for (size_t k = 0; k < keep.size(); ++k)
    X.ring.labels.push_back("u" + std::to_string(k));
  Module Emod = X.ring.module();

  // new basis elements as carrier pairs: eta_k = sum_j Vinv[keep_k][j] gen_j
  std::vector<i64> eta;
  for (int k : keep) {
    i64 acc = 0;
    for (int j = 0; j < ngen; ++j)
      acc = plus(acc, smul_pair(mod_norm(sm.Vinv.at(k, j), modE), gen_pair(j)));
    eta.push_back(acc);
  }
  // coordinates of a pair: subtract the canonical chain correction, read
  // generator coordinates, change basis by V, reduce by the diagonal
  X.coords_of_pair.assign((size_t)(nM * nL), Vec());
  X.pair_of_coords.assign((size_t)(nM * nL), -1);
  for (i64 a = 0; a < nL; ++a) {
    i64 chain = 0;
    for (int i = 0; i < rL; ++i)
      for (i64 t = 0; t < lelems[a][i]; ++t) chain = plus(chain, gen_pair(rM + i));
    if (chain % nL != a) throw std::logic_error("factor system: chain defect");
    Vec sigma = M.element(chain / nL);
    for (i64 mi = 0; mi < nM; ++mi) {
      Vec x(ngen, 0);
      Vec md = M.sub(M.element(mi), sigma);
      for (int j = 0; j < rM; ++j) x[j] = md[j];
      for (int i = 0; i < rL; ++i) x[rM + i] = lelems[a][i];
      Vec y(ngen, 0);
      for (int k = 0; k < ngen; ++k) {
        i64 acc = 0;
        for (int j = 0; j < ngen; ++j) acc += x[j] * sm.V.at(j, k) % modE;
        y[k] = mod_norm(acc, modE);
      }
      Vec coords(keep.size(), 0);
      for (size_t k = 0; k < keep.size(); ++k)
        coords[k] = mod_norm(y[keep[k]], pow_i(p, orders[k]));
      i64 pair = mi * nL + a;
      X.coords_of_pair[pair] = coords;
      i64 ei = Emod.index_of(coords);
      if (X.pair_of_coords[ei] != -1)
        throw std::logic_error("factor system: coordinates not injective");
      X.pair_of_coords[ei] = pair;
    }
  }

  // structure constants through the carrier bracket
  int rE = (int)keep.size();
  X.ring.sc.assign(rE, std::vector<Vec>(rE, Emod.zero()));
  for (int k = 0; k < rE; ++k)
    for (int l = 0; l < rE; ++l)
      X.ring.sc[k][l] = X.coords_of_pair[brk(eta[k], eta[l])];
  {
    std::vector<std::string> errs = validate(X.ring);
    if (!errs.empty())
      throw std::logic_error("factor system produced an invalid ring: " +
                             errs.front());
    // spot-check that coordinates transport both operations
    i64 total = nM * nL;
    i64 step = std::max<i64>(1, total * total / 4096);
    for (i64 t = 0; t < total * total; t += step) {
      i64 u = t / total, v = t % total;
      Vec su = Emod.add(X.coords_of_pair[u], X.coords_of_pair[v]);
      if (su != X.coords_of_pair[plus(u, v)])
        throw std::logic_error("factor system: addition mismatch");
      Vec bu = X.ring.bracket(X.coords_of_pair[u], X.coords_of_pair[v]);
      if (bu != X.coords_of_pair[brk(u, v)])
        throw std::logic_error("factor system: bracket mismatch");
    }
  }
  return X;
}

// ===========================================================================
// Baer sums

GroupCocycle2 baer_sum(const GroupTriple& T, const GroupCocycle2& a,
                       const GroupCocycle2& b) {
  i64 nG = T.G.size();
  if (a.f.size() != b.f.size() || (i64)a.f.size() != nG * nG)
    throw std::domain_error("baer_sum: boundary data mismatch");
  std::string why;
  if (!cocycle_valid(T, a, &why) || !cocycle_valid(T, b, &why))
    throw std::domain_error("baer_sum: invalid cocycle: " + why);
  const Module& M = T.M;
  i64 nM = M.size();
  GroupOps base = group_ops(T.G);

  // pull-back over G: carrier (m1, m2, x), index ((m1 nM) + m2) nG + x
  GroupOps P;
  P.n = nM * nM * nG;
  P.id = base.id;
  auto pidx = [nM, nG](i64 m1, i64 m2, i64 x) {
    return (m1 * nM + m2) * nG + x;
  };
  P.mul = [&](i64 u, i64 v) {
    i64 x = u % nG, y = v % nG;
    i64 m1 = u / nG / nM, m2 = u / nG % nM;
    i64 n1 = v / nG / nM, n2 = v / nG % nM;
    Vec w1 = M.add(M.element(m1), hom_apply(M, M, T.phi[x], M.element(n1)));
    w1 = M.add(w1, a.f[(size_t)x * nG + y]);
    Vec w2 = M.add(M.element(m2), hom_apply(M, M, T.phi[x], M.element(n2)));
    w2 = M.add(w2, b.f[(size_t)x * nG + y]);
    return pidx(M.index_of(w1), M.index_of(w2), base.mul(x, y));
  };
  P.inv = [&](i64 u) {
    // brute inverse via the component formulas of each factor
    i64 x = u % nG;
    i64 xi = base.inv(x);
    Vec w1 = hom_apply(M, M, T.phi[xi], M.element(u / nG / nM));
    w1 = M.neg(M.add(w1, a.f[(size_t)xi * nG + x]));
    Vec w2 = hom_apply(M, M, T.phi[xi], M.element(u / nG % nM));
    w2 = M.neg(M.add(w2, b.f[(size_t)xi * nG + x]));
    return pidx(M.index_of(w1), M.index_of(w2), xi);
  };

  // anti-diagonal {(m, -m, 1)}
  ElemSet D;
  for (i64 m = 0; m < nM; ++m)
    D.push_back(pidx(m, M.index_of(M.neg(M.element(m))), base.id));
  std::sort(D.begin(), D.end());
  QuotientGroup Q = quotient_group(P, D);

  std::map<int, i64> mtab;  // iota(m) coset -> m
  for (i64 m = 0; m < nM; ++m) mtab[Q.coset_of[pidx(m, 0, base.id)]] = m;
  GroupCocycle2 out;
  out.f.assign((size_t)nG * nG, M.zero());
  auto sec = [&](i64 x) { return Q.coset_of[pidx(0, 0, x)]; };
  for (i64 x = 0; x < nG; ++x)
    for (i64 y = 0; y < nG; ++y) {
      int r = Q.grp.mul(Q.grp.mul(sec(x), sec(y)),
                        Q.grp.inv(sec(base.mul(x, y))));
      auto it = mtab.find(r);
      if (it == mtab.end())
        throw std::logic_error("baer_sum: section defect");
      out.f[(size_t)x * nG + y] = M.element(it->second);
    }
  return out;
}

LieFactorSystem baer_sum(const LieTriple& T, const LieFactorSystem& a,
                         const LieFactorSystem& b) {
  Module L = T.L.module();
  i64 nL = L.size();
  if (a.g.size() != b.g.size() || (i64)a.g.size() != nL * nL)
    throw std::domain_error("baer_sum: boundary data mismatch");
  const Module& M = T.M;
  i64 nM = M.size();

  LieExtension X1 = lie_ring_from_factor_system(T, a);
  LieExtension X2 = lie_ring_from_factor_system(T, b);
  NilLieRing DS = direct_sum(X1.ring, X2.ring);
  Module DSm = DS.module();
  int r1 = X1.ring.rank();
  auto concat = [&](const Vec& u, const Vec& v) {
    Vec w = u;
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  auto pair1 = [&](i64 m, i64 x) {
    return X1.coords_of_pair[m * nL + x];
  };
  auto pair2 = [&](i64 m, i64 x) {
    return X2.coords_of_pair[m * nL + x];
  };

  // pull-back subring P: spanned by the diagonal sections and both copies
  // of M
  std::vector<Vec> pgens;
  for (int i = 0; i < T.L.rank(); ++i) {
    Vec e = L.zero();
    e[i] = 1;
    i64 xi = L.index_of(e);
    pgens.push_back(concat(pair1(0, xi), pair2(0, xi)));
  }
  for (int k = 0; k < M.rank(); ++k) {
    Vec e = M.zero();
    e[k] = 1;
    i64 mk = M.index_of(e);
    pgens.push_back(concat(pair1(mk, 0), X2.ring.module().zero()));
    pgens.push_back(concat(X1.ring.module().zero(), pair2(mk, 0)));
  }
  SubquotientMap Pmap(DSm, pgens, {});
  NilLieRing Pring;
  Pring.p = T.L.p;
  Pring.orders = Pmap.invariants();
  for (size_t k = 0; k < Pring.orders.size(); ++k)
    Pring.labels.push_back("v" + std::to_string(k));
  int rP = (int)Pring.orders.size();
  Pring.sc.assign(rP, std::vector<Vec>(rP, Vec(rP, 0)));
  for (int k = 0; k < rP; ++k)
    for (int l = 0; l < rP; ++l) {
      Vec ck(rP, 0), cl(rP, 0);
      ck[k] = 1;
      cl[l] = 1;
      Vec bk = DS.bracket(Pmap.lift(ck), Pmap.lift(cl));
      Pring.sc[k][l] = Pmap.project(bk);
    }
  {
    std::vector<std::string> errs = validate(Pring);
    if (!errs.empty())
      throw std::logic_error("baer_sum: pull-back is not a ring: " +
                             errs.front());
  }
  // anti-diagonal ideal {(iota1(m), -iota2(m))}
  Submodule D(Pring.module());
  for (i64 m = 0; m < nM; ++m) {
    i64 mneg = M.index_of(M.neg(M.element(m)));
    D.add(Pmap.project(concat(pair1(m, 0), pair2(mneg, 0))));
  }
  QuotientRing Q = quotient_ring(Pring, D);
  Module Qm = Q.ring.module();

  auto into_q = [&](const Vec& ds) { return Q.onto.project(Pmap.project(ds)); };
  std::map<i64, i64> mtab;
  for (i64 m = 0; m < nM; ++m)
    mtab[Qm.index_of(into_q(concat(pair1(m, 0), pair2(0, 0))))] = m;
  auto read_m = [&](const Vec& q) {
    auto it = mtab.find(Qm.index_of(q));
    if (it == mtab.end()) throw std::logic_error("baer_sum: section defect");
    return M.element(it->second);
  };

  std::vector<Vec> sec(nL);
  for (i64 x = 0; x < nL; ++x)
    sec[x] = into_q(concat(pair1(0, x), pair2(0, x)));
  LieFactorSystem out;
  out.g.assign((size_t)nL * nL, M.zero());
  out.f.assign((size_t)nL * nL, M.zero());
  std::vector<Vec> lelems;
  for (i64 i = 0; i < nL; ++i) lelems.push_back(L.element(i));
  for (i64 x = 0; x < nL; ++x)
    for (i64 y = 0; y < nL; ++y) {
      i64 xy = L.index_of(L.add(lelems[x], lelems[y]));
      out.g[(size_t)x * nL + y] =
          read_m(Qm.sub(Qm.add(sec[x], sec[y]), sec[xy]));
      i64 bxy = L.index_of(T.L.bracket(lelems[x], lelems[y]));
      out.f[(size_t)x * nL + y] =
          read_m(Qm.sub(Q.ring.bracket(sec[x], sec[y]), sec[bxy]));
    }
  return out;
}

std::vector<Vec> baer_sum_crossed(const GroupTriple& T,
                                  const std::vector<Vec>& F1,
                                  const std::vector<Vec>& F2) {
  const Module& M = T.M;
  i64 n = T.G.size();
  if ((i64)F1.size() != n || (i64)F2.size() != n)
    throw std::domain_error("baer_sum_crossed: boundary data mismatch");
  int rM = M.rank();
  int E = M.max_order();
  i64 mod = pow_i(M.p, E);
  // pull-back module M + M + Z/p^E with action
  // [[phi, 0, F1], [0, phi, F2], [0, 0, 1]], then the quotient by the
  // anti-diagonal {(m, -m, 0)}
  std::vector<int> aords = M.orders;
  aords.insert(aords.end(), M.orders.begin(), M.orders.end());
  aords.push_back(E);
  Module A{M.p, aords};
  int rA = A.rank();
  std::vector<Vec> zgens;
  for (int j = 0; j < rA; ++j) {
    Vec e = A.zero();
    e[j] = 1;
    zgens.push_back(e);
  }
  std::vector<Vec> bgens;
  for (int k = 0; k < rM; ++k) {
    Vec d = A.zero();
    d[k] = 1;
    d[rM + k] = mod_norm(-1, A.mod_of(rM + k));
    bgens.push_back(d);
  }
  SubquotientMap Q(A, zgens, bgens);

  auto act = [&](i64 x, const Vec& v) {
    Vec m1(v.begin(), v.begin() + rM);
    Vec m2(v.begin() + rM, v.begin() + 2 * rM);
    i64 z = v[2 * rM];
    Vec w1 = M.add(hom_apply(M, M, T.phi[x], M.reduce(m1)),
                   M.smul(z, F1[x]));
    Vec w2 = M.add(hom_apply(M, M, T.phi[x], M.reduce(m2)),
                   M.smul(z, F2[x]));
    Vec w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    w.push_back(z);
    return A.reduce(w);
  };
  // the action must descend to the quotient: anti-diagonal -> anti-diagonal
  for (i64 x = 0; x < n; ++x)
    for (const Vec& d : bgens)
      if (!Q.is_trivial_class(act(x, d)))
        throw std::logic_error("baer_sum_crossed: action does not descend");

  // identify the quotient with M + Z/p^E through the section (m, 0, z) and
  // read the crossed hom off the class of the image of (0, 0, 1)
  auto msec = [&](const Vec& m, i64 z) {
    Vec v = m;
    v.insert(v.end(), rM, 0);
    v.push_back(z);
    return Q.project(A.reduce(v));
  };
  std::map<Vec, std::pair<Vec, i64>> back;
  for (i64 mi = 0; mi < M.size(); ++mi)
    for (i64 z = 0; z < pow_i(M.p, E); ++z)
      back[msec(M.element(mi), z)] = {M.element(mi), z};
  std::vector<Vec> out(n, M.zero());
  Vec unit = A.zero();
  unit[2 * rM] = 1;
  for (i64 x = 0; x < n; ++x) {
    auto it = back.find(Q.project(act(x, unit)));
    if (it == back.end() || it->second.second != 1)
      throw std::logic_error("baer_sum_crossed: section defect");
    out[x] = it->second.first;
  }
  (void)mod;
  return out;
}

}  // namespace lazard
