#include "lazard/crossedmod.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "lazard/freelie.hpp"

namespace lazard {

// ---------------------------------------------------------------------------
// TableLie

i64 TableLie::smul(i64 k, i64 a) const {
  i64 m = mod_norm(k, pow_i(p, e));
  i64 acc = zero, base = a;
  while (m > 0) {
    if (m & 1) acc = add(acc, base);
    base = add(base, base);
    m >>= 1;
  }
  return acc;
}

TableLie table_lie(const NilLieRing& L) {
  Module m = L.module();
  i64 n = m.size();
  TableLie t;
  t.p = L.p;
  t.e = std::max(1, m.max_order());
  t.n = n;
  t.zero = m.index_of(m.zero());
  t.addt.resize((size_t)n * n);
  t.negt.resize(n);
  t.brt.resize((size_t)n * n);
  for (i64 a = 0; a < n; ++a) {
    Vec va = m.element(a);
    t.negt[a] = m.index_of(m.neg(va));
    for (i64 b = 0; b < n; ++b) {
      Vec vb = m.element(b);
      t.addt[(size_t)a * n + b] = m.index_of(m.add(va, vb));
      t.brt[(size_t)a * n + b] = m.index_of(m.reduce(L.bracket(va, vb)));
    }
  }
  return t;
}

namespace {

// additive order of every element must be a p-power; returns max exponent
int table_exponent(i64 p, i64 n, i64 zero,
                   const std::function<i64(i64, i64)>& add) {
  int e = 1;
  for (i64 a = 0; a < n; ++a) {
    i64 x = a, ord = 1;
    while (x != zero) {
      x = add(x, a);
      ++ord;
    }
    int k = 0;
    i64 q = 1;
    while (q < ord) {
      q *= p;
      ++k;
    }
    if (q != ord) throw std::logic_error("carrier is not a p-module");
    e = std::max(e, k);
  }
  return e;
}

int cayley_exponent(const CayleyGroup& G, i64 p) {
  return table_exponent(p, G.n, G.id,
                        [&](i64 a, i64 b) { return (i64)G.mul((int)a, (int)b); });
}

}  // namespace

ElemSet lie_span(const TableLie& L, const ElemSet& gens) {
  std::set<i64> seen = {L.zero};
  std::vector<i64> frontier = {L.zero};
  std::vector<i64> gg;
  for (i64 g : gens) {
    gg.push_back(g);
    gg.push_back(L.neg(g));
  }
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 a : frontier)
      for (i64 g : gg) {
        i64 b = L.add(a, g);
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return ElemSet(seen.begin(), seen.end());
}

std::vector<ElemSet> lie_gamma(const TableLie& L) {
  ElemSet full(L.n);
  for (i64 i = 0; i < L.n; ++i) full[i] = i;
  std::vector<ElemSet> out = {full};
  while (out.back().size() > 1) {
    std::set<i64> gens;
    for (i64 x : out.back())
      for (i64 y = 0; y < L.n; ++y) gens.insert(L.br(x, y));
    ElemSet next = lie_span(L, ElemSet(gens.begin(), gens.end()));
    if (next.size() >= out.back().size())
      throw std::logic_error("lie_gamma: lower central series stalled");
    out.push_back(next);
  }
  return out;
}

int lie_class(const TableLie& L) {
  return static_cast<int>(lie_gamma(L).size()) - 1;
}

// ---------------------------------------------------------------------------
// Axiom checking. One message per violated family, exhaustive scan within.

namespace {

std::string at2(const char* what, i64 a, i64 b) {
  return std::string(what) + " fails at (" + std::to_string(a) + ", " +
         std::to_string(b) + ")";
}

}  // namespace

std::vector<std::string> check_axioms(const GroupCrossedModule& X) {
  std::vector<std::string> v;
  i64 n = X.H.n, n1 = X.G1.n, nm = X.M.size();
  if ((i64)X.mu.size() != n || (i64)X.eta.size() != n1 ||
      (i64)X.alpha.size() != n1 || (i64)X.ker.size() != nm) {
    v.push_back("structure maps have the wrong shape");
    return v;
  }
  for (i64 g = 0; g < n1; ++g)
    if ((i64)X.eta[g].size() != n) {
      v.push_back("structure maps have the wrong shape");
      return v;
    }
  auto mul1 = [&](i64 a, i64 b) { return (i64)X.G1.mul((int)a, (int)b); };
  auto inv1 = [&](i64 a) { return (i64)X.G1.inv((int)a); };
  auto mulh = [&](i64 a, i64 b) { return (i64)X.H.mul((int)a, (int)b); };
  auto invh = [&](i64 a) { return (i64)X.H.inv((int)a); };

  for (i64 a = 0; a < n && v.empty(); ++a)
    for (i64 b = 0; b < n; ++b)
      if (X.mu[mulh(a, b)] != mul1(X.mu[a], X.mu[b])) {
        v.push_back(at2("mu is not a homomorphism", a, b));
        break;
      }

  bool eta_ok = true;
  for (i64 g = 0; g < n1 && eta_ok; ++g) {
    std::vector<char> hit(n, 0);
    for (i64 x = 0; x < n; ++x) hit[X.eta[g][x]] = 1;
    for (i64 x = 0; x < n; ++x)
      if (!hit[x]) {
        v.push_back("eta(" + std::to_string(g) + ") is not a bijection");
        eta_ok = false;
        break;
      }
    for (i64 a = 0; a < n && eta_ok; ++a)
      for (i64 b = 0; b < n; ++b)
        if (X.eta[g][mulh(a, b)] != mulh(X.eta[g][a], X.eta[g][b])) {
          v.push_back("eta(" + std::to_string(g) + ") " +
                      at2("is not an automorphism:", a, b));
          eta_ok = false;
          break;
        }
  }
  for (i64 g = 0; g < n1 && eta_ok; ++g) {
    for (i64 h = 0; h < n1 && eta_ok; ++h) {
      i64 gh = mul1(g, h);
      for (i64 x = 0; x < n; ++x)
        if (X.eta[gh][x] != X.eta[g][X.eta[h][x]]) {
          v.push_back(at2("eta is not an action", g, h));
          eta_ok = false;
          break;
        }
    }
  }

  for (i64 g = 0; g < n1; ++g) {
    bool ok = true;
    for (i64 x = 0; x < n && ok; ++x)
      if (X.mu[X.eta[g][x]] != mul1(mul1(g, X.mu[x]), inv1(g))) {
        v.push_back(at2("axiom (i)", g, x));
        ok = false;
      }
    if (!ok) break;
  }
  for (i64 a = 0; a < n; ++a) {
    bool ok = true;
    for (i64 b = 0; b < n && ok; ++b)
      if (X.eta[X.mu[a]][b] != mulh(mulh(a, b), invh(a))) {
        v.push_back(at2("axiom (ii)", a, b));
        ok = false;
      }
    if (!ok) break;
  }

  // kernel: ker is an injective homomorphism onto {mu = 1}, central in H
  std::set<i64> kimg;
  for (i64 m = 0; m < nm; ++m) kimg.insert(X.ker[m]);
  if ((i64)kimg.size() != nm) v.push_back("kernel map is not injective");
  bool khom = true;
  for (i64 m1 = 0; m1 < nm && khom; ++m1)
    for (i64 m2 = 0; m2 < nm; ++m2) {
      i64 s = X.M.index_of(X.M.add(X.M.element(m1), X.M.element(m2)));
      if (X.ker[s] != mulh(X.ker[m1], X.ker[m2])) {
        v.push_back(at2("kernel map is not a homomorphism", m1, m2));
        khom = false;
        break;
      }
    }
  std::set<i64> muker;
  for (i64 x = 0; x < n; ++x)
    if (X.mu[x] == X.G1.id) muker.insert(x);
  if (muker != kimg) v.push_back("designated kernel differs from ker mu");
  bool central = true;
  for (i64 k : kimg) {
    for (i64 x = 0; x < n; ++x)
      if (mulh(k, x) != mulh(x, k)) {
        v.push_back("kernel is not central in H");
        central = false;
        break;
      }
    if (!central) break;
  }

  // cokernel: alpha onto with ker alpha = im mu
  bool ahom = true;
  for (i64 a = 0; a < n1 && ahom; ++a)
    for (i64 b = 0; b < n1; ++b)
      if (X.alpha[mul1(a, b)] !=
          (i64)X.G2.mul((int)X.alpha[a], (int)X.alpha[b])) {
        v.push_back(at2("alpha is not a homomorphism", a, b));
        ahom = false;
        break;
      }
  std::set<i64> aimg(X.alpha.begin(), X.alpha.end());
  if ((i64)aimg.size() != X.G2.n) v.push_back("alpha is not onto");
  std::set<i64> muimg(X.mu.begin(), X.mu.end());
  std::set<i64> aker;
  for (i64 g = 0; g < n1; ++g)
    if (X.alpha[g] == X.G2.id) aker.insert(g);
  if (muimg != aker) v.push_back("ker alpha differs from im mu");
  return v;
}

std::vector<std::string> check_axioms(const LieCrossedModule& X) {
  std::vector<std::string> v;
  i64 n = X.g.n, n1 = X.g1.n, nm = X.M.size();
  if ((i64)X.mu.size() != n || (i64)X.eta.size() != n1 ||
      (i64)X.alpha.size() != n1 || (i64)X.ker.size() != nm) {
    v.push_back("structure maps have the wrong shape");
    return v;
  }
  for (i64 a = 0; a < n1; ++a)
    if ((i64)X.eta[a].size() != n) {
      v.push_back("structure maps have the wrong shape");
      return v;
    }

  bool mu_ok = true;
  for (i64 a = 0; a < n && mu_ok; ++a)
    for (i64 b = 0; b < n; ++b) {
      if (X.mu[X.g.add(a, b)] != X.g1.add(X.mu[a], X.mu[b])) {
        v.push_back(at2("mu is not additive", a, b));
        mu_ok = false;
        break;
      }
      if (X.mu[X.g.br(a, b)] != X.g1.br(X.mu[a], X.mu[b])) {
        v.push_back(at2("mu does not preserve brackets", a, b));
        mu_ok = false;
        break;
      }
    }

  bool eta_ok = true;
  for (i64 a = 0; a < n1 && eta_ok; ++a) {
    for (i64 x = 0; x < n && eta_ok; ++x)
      for (i64 y = 0; y < n; ++y) {
        if (X.eta[a][X.g.add(x, y)] != X.g.add(X.eta[a][x], X.eta[a][y])) {
          v.push_back("eta(" + std::to_string(a) + ") " +
                      at2("is not additive:", x, y));
          eta_ok = false;
          break;
        }
        if (X.eta[a][X.g.br(x, y)] !=
            X.g.add(X.g.br(X.eta[a][x], y), X.g.br(x, X.eta[a][y]))) {
          v.push_back("eta(" + std::to_string(a) + ") " +
                      at2("is not a derivation:", x, y));
          eta_ok = false;
          break;
        }
      }
  }
  for (i64 a = 0; a < n1 && eta_ok; ++a)
    for (i64 b = 0; b < n1 && eta_ok; ++b) {
      i64 ab = X.g1.add(a, b), br = X.g1.br(a, b);
      for (i64 x = 0; x < n; ++x) {
        if (X.eta[ab][x] != X.g.add(X.eta[a][x], X.eta[b][x])) {
          v.push_back(at2("eta is not additive in the acting ring", a, b));
          eta_ok = false;
          break;
        }
        if (X.eta[br][x] !=
            X.g.sub(X.eta[a][X.eta[b][x]], X.eta[b][X.eta[a][x]])) {
          v.push_back(at2("eta does not preserve brackets", a, b));
          eta_ok = false;
          break;
        }
      }
    }

  for (i64 a = 0; a < n1; ++a) {
    bool ok = true;
    for (i64 x = 0; x < n && ok; ++x)
      if (X.mu[X.eta[a][x]] != X.g1.br(a, X.mu[x])) {
        v.push_back(at2("axiom (i)", a, x));
        ok = false;
      }
    if (!ok) break;
  }
  for (i64 x = 0; x < n; ++x) {
    bool ok = true;
    for (i64 y = 0; y < n && ok; ++y)
      if (X.eta[X.mu[x]][y] != X.g.br(x, y)) {
        v.push_back(at2("axiom (ii)", x, y));
        ok = false;
      }
    if (!ok) break;
  }

  std::set<i64> kimg;
  for (i64 m = 0; m < nm; ++m) kimg.insert(X.ker[m]);
  if ((i64)kimg.size() != nm) v.push_back("kernel map is not injective");
  bool khom = true;
  for (i64 m1 = 0; m1 < nm && khom; ++m1)
    for (i64 m2 = 0; m2 < nm; ++m2) {
      i64 s = X.M.index_of(X.M.add(X.M.element(m1), X.M.element(m2)));
      if (X.ker[s] != X.g.add(X.ker[m1], X.ker[m2])) {
        v.push_back(at2("kernel map is not a homomorphism", m1, m2));
        khom = false;
        break;
      }
    }
  std::set<i64> muker;
  for (i64 x = 0; x < n; ++x)
    if (X.mu[x] == X.g1.zero) muker.insert(x);
  if (muker != kimg) v.push_back("designated kernel differs from ker mu");
  bool central = true;
  for (i64 k : kimg) {
    for (i64 x = 0; x < n; ++x)
      if (X.g.br(k, x) != X.g.zero) {
        v.push_back("kernel is not central in g");
        central = false;
        break;
      }
    if (!central) break;
  }

  bool ahom = true;
  for (i64 a = 0; a < n1 && ahom; ++a)
    for (i64 b = 0; b < n1; ++b) {
      if (X.alpha[X.g1.add(a, b)] != X.g2.add(X.alpha[a], X.alpha[b]) ||
          X.alpha[X.g1.br(a, b)] != X.g2.br(X.alpha[a], X.alpha[b])) {
        v.push_back(at2("alpha is not a homomorphism", a, b));
        ahom = false;
        break;
      }
    }
  std::set<i64> aimg(X.alpha.begin(), X.alpha.end());
  if ((i64)aimg.size() != X.g2.n) v.push_back("alpha is not onto");
  std::set<i64> muimg(X.mu.begin(), X.mu.end());
  std::set<i64> aker;
  for (i64 a = 0; a < n1; ++a)
    if (X.alpha[a] == X.g2.zero) aker.insert(a);
  if (muimg != aker) v.push_back("ker alpha differs from im mu");
  return v;
}

// ---------------------------------------------------------------------------
// Class and action length of the base pair.

int crossed_class(const GroupCrossedModule& X) {
  GroupOps o1 = group_ops(X.G1), o2 = group_ops(X.G2);
  return std::max(group_class(o1), group_class(o2));
}

int crossed_class(const LieCrossedModule& X) {
  return std::max(lie_class(X.g1), lie_class(X.g2));
}

namespace {

// the action of the cokernel on M through eta, as index maps on M
struct KernelAction {
  std::vector<std::vector<i64>> act;  // per G2 element: M index -> M index
};

template <class CM>
KernelAction kernel_action(const CM& X, i64 n_base2, i64 base2_of_zero) {
  (void)base2_of_zero;
  i64 nm = X.M.size();
  std::vector<i64> kerinv(X.eta.empty() ? 0 : X.eta[0].size(), -1);
  for (i64 m = 0; m < nm; ++m) kerinv[X.ker[m]] = m;
  std::vector<i64> sec(n_base2, -1);
  for (i64 g = 0; g < (i64)X.alpha.size(); ++g)
    if (sec[X.alpha[g]] < 0) sec[X.alpha[g]] = g;
  KernelAction out;
  out.act.assign(n_base2, std::vector<i64>(nm));
  for (i64 q = 0; q < n_base2; ++q)
    for (i64 m = 0; m < nm; ++m) {
      i64 h = X.eta[sec[q]][X.ker[m]];
      if (h >= (i64)kerinv.size() || kerinv[h] < 0)
        throw std::logic_error("crossed action does not preserve the kernel");
      out.act[q][m] = kerinv[h];
    }
  return out;
}

// descending chain from full M; `step` produces the generators of the next
// term from one basis vector. Returns the number of steps, at least 1.
int chain_length(const Module& M, const KernelAction& ka, bool difference) {
  if (M.rank() == 0) return 1;
  std::vector<Vec> units;
  for (int i = 0; i < M.rank(); ++i) {
    Vec e = M.zero();
    e[i] = 1;
    units.push_back(e);
  }
  Submodule S(M, units);
  int d = 0;
  while (!S.is_zero()) {
    std::vector<Vec> gens;
    for (const Vec& b : S.basis()) {
      Vec v = M.reduce(b);
      i64 vm = M.index_of(v);
      for (const auto& a : ka.act) {
        Vec w = M.element(a[vm]);
        gens.push_back(difference ? M.sub(w, v) : w);
      }
    }
    Submodule next(M, gens);
    if (next == S) throw std::domain_error("action not unipotent");
    S = next;
    ++d;
  }
  return std::max(1, d);
}

}  // namespace

int crossed_action_length(const GroupCrossedModule& X) {
  return chain_length(X.M, kernel_action(X, X.G2.n, X.G2.id), true);
}

int crossed_action_length(const LieCrossedModule& X) {
  return chain_length(X.M, kernel_action(X, X.g2.n, X.g2.zero), false);
}

namespace {

[[noreturn]] void refuse_cd(int c, int d, i64 p, int base_class,
                            const char* base, const char* one) {
  throw hypothesis_violation(
      "hypothesis of the crossed-module proposition violated: need c + d < p "
      "(c = " +
      std::to_string(c) + ", d = " + std::to_string(d) +
      ", p = " + std::to_string(p) + "; gamma-witness: gamma_" +
      std::to_string(base_class + 1) + "(" + base + ") = " + one + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// Exp/Log transport.

namespace {

TableLie log_table(const CayleyGroup& G, i64 p) {
  GroupOps ops = group_ops(G);
  int cls = group_class(ops);
  if (cls >= p) throw hypothesis_violation("Lazard bound violated");
  int e = cayley_exponent(G, p);
  IndexLog il(ops, p, std::max(1, cls), e);
  TableLie t;
  t.p = p;
  t.e = e;
  t.n = G.n;
  t.zero = G.id;
  t.addt.resize((size_t)G.n * G.n);
  t.negt.resize(G.n);
  t.brt.resize((size_t)G.n * G.n);
  for (i64 a = 0; a < G.n; ++a) {
    t.negt[a] = il.neg(a);
    for (i64 b = 0; b < G.n; ++b) {
      t.addt[(size_t)a * G.n + b] = il.add(a, b);
      t.brt[(size_t)a * G.n + b] = il.br(a, b);
    }
  }
  return t;
}

// log of a unipotent automorphism, as a table over the recovered Lie carrier
std::vector<i64> log_automorphism(const TableLie& t,
                                  const std::vector<i64>& sigma, i64 p) {
  i64 mod = pow_i(p, t.e);
  std::vector<i64> res(t.n, t.zero), cur(t.n);
  for (i64 x = 0; x < t.n; ++x) cur[x] = t.sub(sigma[x], x);
  for (int k = 1;; ++k) {
    bool zero = true;
    for (i64 x = 0; x < t.n && zero; ++x) zero = cur[x] == t.zero;
    if (zero) break;
    if (k >= p)
      throw hypothesis_violation(
          "log of the action does not truncate below p");
    i64 ck = inv_mod(k, mod);
    if (k % 2 == 0) ck = mod_norm(-ck, mod);
    std::vector<i64> next(t.n);
    for (i64 x = 0; x < t.n; ++x) {
      res[x] = t.add(res[x], t.smul(ck, cur[x]));
      next[x] = t.sub(sigma[cur[x]], cur[x]);
    }
    cur = std::move(next);
  }
  return res;
}

std::vector<i64> exp_derivation(const TableLie& t, const std::vector<i64>& d,
                                i64 p) {
  i64 mod = pow_i(p, t.e);
  std::vector<i64> res(t.n), cur = d;
  for (i64 x = 0; x < t.n; ++x) res[x] = x;
  i64 fact = 1;
  for (int k = 1;; ++k) {
    bool zero = true;
    for (i64 x = 0; x < t.n && zero; ++x) zero = cur[x] == t.zero;
    if (zero) break;
    if (k >= p)
      throw hypothesis_violation(
          "exp of the action does not truncate below p");
    fact = (fact * (k % mod)) % mod;
    i64 ck = inv_mod(fact, mod);
    std::vector<i64> next(t.n);
    for (i64 x = 0; x < t.n; ++x) {
      res[x] = t.add(res[x], t.smul(ck, cur[x]));
      next[x] = d[cur[x]];
    }
    cur = std::move(next);
  }
  return res;
}

CayleyGroup exp_table(const TableLie& t, i64 p) {
  int cls = lie_class(t);
  if (cls >= p) throw hypothesis_violation("Lazard bound violated");
  BchTable bt = bch_table(std::max(1, cls));
  std::vector<int> table((size_t)t.n * t.n);
  for (i64 x = 0; x < t.n; ++x)
    for (i64 y = 0; y < t.n; ++y) {
      i64 acc = t.zero;
      std::vector<i64> letters = {x, y};
      for (const auto& [w, q] : bt.terms) {
        i64 v = eval_bracketing(
            w, letters, [&](i64 a, i64 b) { return t.br(a, b); });
        acc = t.add(acc, t.smul(reduce_local(q, p, t.e), v));
      }
      table[(size_t)x * t.n + y] = (int)acc;
    }
  return make_cayley((int)t.n, (int)t.zero, std::move(table));
}

}  // namespace

LieCrossedModule log_crossed(const GroupCrossedModule& X) {
  int c = crossed_class(X), d = crossed_action_length(X);
  if (c + d >= X.p) {
    GroupOps o1 = group_ops(X.G1);
    refuse_cd(c, d, X.p, group_class(o1), "G1", "1");
  }
  LieCrossedModule Y;
  Y.p = X.p;
  Y.M = X.M;
  Y.mu = X.mu;
  Y.ker = X.ker;
  Y.alpha = X.alpha;
  Y.g = log_table(X.H, X.p);
  Y.g1 = log_table(X.G1, X.p);
  Y.g2 = log_table(X.G2, X.p);
  Y.eta.resize(X.G1.n);
  for (i64 g = 0; g < X.G1.n; ++g)
    Y.eta[g] = log_automorphism(Y.g, X.eta[g], X.p);
  return Y;
}

GroupCrossedModule exp_crossed(const LieCrossedModule& Y) {
  int c = crossed_class(Y), d = crossed_action_length(Y);
  if (c + d >= Y.p) refuse_cd(c, d, Y.p, lie_class(Y.g1), "g1", "0");
  GroupCrossedModule X;
  X.p = Y.p;
  X.M = Y.M;
  X.mu = Y.mu;
  X.ker = Y.ker;
  X.alpha = Y.alpha;
  X.H = exp_table(Y.g, Y.p);
  X.G1 = exp_table(Y.g1, Y.p);
  X.G2 = exp_table(Y.g2, Y.p);
  X.eta.resize(Y.g1.n);
  for (i64 a = 0; a < Y.g1.n; ++a)
    X.eta[a] = exp_derivation(Y.g, Y.eta[a], Y.p);
  return X;
}

// ---------------------------------------------------------------------------
// Baer sum: pull back over G1, quotient by the antidiagonal copy of M.

namespace {

bool same_boundary(const GroupCrossedModule& X, const GroupCrossedModule& Y) {
  return X.p == Y.p && X.G1.n == Y.G1.n && X.G1.id == Y.G1.id &&
         X.G1.table == Y.G1.table && X.G2.n == Y.G2.n && X.G2.id == Y.G2.id &&
         X.G2.table == Y.G2.table && X.alpha == Y.alpha && X.M.p == Y.M.p &&
         X.M.orders == Y.M.orders;
}

bool same_boundary(const LieCrossedModule& X, const LieCrossedModule& Y) {
  return X.p == Y.p && X.g1.n == Y.g1.n && X.g1.zero == Y.g1.zero &&
         X.g1.addt == Y.g1.addt && X.g1.brt == Y.g1.brt &&
         X.g2.n == Y.g2.n && X.g2.zero == Y.g2.zero &&
         X.g2.addt == Y.g2.addt && X.g2.brt == Y.g2.brt &&
         X.alpha == Y.alpha && X.M.p == Y.M.p && X.M.orders == Y.M.orders;
}

}  // namespace

GroupCrossedModule baer_sum(const GroupCrossedModule& X,
                            const GroupCrossedModule& Y) {
  if (!same_boundary(X, Y))
    throw std::invalid_argument("baer sum: boundary mismatch");
  i64 nX = X.H.n, nY = Y.H.n, nm = X.M.size();
  auto key = [&](i64 a, i64 b) { return a * nY + b; };
  std::vector<std::pair<i64, i64>> antidiag;
  for (i64 m = 0; m < nm; ++m)
    antidiag.emplace_back(
        X.ker[m], Y.ker[X.M.index_of(X.M.neg(X.M.element(m)))]);
  std::vector<i64> coset(nX * nY, -1);
  std::vector<std::pair<i64, i64>> reps;
  for (i64 a = 0; a < nX; ++a)
    for (i64 b = 0; b < nY; ++b) {
      if (X.mu[a] != Y.mu[b] || coset[key(a, b)] >= 0) continue;
      i64 idx = (i64)reps.size();
      reps.emplace_back(a, b);
      for (const auto& [d1, d2] : antidiag)
        coset[key(X.H.mul((int)a, (int)d1), Y.H.mul((int)b, (int)d2))] = idx;
    }
  int q = (int)reps.size();
  std::vector<int> table((size_t)q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[(size_t)i * q + j] =
          (int)coset[key(X.H.mul((int)reps[i].first, (int)reps[j].first),
                         Y.H.mul((int)reps[i].second, (int)reps[j].second))];
  GroupCrossedModule S;
  S.p = X.p;
  S.G1 = X.G1;
  S.G2 = X.G2;
  S.alpha = X.alpha;
  S.M = X.M;
  S.H = make_cayley(q, (int)coset[key(X.H.id, Y.H.id)], std::move(table));
  S.mu.resize(q);
  for (int i = 0; i < q; ++i) S.mu[i] = X.mu[reps[i].first];
  S.eta.assign(X.G1.n, std::vector<i64>(q));
  for (i64 g = 0; g < X.G1.n; ++g)
    for (int i = 0; i < q; ++i)
      S.eta[g][i] =
          coset[key(X.eta[g][reps[i].first], Y.eta[g][reps[i].second])];
  S.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) S.ker[m] = coset[key(X.ker[m], Y.H.id)];
  return S;
}

LieCrossedModule baer_sum(const LieCrossedModule& X,
                          const LieCrossedModule& Y) {
  if (!same_boundary(X, Y))
    throw std::invalid_argument("baer sum: boundary mismatch");
  i64 nX = X.g.n, nY = Y.g.n, nm = X.M.size();
  auto key = [&](i64 a, i64 b) { return a * nY + b; };
  std::vector<std::pair<i64, i64>> antidiag;
  for (i64 m = 0; m < nm; ++m)
    antidiag.emplace_back(
        X.ker[m], Y.ker[X.M.index_of(X.M.neg(X.M.element(m)))]);
  std::vector<i64> coset(nX * nY, -1);
  std::vector<std::pair<i64, i64>> reps;
  for (i64 a = 0; a < nX; ++a)
    for (i64 b = 0; b < nY; ++b) {
      if (X.mu[a] != Y.mu[b] || coset[key(a, b)] >= 0) continue;
      i64 idx = (i64)reps.size();
      reps.emplace_back(a, b);
      for (const auto& [d1, d2] : antidiag)
        coset[key(X.g.add(a, d1), Y.g.add(b, d2))] = idx;
    }
  i64 q = (i64)reps.size();
  LieCrossedModule S;
  S.p = X.p;
  S.g1 = X.g1;
  S.g2 = X.g2;
  S.alpha = X.alpha;
  S.M = X.M;
  S.g.p = X.p;
  S.g.n = q;
  S.g.zero = coset[key(X.g.zero, Y.g.zero)];
  S.g.addt.resize((size_t)q * q);
  S.g.negt.resize(q);
  S.g.brt.resize((size_t)q * q);
  for (i64 i = 0; i < q; ++i) {
    S.g.negt[i] =
        coset[key(X.g.neg(reps[i].first), Y.g.neg(reps[i].second))];
    for (i64 j = 0; j < q; ++j) {
      S.g.addt[(size_t)i * q + j] =
          coset[key(X.g.add(reps[i].first, reps[j].first),
                    Y.g.add(reps[i].second, reps[j].second))];
      S.g.brt[(size_t)i * q + j] =
          coset[key(X.g.br(reps[i].first, reps[j].first),
                    Y.g.br(reps[i].second, reps[j].second))];
    }
  }
  S.g.e = table_exponent(S.p, q, S.g.zero,
                         [&](i64 a, i64 b) { return S.g.add(a, b); });
  S.mu.resize(q);
  for (i64 i = 0; i < q; ++i) S.mu[i] = X.mu[reps[i].first];
  S.eta.assign(X.g1.n, std::vector<i64>(q));
  for (i64 a = 0; a < X.g1.n; ++a)
    for (i64 i = 0; i < q; ++i)
      S.eta[a][i] =
          coset[key(X.eta[a][reps[i].first], Y.eta[a][reps[i].second])];
  S.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) S.ker[m] = coset[key(X.ker[m], Y.g.zero)];
  return S;
}

// ---------------------------------------------------------------------------
// Equivalence: brute-force isomorphism over mu, identity on M and G1.

namespace {

// generating indices plus a spanning tree x = parent * gen
struct TreeDecomp {
  std::vector<i64> gens;
  std::vector<i64> order, parent, pgen;
};

TreeDecomp tree_decomp(i64 n, i64 id,
                       const std::function<i64(i64, i64)>& mul,
                       const std::function<i64(i64)>& inv) {
  TreeDecomp td;
  GroupOps ops;
  ops.n = n;
  ops.id = id;
  ops.mul = mul;
  ops.inv = inv;
  ElemSet closure = {id};
  for (i64 h = 0; h < n; ++h)
    if (!std::binary_search(closure.begin(), closure.end(), h)) {
      td.gens.push_back(h);
      closure = subgroup_closure(ops, td.gens);
    }
  td.parent.assign(n, -1);
  td.pgen.assign(n, -1);
  td.order.push_back(id);
  td.parent[id] = id;
  for (size_t head = 0; head < td.order.size(); ++head) {
    i64 u = td.order[head];
    for (size_t gi = 0; gi < td.gens.size(); ++gi) {
      i64 w = mul(u, td.gens[gi]);
      if (td.parent[w] >= 0) continue;
      td.parent[w] = u;
      td.pgen[w] = (i64)gi;
      td.order.push_back(w);
    }
  }
  return td;
}

std::vector<i64> element_orders(i64 n, i64 id,
                                const std::function<i64(i64, i64)>& mul) {
  std::vector<i64> ord(n, 1);
  for (i64 a = 0; a < n; ++a) {
    i64 x = a;
    while (x != id) {
      x = mul(x, a);
      ++ord[a];
    }
  }
  return ord;
}

// odometer over candidate images, lex order, first witness wins
bool search_iso(const TreeDecomp& td,
                const std::vector<std::vector<i64>>& cand, i64 n,
                const std::function<i64(i64, i64)>& mul_y, i64 id_y,
                const std::function<bool(const std::vector<i64>&)>& accept) {
  size_t r = td.gens.size();
  if (r == 0) {
    std::vector<i64> f(n, id_y);
    return accept(f);
  }
  std::vector<size_t> pick(r, 0);
  std::vector<i64> f(n);
  while (true) {
    f.assign(n, -1);
    f[td.order[0]] = id_y;
    for (size_t i = 1; i < td.order.size(); ++i) {
      i64 u = td.order[i];
      f[u] = mul_y(f[td.parent[u]], cand[td.pgen[u]][pick[td.pgen[u]]]);
    }
    if (accept(f)) return true;
    size_t j = r;
    while (j > 0) {
      --j;
      if (++pick[j] < cand[j].size()) break;
      pick[j] = 0;
      if (j == 0) return false;
    }
  }
}

}  // namespace

bool crossed_equivalent(const GroupCrossedModule& X,
                        const GroupCrossedModule& Y, i64 max_h) {
  if (!same_boundary(X, Y)) return false;
  if (X.H.n != Y.H.n) return false;
  i64 bound = max_h > 0 ? max_h : X.p * X.p * X.p;
  if (X.H.n > bound) throw undecided_error("undecided at this scale");
  i64 n = X.H.n, nm = X.M.size();
  auto mulx = [&](i64 a, i64 b) { return (i64)X.H.mul((int)a, (int)b); };
  auto invx = [&](i64 a) { return (i64)X.H.inv((int)a); };
  auto muly = [&](i64 a, i64 b) { return (i64)Y.H.mul((int)a, (int)b); };
  TreeDecomp td = tree_decomp(n, X.H.id, mulx, invx);
  std::vector<i64> ox = element_orders(n, X.H.id, mulx);
  std::vector<i64> oy = element_orders(n, Y.H.id, muly);
  std::vector<std::vector<i64>> cand(td.gens.size());
  for (size_t gi = 0; gi < td.gens.size(); ++gi) {
    for (i64 h = 0; h < n; ++h)
      if (Y.mu[h] == X.mu[td.gens[gi]] && oy[h] == ox[td.gens[gi]])
        cand[gi].push_back(h);
    if (cand[gi].empty()) return false;
  }
  auto accept = [&](const std::vector<i64>& f) {
    for (i64 h = 0; h < n; ++h)
      if (Y.mu[f[h]] != X.mu[h]) return false;
    for (i64 m = 0; m < nm; ++m)
      if (f[X.ker[m]] != Y.ker[m]) return false;
    std::vector<char> hit(n, 0);
    for (i64 h = 0; h < n; ++h) {
      if (hit[f[h]]) return false;
      hit[f[h]] = 1;
    }
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b)
        if (f[mulx(a, b)] != muly(f[a], f[b])) return false;
    for (i64 g = 0; g < X.G1.n; ++g)
      for (i64 h = 0; h < n; ++h)
        if (f[X.eta[g][h]] != Y.eta[g][f[h]]) return false;
    return true;
  };
  return search_iso(td, cand, n, muly, Y.H.id, accept);
}

bool crossed_equivalent(const LieCrossedModule& X, const LieCrossedModule& Y,
                        i64 max_h) {
  if (!same_boundary(X, Y)) return false;
  if (X.g.n != Y.g.n) return false;
  i64 bound = max_h > 0 ? max_h : X.p * X.p * X.p;
  if (X.g.n > bound) throw undecided_error("undecided at this scale");
  i64 n = X.g.n, nm = X.M.size();
  auto addx = [&](i64 a, i64 b) { return X.g.add(a, b); };
  auto negx = [&](i64 a) { return X.g.neg(a); };
  auto addy = [&](i64 a, i64 b) { return Y.g.add(a, b); };
  TreeDecomp td = tree_decomp(n, X.g.zero, addx, negx);
  std::vector<i64> ox = element_orders(n, X.g.zero, addx);
  std::vector<i64> oy = element_orders(n, Y.g.zero, addy);
  std::vector<std::vector<i64>> cand(td.gens.size());
  for (size_t gi = 0; gi < td.gens.size(); ++gi) {
    for (i64 h = 0; h < n; ++h)
      if (Y.mu[h] == X.mu[td.gens[gi]] && oy[h] == ox[td.gens[gi]])
        cand[gi].push_back(h);
    if (cand[gi].empty()) return false;
  }
  auto accept = [&](const std::vector<i64>& f) {
    for (i64 x = 0; x < n; ++x)
      if (Y.mu[f[x]] != X.mu[x]) return false;
    for (i64 m = 0; m < nm; ++m)
      if (f[X.ker[m]] != Y.ker[m]) return false;
    std::vector<char> hit(n, 0);
    for (i64 x = 0; x < n; ++x) {
      if (hit[f[x]]) return false;
      hit[f[x]] = 1;
    }
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b) {
        if (f[X.g.add(a, b)] != Y.g.add(f[a], f[b])) return false;
        if (f[X.g.br(a, b)] != Y.g.br(f[a], f[b])) return false;
      }
    for (i64 a = 0; a < X.g1.n; ++a)
      for (i64 x = 0; x < n; ++x)
        if (f[X.eta[a][x]] != Y.eta[a][f[x]]) return false;
    return true;
  };
  return search_iso(td, cand, n, addy, Y.g.zero, accept);
}

// ---------------------------------------------------------------------------
// Builders.

CayleyGroup cayley_of(const GroupOps& G) {
  std::vector<int> table((size_t)G.n * G.n);
  for (i64 a = 0; a < G.n; ++a)
    for (i64 b = 0; b < G.n; ++b)
      table[(size_t)a * G.n + b] = (int)G.mul(a, b);
  return make_cayley((int)G.n, (int)G.id, std::move(table));
}

GroupCrossedModule conjugation_crossed(const LazardGroup& G,
                                       const ElemSet& N) {
  GroupOps ops = group_ops(G);
  if (!is_normal(ops, N))
    throw std::domain_error("conjugation_crossed: not a normal subgroup");
  auto pos = [&](i64 g) {
    auto it = std::lower_bound(N.begin(), N.end(), g);
    if (it == N.end() || *it != g)
      throw std::logic_error("conjugation_crossed: left the subgroup");
    return (i64)(it - N.begin());
  };
  i64 m = (i64)N.size();
  std::vector<int> table((size_t)m * m);
  for (i64 i = 0; i < m; ++i)
    for (i64 j = 0; j < m; ++j)
      table[(size_t)i * m + j] = (int)pos(ops.mul(N[i], N[j]));
  GroupCrossedModule X;
  X.p = G.p();
  X.H = make_cayley((int)m, (int)pos(ops.id), std::move(table));
  X.G1 = cayley_of(ops);
  X.mu.assign(N.begin(), N.end());
  X.eta.assign(ops.n, std::vector<i64>(m));
  for (i64 g = 0; g < ops.n; ++g)
    for (i64 i = 0; i < m; ++i)
      X.eta[g][i] = pos(ops.mul(ops.mul(g, N[i]), ops.inv(g)));
  X.M = Module{G.p(), {}};
  X.ker = {pos(ops.id)};
  QuotientGroup q = quotient_group(ops, N);
  X.G2 = q.grp;
  X.alpha.assign(q.coset_of.begin(), q.coset_of.end());
  return X;
}

LieCrossedModule ideal_crossed(const NilLieRing& L, const Submodule& I) {
  if (!is_ideal(L, I)) throw std::domain_error("ideal_crossed: not an ideal");
  Module Lm = L.module();
  TableLie LT = table_lie(L);
  std::vector<i64> elems;
  for (i64 i = 0; i < Lm.size(); ++i)
    if (I.member(Lm.element(i))) elems.push_back(i);
  auto pos = [&](i64 x) {
    auto it = std::lower_bound(elems.begin(), elems.end(), x);
    if (it == elems.end() || *it != x)
      throw std::logic_error("ideal_crossed: left the ideal");
    return (i64)(it - elems.begin());
  };
  i64 m = (i64)elems.size();
  LieCrossedModule Y;
  Y.p = L.p;
  Y.g.p = L.p;
  Y.g.n = m;
  Y.g.zero = pos(LT.zero);
  Y.g.addt.resize((size_t)m * m);
  Y.g.negt.resize(m);
  Y.g.brt.resize((size_t)m * m);
  for (i64 i = 0; i < m; ++i) {
    Y.g.negt[i] = pos(LT.neg(elems[i]));
    for (i64 j = 0; j < m; ++j) {
      Y.g.addt[(size_t)i * m + j] = pos(LT.add(elems[i], elems[j]));
      Y.g.brt[(size_t)i * m + j] = pos(LT.br(elems[i], elems[j]));
    }
  }
  Y.g.e = table_exponent(Y.p, m, Y.g.zero,
                         [&](i64 a, i64 b) { return Y.g.add(a, b); });
  Y.g1 = LT;
  Y.mu = elems;
  Y.eta.assign(Lm.size(), std::vector<i64>(m));
  for (i64 a = 0; a < Lm.size(); ++a)
    for (i64 i = 0; i < m; ++i) Y.eta[a][i] = pos(LT.br(a, elems[i]));
  Y.M = Module{L.p, {}};
  Y.ker = {Y.g.zero};
  QuotientRing QR = quotient_ring(L, I);
  Y.g2 = table_lie(QR.ring);
  Module Qm = QR.ring.module();
  Y.alpha.resize(Lm.size());
  for (i64 a = 0; a < Lm.size(); ++a)
    Y.alpha[a] = Qm.index_of(Qm.reduce(QR.onto.project(Lm.element(a))));
  return Y;
}

GroupCrossedModule module_crossed(const GroupTriple& T) {
  i64 nm = T.M.size();
  std::vector<int> table((size_t)nm * nm);
  for (i64 a = 0; a < nm; ++a)
    for (i64 b = 0; b < nm; ++b)
      table[(size_t)a * nm + b] =
          (int)T.M.index_of(T.M.add(T.M.element(a), T.M.element(b)));
  GroupOps ops = group_ops(T.G);
  GroupCrossedModule X;
  X.p = T.G.p();
  X.H = make_cayley((int)nm, (int)T.M.index_of(T.M.zero()), std::move(table));
  X.G1 = cayley_of(ops);
  X.G2 = X.G1;
  X.mu.assign(nm, X.G1.id);
  X.eta.assign(ops.n, std::vector<i64>(nm));
  for (i64 g = 0; g < ops.n; ++g)
    for (i64 m = 0; m < nm; ++m)
      X.eta[g][m] = T.M.index_of(
          T.M.reduce(hom_apply(T.M, T.M, T.phi[g], T.M.element(m))));
  X.M = T.M;
  X.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) X.ker[m] = m;
  X.alpha.resize(ops.n);
  for (i64 g = 0; g < ops.n; ++g) X.alpha[g] = g;
  return X;
}

LieCrossedModule module_crossed(const LieTriple& T) {
  i64 nm = T.M.size();
  Module Lm = T.L.module();
  LieCrossedModule Y;
  Y.p = T.L.p;
  Y.g.p = T.L.p;
  Y.g.e = std::max(1, T.M.max_order());
  Y.g.n = nm;
  Y.g.zero = T.M.index_of(T.M.zero());
  Y.g.addt.resize((size_t)nm * nm);
  Y.g.negt.resize(nm);
  Y.g.brt.assign((size_t)nm * nm, Y.g.zero);
  for (i64 a = 0; a < nm; ++a) {
    Y.g.negt[a] = T.M.index_of(T.M.neg(T.M.element(a)));
    for (i64 b = 0; b < nm; ++b)
      Y.g.addt[(size_t)a * nm + b] =
          T.M.index_of(T.M.add(T.M.element(a), T.M.element(b)));
  }
  Y.g1 = table_lie(T.L);
  Y.g2 = Y.g1;
  Y.mu.assign(nm, Y.g1.zero);
  Y.eta.assign(Lm.size(), std::vector<i64>(nm));
  for (i64 a = 0; a < Lm.size(); ++a) {
    Mat psi = T.psi_of(Lm.element(a));
    for (i64 m = 0; m < nm; ++m)
      Y.eta[a][m] =
          T.M.index_of(T.M.reduce(hom_apply(T.M, T.M, psi, T.M.element(m))));
  }
  Y.M = T.M;
  Y.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) Y.ker[m] = m;
  Y.alpha.resize(Lm.size());
  for (i64 a = 0; a < Lm.size(); ++a) Y.alpha[a] = a;
  return Y;
}

namespace {

void require_central(const NilLieRing& L, const Submodule& Z,
                     const char* who) {
  Module Lm = L.module();
  for (const Vec& z : Z.basis())
    for (int i = 0; i < L.rank(); ++i) {
      Vec e = Lm.zero();
      e[i] = 1;
      if (!Lm.is_zero(Lm.reduce(L.bracket(z, e))))
        throw std::domain_error(std::string(who) + ": not central");
    }
}

}  // namespace

GroupCrossedModule quotient_crossed(const LazardGroup& G,
                                    const Submodule& Z) {
  const NilLieRing& L = G.ring();
  require_central(L, Z, "quotient_crossed");
  Module Lm = L.module();
  GroupOps ops = group_ops(G);
  ElemSet zset;
  for (i64 i = 0; i < Lm.size(); ++i)
    if (Z.member(Lm.element(i))) zset.push_back(i);
  QuotientGroup q = quotient_group(ops, zset);
  GroupCrossedModule X;
  X.p = G.p();
  X.H = cayley_of(ops);
  X.G1 = q.grp;
  X.mu.assign(q.coset_of.begin(), q.coset_of.end());
  X.eta.assign(q.grp.n, std::vector<i64>(ops.n));
  for (i64 a = 0; a < q.grp.n; ++a) {
    i64 g = q.reps[a];
    for (i64 h = 0; h < ops.n; ++h)
      X.eta[a][h] = ops.mul(ops.mul(g, h), ops.inv(g));
  }
  SubquotientMap sq(Lm, Z.basis(), {});
  X.M = Module{G.p(), sq.invariants()};
  X.ker.resize(X.M.size());
  for (i64 m = 0; m < X.M.size(); ++m)
    X.ker[m] = Lm.index_of(Lm.reduce(sq.lift(X.M.element(m))));
  X.G2 = make_cayley(1, 0, {0});
  X.alpha.assign(q.grp.n, 0);
  return X;
}

LieCrossedModule quotient_crossed(const NilLieRing& L, const Submodule& Z) {
  require_central(L, Z, "quotient_crossed");
  Module Lm = L.module();
  TableLie LT = table_lie(L);
  QuotientRing QR = quotient_ring(L, Z);
  Module Qm = QR.ring.module();
  LieCrossedModule Y;
  Y.p = L.p;
  Y.g = LT;
  Y.g1 = table_lie(QR.ring);
  Y.mu.resize(Lm.size());
  for (i64 x = 0; x < Lm.size(); ++x)
    Y.mu[x] = Qm.index_of(Qm.reduce(QR.onto.project(Lm.element(x))));
  Y.eta.assign(Qm.size(), std::vector<i64>(Lm.size()));
  for (i64 a = 0; a < Qm.size(); ++a) {
    i64 lift = Lm.index_of(Lm.reduce(QR.onto.lift(Qm.element(a))));
    for (i64 x = 0; x < Lm.size(); ++x) Y.eta[a][x] = LT.br(lift, x);
  }
  SubquotientMap sq(Lm, Z.basis(), {});
  Y.M = Module{L.p, sq.invariants()};
  Y.ker.resize(Y.M.size());
  for (i64 m = 0; m < Y.M.size(); ++m)
    Y.ker[m] = Lm.index_of(Lm.reduce(sq.lift(Y.M.element(m))));
  Y.g2 = TableLie{L.p, 1, 1, 0, {0}, {0}, {0}};
  Y.alpha.assign(Qm.size(), 0);
  return Y;
}

GroupCrossedModule split_crossed(const GroupCrossedModule& X) {
  i64 nm = X.M.size();
  std::vector<i64> K;
  for (i64 g = 0; g < X.G1.n; ++g)
    if (X.alpha[g] == X.G2.id) K.push_back(g);
  auto kpos = [&](i64 g) {
    auto it = std::lower_bound(K.begin(), K.end(), g);
    if (it == K.end() || *it != g)
      throw std::logic_error("split_crossed: left ker alpha");
    return (i64)(it - K.begin());
  };
  // the action of all of G1 on M (through eta and the kernel embedding)
  std::vector<i64> kerinv(X.H.n, -1);
  for (i64 m = 0; m < nm; ++m) kerinv[X.ker[m]] = m;
  auto am = [&](i64 g, i64 m) {
    i64 h = X.eta[g][X.ker[m]];
    if (kerinv[h] < 0)
      throw std::logic_error("split_crossed: action does not fix the kernel");
    return kerinv[h];
  };
  i64 nk = (i64)K.size(), n = nm * nk;
  auto idx = [&](i64 m, i64 k) { return m * nk + k; };
  auto mul1 = [&](i64 a, i64 b) { return (i64)X.G1.mul((int)a, (int)b); };
  auto inv1 = [&](i64 a) { return (i64)X.G1.inv((int)a); };
  // ker alpha = im mu acts trivially on the central kernel, so the carrier
  // is the direct product M x ker alpha
  std::vector<int> table((size_t)n * n);
  for (i64 m1 = 0; m1 < nm; ++m1)
    for (i64 k1 = 0; k1 < nk; ++k1)
      for (i64 m2 = 0; m2 < nm; ++m2)
        for (i64 k2 = 0; k2 < nk; ++k2) {
          i64 ms = X.M.index_of(X.M.add(X.M.element(m1), X.M.element(m2)));
          table[(size_t)idx(m1, k1) * n + idx(m2, k2)] =
              (int)idx(ms, kpos(mul1(K[k1], K[k2])));
        }
  GroupCrossedModule S;
  S.p = X.p;
  S.G1 = X.G1;
  S.G2 = X.G2;
  S.alpha = X.alpha;
  S.M = X.M;
  S.H = make_cayley((int)n,
                    (int)idx(X.M.index_of(X.M.zero()), kpos(X.G1.id)),
                    std::move(table));
  S.mu.resize(n);
  for (i64 m = 0; m < nm; ++m)
    for (i64 k = 0; k < nk; ++k) S.mu[idx(m, k)] = K[k];
  S.eta.assign(X.G1.n, std::vector<i64>(n));
  for (i64 g = 0; g < X.G1.n; ++g)
    for (i64 m = 0; m < nm; ++m)
      for (i64 k = 0; k < nk; ++k)
        S.eta[g][idx(m, k)] =
            idx(am(g, m), kpos(mul1(mul1(g, K[k]), inv1(g))));
  S.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) S.ker[m] = idx(m, kpos(X.G1.id));
  return S;
}

LieCrossedModule split_crossed(const LieCrossedModule& X) {
  i64 nm = X.M.size();
  std::vector<i64> K;
  for (i64 a = 0; a < X.g1.n; ++a)
    if (X.alpha[a] == X.g2.zero) K.push_back(a);
  auto kpos = [&](i64 a) {
    auto it = std::lower_bound(K.begin(), K.end(), a);
    if (it == K.end() || *it != a)
      throw std::logic_error("split_crossed: left ker alpha");
    return (i64)(it - K.begin());
  };
  std::vector<i64> kerinv(X.g.n, -1);
  for (i64 m = 0; m < nm; ++m) kerinv[X.ker[m]] = m;
  auto dm = [&](i64 a, i64 m) {
    i64 h = X.eta[a][X.ker[m]];
    if (kerinv[h] < 0)
      throw std::logic_error("split_crossed: action does not fix the kernel");
    return kerinv[h];
  };
  i64 nk = (i64)K.size(), n = nm * nk;
  auto idx = [&](i64 m, i64 k) { return m * nk + k; };
  i64 mzero = X.M.index_of(X.M.zero());
  LieCrossedModule S;
  S.p = X.p;
  S.g1 = X.g1;
  S.g2 = X.g2;
  S.alpha = X.alpha;
  S.M = X.M;
  S.g.p = X.p;
  S.g.n = n;
  S.g.zero = idx(mzero, kpos(X.g1.zero));
  S.g.addt.resize((size_t)n * n);
  S.g.negt.resize(n);
  S.g.brt.resize((size_t)n * n);
  for (i64 m1 = 0; m1 < nm; ++m1)
    for (i64 k1 = 0; k1 < nk; ++k1) {
      S.g.negt[idx(m1, k1)] =
          idx(X.M.index_of(X.M.neg(X.M.element(m1))),
              kpos(X.g1.neg(K[k1])));
      for (i64 m2 = 0; m2 < nm; ++m2)
        for (i64 k2 = 0; k2 < nk; ++k2) {
          i64 ms = X.M.index_of(X.M.add(X.M.element(m1), X.M.element(m2)));
          S.g.addt[(size_t)idx(m1, k1) * n + idx(m2, k2)] =
              idx(ms, kpos(X.g1.add(K[k1], K[k2])));
          // im mu kills the central kernel, so the bracket lives in K only
          S.g.brt[(size_t)idx(m1, k1) * n + idx(m2, k2)] =
              idx(mzero, kpos(X.g1.br(K[k1], K[k2])));
        }
    }
  S.g.e = table_exponent(S.p, n, S.g.zero,
                         [&](i64 a, i64 b) { return S.g.add(a, b); });
  S.mu.resize(n);
  for (i64 m = 0; m < nm; ++m)
    for (i64 k = 0; k < nk; ++k) S.mu[idx(m, k)] = K[k];
  S.eta.assign(X.g1.n, std::vector<i64>(n));
  for (i64 a = 0; a < X.g1.n; ++a)
    for (i64 m = 0; m < nm; ++m)
      for (i64 k = 0; k < nk; ++k)
        S.eta[a][idx(m, k)] = idx(dm(a, m), kpos(X.g1.br(a, K[k])));
  S.ker.resize(nm);
  for (i64 m = 0; m < nm; ++m) S.ker[m] = idx(m, kpos(X.g1.zero));
  return S;
}

GroupCrossedModule relabel_by_action(const GroupCrossedModule& X, i64 g) {
  const std::vector<i64>& s = X.eta[g];
  std::vector<i64> sinv(X.H.n);
  for (i64 x = 0; x < X.H.n; ++x) sinv[s[x]] = x;
  GroupCrossedModule Y = X;
  for (i64 x = 0; x < X.H.n; ++x) Y.mu[x] = X.mu[sinv[x]];
  for (i64 h = 0; h < X.G1.n; ++h)
    for (i64 x = 0; x < X.H.n; ++x) Y.eta[h][x] = s[X.eta[h][sinv[x]]];
  for (i64 m = 0; m < X.M.size(); ++m) Y.ker[m] = s[X.ker[m]];
  return Y;
}

}  // namespace lazard
