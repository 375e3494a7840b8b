#include "lazard/liering.hpp"

#include <sstream>

#include "lazard/freelie.hpp"

namespace lazard {

Vec NilLieRing::bracket(const Vec& u, const Vec& v) const {
  const int r = rank();
  Vec out(r, 0);
  for (int i = 0; i < r; ++i) {
    if (!u[i]) continue;
    for (int j = 0; j < r; ++j) {
      if (!v[j]) continue;
      const Vec& c = sc[i][j];
      for (int k = 0; k < r; ++k) {
        if (!c[k]) continue;
        i64 m = pow_i(p, orders[k]);
        out[k] = mod_norm(out[k] + (u[i] % m) * ((v[j] % m) * c[k] % m), m);
      }
    }
  }
  return out;
}

std::vector<std::string> validate(const NilLieRing& L) {
  std::vector<std::string> bad;
  const int r = L.rank();
  auto name = [&](int i) {
    return i < (int)L.labels.size() ? L.labels[i] : "b" + std::to_string(i);
  };
  if (!is_prime(L.p)) {
    bad.push_back("p = " + std::to_string(L.p) + " is not prime");
    return bad;
  }
  if ((int)L.sc.size() != r) {
    bad.push_back("structure constant table has wrong shape");
    return bad;
  }
  for (int i = 0; i < r; ++i) {
    if ((int)L.sc[i].size() != r) {
      bad.push_back("structure constant table has wrong shape");
      return bad;
    }
    for (int j = 0; j < r; ++j)
      if ((int)L.sc[i][j].size() != r) {
        bad.push_back("structure constant table has wrong shape");
        return bad;
      }
  }
  Module M = L.module();
  for (int i = 0; i < r; ++i)
    if (!M.is_zero(L.sc[i][i]))
      bad.push_back("[b,b] != 0 at " + name(i));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (!M.is_zero(M.add(L.sc[i][j], L.sc[j][i])))
        bad.push_back("antisymmetry fails at (" + name(j) + "," + name(i) +
                      ")");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int e = std::min(L.orders[i], L.orders[j]);
      for (int k = 0; k < r; ++k) {
        i64 m = pow_i(L.p, L.orders[k]);
        if (mod_norm(pow_i(L.p, e) % m * L.sc[i][j][k], m) != 0) {
          bad.push_back("order compatibility fails at (" + name(i) + "," +
                        name(j) + ") -> " + name(k));
        }
      }
    }
  if (!bad.empty()) return bad;  // Jacobi needs a well-defined bracket
  auto unit = [&](int i) {
    Vec e(r, 0);
    e[i] = 1;
    return e;
  };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        Vec jac = M.add(M.add(L.bracket(L.sc[i][j], unit(k)),
                              L.bracket(L.sc[j][k], unit(i))),
                        L.bracket(L.sc[k][i], unit(j)));
        if (!M.is_zero(jac))
          bad.push_back("Jacobi fails at (" + name(i) + "," + name(j) + "," +
                        name(k) + ")");
      }
  if (!bad.empty()) return bad;
  // defensive nilpotency check
  auto series = lower_central_series(L);
  if (!series.back().is_zero()) bad.push_back("not nilpotent");
  return bad;
}

std::vector<Submodule> lower_central_series(const NilLieRing& L) {
  Module M = L.module();
  const int r = L.rank();
  std::vector<Vec> whole;
  for (int i = 0; i < r; ++i) {
    Vec e(r, 0);
    e[i] = 1;
    whole.push_back(e);
  }
  std::vector<Submodule> series;
  series.emplace_back(M, whole);
  for (int step = 0; step <= r + 1; ++step) {
    const Submodule& g = series.back();
    Submodule next(M);
    for (const Vec& a : g.basis())
      for (const Vec& e : whole) next.add(L.bracket(a, e));
    bool zero = next.is_zero();
    series.push_back(std::move(next));
    if (zero) break;
  }
  return series;
}

int nilpotency_class(const NilLieRing& L) {
  auto s = lower_central_series(L);
  if (!s.back().is_zero()) throw std::domain_error("not nilpotent");
  return static_cast<int>(s.size()) - 1;
}

static Submodule closure(const NilLieRing& L, const std::vector<Vec>& gens,
                         bool ideal) {
  Module M = L.module();
  Submodule s(M, gens);
  const int r = L.rank();
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> cur = s.basis();
    for (const Vec& a : cur) {
      if (ideal) {
        for (int i = 0; i < r; ++i) {
          Vec e(r, 0);
          e[i] = 1;
          if (s.add(L.bracket(a, e))) grew = true;
        }
      } else {
        for (const Vec& b : cur)
          if (s.add(L.bracket(a, b))) grew = true;
      }
    }
  }
  return s;
}

Submodule subring_closure(const NilLieRing& L, const std::vector<Vec>& gens) {
  return closure(L, gens, false);
}

Submodule ideal_closure(const NilLieRing& L, const std::vector<Vec>& gens) {
  return closure(L, gens, true);
}

bool is_subring(const NilLieRing& L, const Submodule& S) {
  auto b = S.basis();
  for (const Vec& u : b)
    for (const Vec& v : b)
      if (!S.member(L.bracket(u, v))) return false;
  return true;
}

bool is_ideal(const NilLieRing& L, const Submodule& S) {
  const int r = L.rank();
  for (const Vec& u : S.basis())
    for (int i = 0; i < r; ++i) {
      Vec e(r, 0);
      e[i] = 1;
      if (!S.member(L.bracket(u, e))) return false;
    }
  return true;
}

QuotientRing quotient_ring(const NilLieRing& L, const Submodule& ideal) {
  if (!is_ideal(L, ideal))
    throw std::domain_error("quotient_ring: not an ideal");
  Module M = L.module();
  const int r = L.rank();
  std::vector<Vec> whole;
  for (int i = 0; i < r; ++i) {
    Vec e(r, 0);
    e[i] = 1;
    whole.push_back(e);
  }
  SubquotientMap q(M, whole, ideal.basis());
  int qr = static_cast<int>(q.invariants().size());
  NilLieRing Q;
  Q.p = L.p;
  Q.orders = q.invariants();
  for (int i = 0; i < qr; ++i) Q.labels.push_back("q" + std::to_string(i + 1));
  Q.sc.assign(qr, std::vector<Vec>(qr, Vec(qr, 0)));
  for (int i = 0; i < qr; ++i)
    for (int j = 0; j < qr; ++j) {
      Vec ei(qr, 0), ej(qr, 0);
      ei[i] = 1;
      ej[j] = 1;
      Q.sc[i][j] = q.project(L.bracket(q.lift(ei), q.lift(ej)));
    }
  return QuotientRing{std::move(Q), std::move(q)};
}

NilLieRing direct_sum(const NilLieRing& a, const NilLieRing& b) {
  if (a.p != b.p) throw std::domain_error("direct_sum: different primes");
  NilLieRing s;
  s.p = a.p;
  s.orders = a.orders;
  s.orders.insert(s.orders.end(), b.orders.begin(), b.orders.end());
  for (const auto& l : a.labels) s.labels.push_back(l + ".1");
  for (const auto& l : b.labels) s.labels.push_back(l + ".2");
  int ra = a.rank(), rb = b.rank(), r = ra + rb;
  s.sc.assign(r, std::vector<Vec>(r, Vec(r, 0)));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j)
      for (int k = 0; k < ra; ++k) s.sc[i][j][k] = a.sc[i][j][k];
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j)
      for (int k = 0; k < rb; ++k) s.sc[ra + i][ra + j][ra + k] = b.sc[i][j][k];
  s.class_hint = std::max(a.class_hint, b.class_hint);
  return s;
}

NilLieRing abelian(i64 p, const std::vector<int>& orders) {
  NilLieRing L;
  L.p = p;
  L.orders = orders;
  int r = L.rank();
  for (int i = 0; i < r; ++i) L.labels.push_back("a" + std::to_string(i + 1));
  L.sc.assign(r, std::vector<Vec>(r, Vec(r, 0)));
  L.class_hint = 1;
  return L;
}

NilLieRing heisenberg(i64 p, int e) {
  NilLieRing L;
  L.p = p;
  L.orders = {e, e, e};
  L.labels = {"x", "y", "z"};
  L.sc.assign(3, std::vector<Vec>(3, Vec(3, 0)));
  i64 m = pow_i(p, e);
  L.sc[0][1] = {0, 0, 1};
  L.sc[1][0] = {0, 0, mod_norm(-1, m)};
  L.class_hint = 2;
  return L;
}

NilLieRing free_nilpotent(int n_gens, int c, i64 p, int e) {
  auto basis = lyndon_basis(n_gens, c);
  int r = static_cast<int>(basis.size());
  NilLieRing L;
  L.p = p;
  L.orders.assign(r, e);
  L.class_hint = c;
  for (const Word& w : basis) {
    std::string lbl;
    for (char ch : w) lbl.push_back(static_cast<char>('x' + ch));
    L.labels.push_back(lbl);
  }
  L.sc.assign(r, std::vector<Vec>(r, Vec(r, 0)));
  i64 m = pow_i(p, e);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if ((int)(basis[i].size() + basis[j].size()) > c) continue;
      FreeAssoc br = comm(bracket_expansion(basis[i], c),
                          bracket_expansion(basis[j], c));
      auto coords = project_to_lie(br, c);
      if (!coords)
        throw std::logic_error("free_nilpotent: bracket not Lie");
      for (int k = 0; k < r; ++k) {
        auto it = coords->find(basis[k]);
        if (it == coords->end()) continue;
        // structure constants of the free Lie ring on the Lyndon basis
        // are integers
        if (it->second.den != 1)
          throw std::logic_error("free_nilpotent: non-integer constant");
        L.sc[i][j][k] = mod_norm(it->second.num, m);
      }
    }
  return L;
}

}  // namespace lazard
