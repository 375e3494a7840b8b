#include "lazard/bchgroup.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <tuple>

namespace lazard {

LazardGroup::LazardGroup(NilLieRing L)
    : L_(std::move(L)), cls_(nilpotency_class(L_)) {
  if (cls_ >= L_.p)
    throw hypothesis_violation("Lazard bound violated: class " +
                               std::to_string(cls_) + " >= p = " +
                               std::to_string(L_.p));
  // Compile the weight >= 2 BCH terms into a bracket DAG over the Lyndon
  // words, with coefficients already reduced mod p^E.
  BchTable table = bch_table(cls_);
  int E = L_.module().max_order();
  std::vector<Word> words;  // evaluation order: length then lex
  std::map<Word, int> slot;
  for (const Word& w : lyndon_basis(2, cls_))
    if (w.size() >= 2) {
      slot[w] = static_cast<int>(words.size());
      words.push_back(w);
    }
  auto ref = [&](const Word& w) {
    return w.size() == 1 ? static_cast<int>(w[0]) : slot.at(w) + 2;
  };
  for (const Word& w : words) {
    auto [u, v] = standard_factorization(w);
    Step s{ref(u), ref(v), 0};
    Rat q = table.coeff(w);
    if (!q.is_zero()) s.scalar = reduce_local(q, L_.p, E);
    steps_.push_back(s);
  }
}

LazardGroup exp_group(const NilLieRing& L) { return LazardGroup(L); }

Vec LazardGroup::mul(const Vec& a, const Vec& b) const {
  Module M = L_.module();
  Vec out = M.add(a, b);
  std::vector<Vec> vals;
  vals.reserve(steps_.size() + 2);
  vals.push_back(a);
  vals.push_back(b);
  for (const Step& s : steps_) {
    vals.push_back(L_.bracket(vals[s.left], vals[s.right]));
    if (s.scalar && !M.is_zero(vals.back()))
      out = M.add(out, M.smul(s.scalar, vals.back()));
  }
  return out;
}

Vec LazardGroup::pow(const Vec& a, i64 n) const {
  // exp is a bijection onto the one-parameter subgroup: a^n = n*a
  return L_.module().smul(n, a);
}

Vec LazardGroup::comm(const Vec& a, const Vec& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

Vec LazardGroup::conj(const Vec& a, const Vec& g) const {
  return mul(mul(inv(g), a), g);
}

CayleyGroup make_cayley(int n, int id, std::vector<int> table) {
  CayleyGroup G;
  G.n = n;
  G.id = id;
  G.table = std::move(table);
  if ((int)G.table.size() != n * n)
    throw std::domain_error("make_cayley: bad table shape");
  G.invs.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (G.mul(a, id) != a || G.mul(id, a) != a)
      throw std::domain_error("make_cayley: identity fails");
    for (int b = 0; b < n; ++b)
      if (G.mul(a, b) == id) G.invs[a] = b;
    if (G.invs[a] < 0) throw std::domain_error("make_cayley: no inverse");
    if (G.mul(G.invs[a], a) != id)
      throw std::domain_error("make_cayley: one-sided inverse");
  }
  auto assoc = [&](int a, int b, int c) {
    return G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c));
  };
  if (n <= 250) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (!assoc(a, b, c))
            throw std::domain_error("make_cayley: not associative");
  } else {
    std::mt19937 rng(1);
    for (int t = 0; t < 200000; ++t)
      if (!assoc((int)(rng() % n), (int)(rng() % n), (int)(rng() % n)))
        throw std::domain_error("make_cayley: not associative");
  }
  return G;
}

GroupOps group_ops(const LazardGroup& G) {
  GroupOps o;
  o.n = G.size();
  o.id = G.index_of(G.id());
  if (o.n <= 4096) {
    // closure algorithms revisit products heavily; memoize
    auto memo = std::make_shared<std::vector<i64>>((size_t)o.n * o.n, -1);
    i64 n = o.n;
    o.mul = [&G, memo, n](i64 a, i64 b) {
      i64& slot = (*memo)[(size_t)a * n + b];
      if (slot < 0) slot = G.index_of(G.mul(G.element(a), G.element(b)));
      return slot;
    };
  } else {
    o.mul = [&G](i64 a, i64 b) {
      return G.index_of(G.mul(G.element(a), G.element(b)));
    };
  }
  o.inv = [&G](i64 a) { return G.index_of(G.inv(G.element(a))); };
  for (int i = 0; i < G.ring().rank(); ++i) {
    Vec e(G.ring().rank(), 0);
    e[i] = 1;
    o.gens.push_back(G.index_of(e));
  }
  return o;
}

GroupOps group_ops(const CayleyGroup& G) {
  GroupOps o;
  o.n = G.n;
  o.id = G.id;
  o.mul = [&G](i64 a, i64 b) { return (i64)G.mul((int)a, (int)b); };
  o.inv = [&G](i64 a) { return (i64)G.inv((int)a); };
  for (i64 i = 0; i < G.n; ++i) o.gens.push_back(i);
  return o;
}

ElemSet subgroup_closure(const GroupOps& G, const ElemSet& gens) {
  std::set<i64> seen = {G.id};
  std::vector<i64> frontier = {G.id};
  std::vector<i64> gg;
  for (i64 g : gens) {
    gg.push_back(g);
    gg.push_back(G.inv(g));
  }
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 a : frontier)
      for (i64 g : gg) {
        i64 b = G.mul(a, g);
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return ElemSet(seen.begin(), seen.end());
}

ElemSet normal_closure(const GroupOps& G, const ElemSet& gens) {
  // closure of all conjugates; conjugating the generators suffices
  std::set<i64> cg;
  for (i64 s : gens)
    for (i64 g = 0; g < G.n; ++g) cg.insert(G.mul(G.mul(G.inv(g), s), g));
  return subgroup_closure(G, ElemSet(cg.begin(), cg.end()));
}

ElemSet commutator_subgroup(const GroupOps& G, const ElemSet& a_gens,
                            const ElemSet& b_gens) {
  std::set<i64> cs;
  for (i64 a : a_gens)
    for (i64 b : b_gens)
      cs.insert(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
  return normal_closure(G, ElemSet(cs.begin(), cs.end()));
}

std::vector<ElemSet> gamma_series(const GroupOps& G) {
  ElemSet whole = subgroup_closure(G, G.gens);
  std::vector<ElemSet> series = {whole};
  while (true) {
    // use the full previous term as generating set: safe and still cheap,
    // since terms shrink geometrically
    ElemSet next = commutator_subgroup(G, series.back(), G.gens);
    bool done = next.size() == 1;
    bool stuck = next == series.back();
    series.push_back(std::move(next));
    if (done) break;
    if (stuck) throw std::domain_error("gamma_series: not nilpotent");
  }
  return series;
}

int group_class(const GroupOps& G) {
  return static_cast<int>(gamma_series(G).size()) - 1;
}

ElemSet power_subgroup(const GroupOps& G, const ElemSet& N, i64 p) {
  std::set<i64> ps;
  for (i64 a : N) {
    i64 x = G.id;
    for (i64 k = 0; k < p; ++k) x = G.mul(x, a);
    ps.insert(x);
  }
  return subgroup_closure(G, ElemSet(ps.begin(), ps.end()));
}

ElemSet agemo_mixed(const GroupOps& G, const ElemSet& N, i64 p) {
  std::set<i64> gens;
  for (i64 a : N) {
    i64 x = G.id;
    for (i64 k = 0; k < p; ++k) x = G.mul(x, a);
    gens.insert(x);
  }
  for (i64 n : N)
    for (i64 g = 0; g < G.n; ++g)
      gens.insert(G.mul(G.mul(G.inv(g), G.inv(n)), G.mul(g, n)));
  return subgroup_closure(G, ElemSet(gens.begin(), gens.end()));
}

bool is_subgroup(const GroupOps& G, const ElemSet& S) {
  std::set<i64> s(S.begin(), S.end());
  if (!s.count(G.id)) return false;
  for (i64 a : S)
    for (i64 b : S)
      if (!s.count(G.mul(a, b))) return false;
  return true;
}

bool is_normal(const GroupOps& G, const ElemSet& S) {
  if (!is_subgroup(G, S)) return false;
  std::set<i64> s(S.begin(), S.end());
  for (i64 a : S)
    for (i64 g = 0; g < G.n; ++g)
      if (!s.count(G.mul(G.mul(G.inv(g), a), g))) return false;
  return true;
}

QuotientGroup quotient_group(const GroupOps& G, const ElemSet& N) {
  if (!is_normal(G, N))
    throw std::domain_error("quotient_group: subgroup is not normal");
  // coset of g = { g n }; label cosets by their minimal element
  std::vector<int> coset_of(G.n, -1);
  std::vector<i64> reps;
  for (i64 g = 0; g < G.n; ++g) {
    if (coset_of[g] >= 0) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(g);
    for (i64 n : N) coset_of[G.mul(g, n)] = idx;
  }
  int q = static_cast<int>(reps.size());
  std::vector<int> table((size_t)q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[(size_t)a * q + b] = coset_of[G.mul(reps[a], reps[b])];
  QuotientGroup out;
  out.grp = make_cayley(q, coset_of[G.id], std::move(table));
  out.coset_of = std::move(coset_of);
  out.reps = std::move(reps);
  return out;
}

// ---------------------------------------------------------------------------
// recover_lie: rebuild + and [,] from the black-box group law by a
// filtration fixpoint. Level-k operations are correct modulo terms of
// weight > k; the corrections R (what mul adds beyond a+b) and K (what the
// group commutator adds beyond [a,b]) are symbolic Lie series, evaluated
// with the level-k operations, and peeled off with the exact group inverse.

namespace {

struct Recoverer {
  const LazardGroup& G;
  Module M;
  int c, E;
  std::map<Word, Rat> rem;    // weight >= 2 part of H
  std::map<Word, Rat> kcorr;  // weight >= 3 part of log of group commutator
  std::map<std::tuple<int, i64, i64>, Vec> sum_memo, br_memo;

  explicit Recoverer(const LazardGroup& g)
      : G(g),
        M(g.module()),
        c(g.cls()),
        E(M.max_order()),
        rem(bch_remainder(g.cls())),
        kcorr(commutator_log_remainder(g.cls())) {}

  Vec gmul(const Vec& a, const Vec& b) { return G.mul(a, b); }

  Vec sum(int k, const Vec& a, const Vec& b) {
    if (k <= 1) return gmul(a, b);
    auto key = std::make_tuple(k, M.index_of(a), M.index_of(b));
    auto it = sum_memo.find(key);
    if (it != sum_memo.end()) return it->second;
    Vec corr = eval_series(k - 1, rem, a, b);
    Vec r = sum(k - 1, gmul(a, b), G.inv(corr));
    sum_memo.emplace(key, r);
    return r;
  }

  Vec br(int k, const Vec& a, const Vec& b) {
    if (k <= 1) return G.comm(a, b);
    auto key = std::make_tuple(k, M.index_of(a), M.index_of(b));
    auto it = br_memo.find(key);
    if (it != br_memo.end()) return it->second;
    Vec corr = eval_series(k - 1, kcorr, a, b);
    Vec r = sum(k - 1, G.comm(a, b), G.inv(corr));
    br_memo.emplace(key, r);
    return r;
  }

  Vec eval_series(int k, const std::map<Word, Rat>& series, const Vec& a,
                  const Vec& b) {
    std::vector<Vec> letters = {a, b};
    Vec acc = M.zero();
    for (const auto& [w, q] : series) {
      if ((int)w.size() > c) continue;
      Vec m = eval_bracketing(w, letters, [&](const Vec& u, const Vec& v) {
        return br(k, u, v);
      });
      if (M.is_zero(m)) continue;
      // scalar multiples are exact group powers: n*x = x^n
      Vec term = G.pow(m, reduce_local(q, G.p(), E));
      acc = sum(k, acc, term);
    }
    return acc;
  }
};

}  // namespace

NilLieRing recover_lie(const LazardGroup& G) {
  Recoverer rec(G);
  int c = G.cls();
  int r = G.ring().rank();
  Module M = G.module();
  NilLieRing out;
  out.p = G.p();
  out.orders = G.ring().orders;
  out.labels = G.ring().labels;
  out.class_hint = c;
  out.sc.assign(r, std::vector<Vec>(r, M.zero()));
  auto unit = [&](int i) {
    Vec e(r, 0);
    e[i] = 1;
    return e;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Vec v = rec.br(c, unit(i), unit(j));
      if (rec.br(c + 1, unit(i), unit(j)) != v)
        throw std::logic_error("recover_lie: bracket did not stabilize");
      out.sc[i][j] = v;
    }
  // sanity: the recovered addition must be the coordinate addition
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Vec s = rec.sum(c, unit(i), unit(j));
      if (s != M.add(unit(i), unit(j)))
        throw std::logic_error("recover_lie: addition did not stabilize");
    }
  return out;
}

// ---------------------------------------------------------------------------
// IndexLog: the same fixpoint, but on an opaque finite group given by index
// arithmetic. Used to read the ring structure off extension groups whose
// elements are not coordinate vectors.

IndexLog::IndexLog(GroupOps G, i64 p, int cls, int exponent_e)
    : G_(std::move(G)),
      p_(p),
      c_(cls),
      E_(exponent_e),
      rem_(bch_remainder(cls)),
      kcorr_(commutator_log_remainder(cls)) {
  if (cls >= p) throw hypothesis_violation("IndexLog: class must be < p");
}

i64 IndexLog::comm(i64 a, i64 b) const {
  return G_.mul(G_.mul(G_.inv(a), G_.inv(b)), G_.mul(a, b));
}

i64 IndexLog::smul(i64 n, i64 a) const {
  i64 m = mod_norm(n, pow_i(p_, E_));
  i64 acc = G_.id, base = a;
  while (m > 0) {
    if (m & 1) acc = G_.mul(acc, base);
    base = G_.mul(base, base);
    m >>= 1;
  }
  return acc;
}

i64 IndexLog::sum_k(int k, i64 a, i64 b) {
  if (k <= 1) return G_.mul(a, b);
  auto key = std::make_tuple(k, a, b);
  auto it = sum_memo_.find(key);
  if (it != sum_memo_.end()) return it->second;
  i64 corr = eval_series(k - 1, rem_, a, b);
  i64 r = sum_k(k - 1, G_.mul(a, b), G_.inv(corr));
  sum_memo_.emplace(key, r);
  return r;
}

i64 IndexLog::br_k(int k, i64 a, i64 b) {
  if (k <= 1) return comm(a, b);
  auto key = std::make_tuple(k, a, b);
  auto it = br_memo_.find(key);
  if (it != br_memo_.end()) return it->second;
  i64 corr = eval_series(k - 1, kcorr_, a, b);
  i64 r = sum_k(k - 1, comm(a, b), G_.inv(corr));
  br_memo_.emplace(key, r);
  return r;
}

i64 IndexLog::eval_series(int k, const std::map<Word, Rat>& series, i64 a,
                          i64 b) {
  std::vector<i64> letters = {a, b};
  i64 acc = G_.id;
  for (const auto& [w, q] : series) {
    if ((int)w.size() > c_) continue;
    i64 m = eval_bracketing(w, letters,
                            [&](i64 u, i64 v) { return br_k(k, u, v); });
    if (m == G_.id) continue;
    i64 term = smul(reduce_local(q, p_, E_), m);
    acc = sum_k(k, acc, term);
  }
  return acc;
}

i64 IndexLog::add(i64 a, i64 b) {
  i64 r = sum_k(c_, a, b);
  if (sum_k(c_ + 1, a, b) != r)
    throw std::logic_error("IndexLog: addition did not stabilize");
  return r;
}

i64 IndexLog::br(i64 a, i64 b) {
  i64 r = br_k(c_, a, b);
  if (br_k(c_ + 1, a, b) != r)
    throw std::logic_error("IndexLog: bracket did not stabilize");
  return r;
}

}  // namespace lazard
