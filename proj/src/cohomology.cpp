#include "lazard/cohomology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace lazard {

// ===========================================================================
// streamed_kernel

namespace {

Vec scaled_dense(const SparseRow& r, int eq_order, int nvars, i64 p, int E) {
  i64 mod = pow_i(p, E);
  i64 s = pow_i(p, E - eq_order);
  Vec v(nvars, 0);
  for (const auto& [i, c] : r) v[i] = mod_norm(v[i] + mod_norm(c, mod) * s, mod);
  return v;
}

std::vector<Vec> unit_basis(int nvars) {
  std::vector<Vec> k;
  for (int i = 0; i < nvars; ++i) {
    Vec e(nvars, 0);
    e[i] = 1;
    k.push_back(e);
  }
  return k;
}

}  // namespace

std::vector<Vec> streamed_kernel(i64 p, int E, int nvars,
                                 const RowSource& rows) {
  i64 mod = pow_i(p, E);
  Echelon ech(nvars, p, E);

  i64 total = 0;
  rows([&](const SparseRow&, int) { ++total; });
  if (total == 0) return unit_basis(nvars);

  // seed the elimination with an even sample across the whole stream, so
  // every constraint family is represented before the verify/patch passes
  i64 cap = std::max<i64>(1, 4 * (i64)nvars);
  i64 stride = std::max<i64>(1, total / cap);
  i64 idx = 0;
  rows([&](const SparseRow& r, int eq) {
    if (idx++ % stride == 0) ech.add_row(scaled_dense(r, eq, nvars, p, E));
  });

  auto kernel_now = [&]() -> std::vector<Vec> {
    if (ech.rank() == 0) return unit_basis(nvars);
    Mat A((int)ech.rank(), nvars, mod);
    for (int i = 0; i < ech.rank(); ++i)
      for (int j = 0; j < nvars; ++j) A.at(i, j) = ech.rows()[i][j];
    return right_kernel(A, p);
  };

  struct RestartPass {};  // too many stale-kernel hits: refresh K first
  std::vector<Vec> K = kernel_now();
  for (int pass = 0; pass < 256; ++pass) {
    bool grew = false;
    int added = 0;
    try {
      rows([&](const SparseRow& r, int eq) {
        i64 s = pow_i(p, E - eq);
        for (const Vec& k : K) {
          i64 dot = 0;
          for (const auto& [i, c] : r)
            dot += mod_norm(c, mod) * s % mod * k[i];
          if (dot % mod != 0) {
            // a kernel candidate fails this row: new information
            if (ech.add_row(scaled_dense(r, eq, nvars, p, E))) grew = true;
            if (++added > 64) throw RestartPass{};
            break;
          }
        }
      });
    } catch (const RestartPass&) {
      grew = true;
    }
    if (!grew) return K;
    K = kernel_now();
  }
  throw std::logic_error("streamed_kernel: no convergence");
}

// ===========================================================================
// shared scaffolding: x-vector spaces over a uniform-exponent ambient

namespace {

Module uniform_ambient(i64 p, int nvars, int E) {
  return Module{p, std::vector<int>(nvars, E)};
}

// p^{order(slot)} * e_slot: representation ambiguity of function values
void append_trivial_gens(std::vector<Vec>& gens, const std::vector<int>& slot_orders,
                         i64 p, int E) {
  for (int i = 0; i < (int)slot_orders.size(); ++i) {
    if (slot_orders[i] >= E) continue;
    Vec v(slot_orders.size(), 0);
    v[i] = pow_i(p, slot_orders[i]);
    gens.push_back(v);
  }
}

CohomologyGroup make_cohomology(const Module& amb, std::vector<Vec> z_gens,
                                std::vector<Vec> b_gens,
                                const std::vector<int>& slot_orders, i64 p,
                                int E) {
  append_trivial_gens(z_gens, slot_orders, p, E);
  append_trivial_gens(b_gens, slot_orders, p, E);
  CohomologyGroup out;
  out.pres = SubquotientMap(amb, z_gens, b_gens);
  out.inv = out.pres.invariants();
  for (int i = 0; i < (int)out.inv.size(); ++i) {
    Vec c(out.inv.size(), 0);
    c[i] = 1;
    out.reps.push_back(out.pres.lift(c));
  }
  return out;
}

// M-valued linear form in the unknowns: one sparse scalar form per
// M-coordinate
struct Form {
  std::vector<std::map<int, i64>> c;
  explicit Form(int rM = 0) : c(rM) {}
};

void form_axpy(Form& dst, const Form& src, i64 scal, i64 mod) {
  for (int k = 0; k < (int)dst.c.size(); ++k)
    for (const auto& [v, co] : src.c[k]) {
      i64& slot = dst.c[k][v];
      slot = mod_norm(slot + mod_norm(scal, mod) * co, mod);
      if (slot == 0) dst.c[k].erase(v);
    }
}

// add sign * (the M-vector of slot variables with base var_base)
void form_add_slot(Form& f, int var_base, i64 sign, i64 mod) {
  for (int k = 0; k < (int)f.c.size(); ++k) {
    i64& slot = f.c[k][var_base + k];
    slot = mod_norm(slot + sign, mod);
    if (slot == 0) f.c[k].erase(var_base + k);
  }
}

// dst += sign * A * src, A an endomorphism matrix of M
void form_add_mat(Form& dst, const Mat& A, const Form& src, i64 sign,
                  i64 mod) {
  int rM = (int)dst.c.size();
  for (int k = 0; k < rM; ++k)
    for (int j = 0; j < rM; ++j) {
      i64 a = A.at(k, j);
      if (a == 0) continue;
      for (const auto& [v, co] : src.c[j]) {
        i64& slot = dst.c[k][v];
        slot = mod_norm(slot + sign * (a * co % mod), mod);
        if (slot == 0) dst.c[k].erase(v);
      }
    }
}

void emit_form(const RowEmit& emit, const Form& f, const std::vector<int>& mords) {
  for (int k = 0; k < (int)f.c.size(); ++k) {
    if (f.c[k].empty()) continue;
    SparseRow r(f.c[k].begin(), f.c[k].end());
    emit(r, mords[k]);
  }
}

}  // namespace

// ===========================================================================
// degree 0

namespace {

// kernel of stacked operators A_t (each an endo of M), as a submodule of M
Submodule stacked_kernel(const Module& M, const std::vector<Mat>& ops) {
  i64 p = M.p;
  int E = M.max_order();
  i64 mod = pow_i(p, E);
  int rM = M.rank();
  Mat A((int)ops.size() * rM, rM, mod);
  for (int t = 0; t < (int)ops.size(); ++t)
    for (int k = 0; k < rM; ++k) {
      i64 s = pow_i(p, E - M.orders[k]);  // row valid mod p^{orders[k]}
      for (int j = 0; j < rM; ++j)
        A.at(t * rM + k, j) = mod_norm(ops[t].at(k, j) * s, mod);
    }
  Submodule out(M);
  if (ops.empty()) {
    for (int j = 0; j < rM; ++j) {
      Vec e = M.zero();
      e[j] = 1;
      out.add(e);
    }
    return out;
  }
  for (const Vec& k : right_kernel(A, p)) out.add(M.reduce(k));
  return out;
}

std::vector<Vec> action_image_gens(const Module& M, const std::vector<Mat>& ops) {
  std::vector<Vec> gens;
  for (const Mat& A : ops)
    for (int j = 0; j < M.rank(); ++j) {
      Vec col(M.rank(), 0);
      for (int k = 0; k < M.rank(); ++k) col[k] = A.at(k, j);
      gens.push_back(M.reduce(col));
    }
  return gens;
}

std::vector<Mat> lie_ops(const LieTriple& T) { return T.psi; }

std::vector<Mat> group_ops_minus_id(const GroupTriple& T) {
  std::vector<Mat> ops;
  Mat id = hom_identity(T.M);
  i64 mod = hom_modulus(T.M);
  for (int i = 0; i < T.G.ring().rank(); ++i) {
    Vec e(T.G.ring().rank(), 0);
    e[i] = 1;
    Mat d = T.phi_of(e);
    for (int k = 0; k < T.M.rank(); ++k)
      d.at(k, k) = mod_norm(d.at(k, k) - 1, mod);
    ops.push_back(d);
  }
  return ops;
}

}  // namespace

Submodule h0(const LieTriple& T) { return stacked_kernel(T.M, lie_ops(T)); }
Submodule h0(const GroupTriple& T) {
  return stacked_kernel(T.M, group_ops_minus_id(T));
}

InvariantFactors h0_co(const LieTriple& T) {
  return quotient_invariants(action_image_gens(T.M, lie_ops(T)), T.M.orders,
                             T.M.p);
}
InvariantFactors h0_co(const GroupTriple& T) {
  return quotient_invariants(action_image_gens(T.M, group_ops_minus_id(T)),
                             T.M.orders, T.M.p);
}

// ===========================================================================
// degree 1, group side: crossed homs F(xy) = F(x) + phi(x) F(y)

GroupH1::GroupH1(const GroupTriple& T) : M_(T.M), n_(T.G.size()) {
  i64 p = M_.p;
  int rM = M_.rank();
  int E = M_.max_order();
  i64 mod = pow_i(p, E);
  int nvars = (int)n_ * rM;
  GroupOps ops = group_ops(T.G);
  std::vector<int> slot_orders(nvars);
  for (i64 x = 0; x < n_; ++x)
    for (int k = 0; k < rM; ++k) slot_orders[x * rM + k] = M_.orders[k];

  RowSource src = [&](const RowEmit& emit) {
    // F(id) = 0
    for (int k = 0; k < rM; ++k)
      emit({{(int)(ops.id * rM + k), 1}}, M_.orders[k]);
    for (i64 x = 0; x < n_; ++x)
      for (size_t s = 0; s < ops.gens.size(); ++s) {
        i64 g = ops.gens[s];
        i64 xg = ops.mul(x, g);
        const Mat& phix = T.phi[x];
        Form f(rM);
        form_add_slot(f, (int)(xg * rM), 1, mod);
        form_add_slot(f, (int)(x * rM), -1, mod);
        Form fg(rM);
        form_add_slot(fg, (int)(g * rM), 1, mod);
        form_add_mat(f, phix, fg, -1, mod);
        emit_form(emit, f, M_.orders);
      }
  };
  std::vector<Vec> Z = streamed_kernel(p, E, nvars, src);

  // principal crossed homs F_m(x) = phi(x) m - m
  std::vector<Vec> B;
  for (int j = 0; j < rM; ++j) {
    Vec b(nvars, 0);
    for (i64 x = 0; x < n_; ++x) {
      const Mat& phix = T.phi[x];
      for (int k = 0; k < rM; ++k)
        b[x * rM + k] =
            mod_norm(phix.at(k, j) - (k == j ? 1 : 0), mod);
    }
    B.push_back(b);
  }
  H_ = make_cohomology(uniform_ambient(p, nvars, E), Z, B, slot_orders, p, E);
}

Vec GroupH1::value(const Vec& xvec, i64 g) const {
  int rM = M_.rank();
  Vec v(rM, 0);
  for (int k = 0; k < rM; ++k) v[k] = xvec[g * rM + k];
  return M_.reduce(v);
}

Vec GroupH1::xvec_of(const std::function<Vec(i64)>& F) const {
  int rM = M_.rank();
  Vec x(n_ * rM, 0);
  for (i64 g = 0; g < n_; ++g) {
    Vec v = F(g);
    for (int k = 0; k < rM; ++k) x[g * rM + k] = mod_norm(v[k], M_.mod_of(k));
  }
  return x;
}

Vec GroupH1::class_coords(const std::function<Vec(i64)>& F) const {
  return H_.pres.project(xvec_of(F));
}

// ===========================================================================
// degree 1, Lie side: derivations f([a,b]) = psi(a) f(b) - psi(b) f(a)

LieH1::LieH1(const LieTriple& T) : M_(T.M), L_(T.L.module()) {
  i64 p = M_.p;
  int rM = M_.rank();
  int rL = T.L.rank();
  int E = M_.max_order();
  i64 mod = pow_i(p, E);
  int nvars = rL * rM;
  std::vector<int> slot_orders(nvars);
  for (int i = 0; i < rL; ++i)
    for (int k = 0; k < rM; ++k) slot_orders[i * rM + k] = M_.orders[k];

  RowSource src = [&](const RowEmit& emit) {
    // well-definedness: p^{ord(e_i)} f(e_i) = 0
    for (int i = 0; i < rL; ++i)
      for (int k = 0; k < rM; ++k)
        emit({{i * rM + k, pow_i(p, T.L.orders[i])}}, M_.orders[k]);
    // derivation identity on basis pairs
    for (int i = 0; i < rL; ++i)
      for (int j = 0; j < rL; ++j) {
        const Vec& v = T.L.sc[i][j];  // [e_i, e_j]
        Form f(rM);
        for (int t = 0; t < rL; ++t)
          if (v[t] != 0) form_add_slot(f, t * rM, v[t], mod);
        Form fi(rM), fj(rM);
        form_add_slot(fi, i * rM, 1, mod);
        form_add_slot(fj, j * rM, 1, mod);
        form_add_mat(f, T.psi[i], fj, -1, mod);
        form_add_mat(f, T.psi[j], fi, 1, mod);
        emit_form(emit, f, M_.orders);
      }
  };
  std::vector<Vec> Z = streamed_kernel(p, E, nvars, src);

  // inner derivations f_m(e_i) = psi(e_i) m
  std::vector<Vec> B;
  for (int j = 0; j < rM; ++j) {
    Vec b(nvars, 0);
    for (int i = 0; i < rL; ++i)
      for (int k = 0; k < rM; ++k) b[i * rM + k] = T.psi[i].at(k, j);
    B.push_back(b);
  }
  H_ = make_cohomology(uniform_ambient(p, nvars, E), Z, B, slot_orders, p, E);
}

Vec LieH1::value(const Vec& xvec, const Vec& a) const {
  int rM = M_.rank();
  Vec v(rM, 0);
  for (int i = 0; i < (int)a.size(); ++i)
    for (int k = 0; k < rM; ++k) v[k] += a[i] * xvec[i * rM + k];
  return M_.reduce(v);
}

Vec LieH1::xvec_of(const Mat& deriv) const {
  int rM = M_.rank();
  int rL = L_.rank();
  Vec x(rL * rM, 0);
  for (int i = 0; i < rL; ++i)
    for (int k = 0; k < rM; ++k)
      x[i * rM + k] = mod_norm(deriv.at(k, i), M_.mod_of(k));
  return x;
}

Mat LieH1::matrix_of(const Vec& xvec) const {
  int rM = M_.rank();
  int rL = L_.rank();
  Mat D(rM, rL, hom_modulus(M_));
  for (int i = 0; i < rL; ++i)
    for (int k = 0; k < rM; ++k)
      D.at(k, i) = mod_norm(xvec[i * rM + k], hom_modulus(M_));
  return D;
}

Vec LieH1::class_coords(const Mat& deriv) const {
  return H_.pres.project(xvec_of(deriv));
}

// ===========================================================================
// degree 2, group side

GroupH2::GroupH2(const GroupTriple& T, i64 max_elements) : T_(T) {
  const Module& M = T_.M;
  i64 p = M.p;
  n_ = T_.G.size();
  r_ = T_.G.ring().rank();
  E_ = M.max_order();
  i64 mod = pow_i(p, E_);
  int rM = M.rank();
  i64 bound = max_elements < 0 ? p * p * p : max_elements;
  if (n_ > bound)
    throw std::domain_error("h2_group: |G| = " + std::to_string(n_) +
                            " exceeds bound " + std::to_string(bound));

  GroupOps ops = group_ops(T_.G);
  // spanning tree x = parent * gen, breadth-first
  parent_.assign(n_, -1);
  pgen_.assign(n_, -1);
  std::vector<i64> order;
  order.push_back(ops.id);
  {
    std::vector<char> seen(n_, 0);
    seen[ops.id] = 1;
    for (size_t q = 0; q < order.size(); ++q)
      for (size_t s = 0; s < ops.gens.size(); ++s) {
        i64 z = ops.mul(order[q], ops.gens[s]);
        if (seen[z]) continue;
        seen[z] = 1;
        parent_[z] = order[q];
        pgen_[z] = (i64)s;
        order.push_back(z);
      }
    if ((i64)order.size() != n_)
      throw std::logic_error("h2_group: generators do not generate");
  }

  int nvars = (int)(n_ * r_) * rM;
  auto var = [&](i64 x, i64 s) { return (int)((x * r_ + s) * rM); };
  std::vector<int> slot_orders(nvars);
  for (int v = 0; v < nvars; ++v) slot_orders[v] = M.orders[v % rM];

  RowSource src = [&](const RowEmit& emit) {
    // normalization t(1, s) = 0
    for (int s = 0; s < r_; ++s)
      for (int k = 0; k < rM; ++k)
        emit({{var(ops.id, s) + k, 1}}, M.orders[k]);
    // cocycle identity with third argument a generator; the values f(x, y)
    // are expanded along the tree by
    //   f(x, w*s) = f(x, w) + t(x w, s) - phi(x) t(w, s)
    for (i64 x = 0; x < n_; ++x) {
      std::vector<Form> F(n_, Form(rM));
      for (size_t q = 1; q < order.size(); ++q) {
        i64 z = order[q], w = parent_[z];
        i64 s = pgen_[z];
        F[z] = F[w];
        form_add_slot(F[z], var(ops.mul(x, w), s), 1, mod);
        Form tw(rM);
        form_add_slot(tw, var(w, s), 1, mod);
        form_add_mat(F[z], T_.phi[x], tw, -1, mod);
      }
      for (i64 y = 0; y < n_; ++y)
        for (int s = 0; s < r_; ++s) {
          i64 z = ops.mul(y, ops.gens[s]);
          if (parent_[z] == y && pgen_[z] == s) continue;  // definitional
          Form row = F[z];
          form_axpy(row, F[y], -1, mod);
          form_add_slot(row, var(ops.mul(x, y), s), -1, mod);
          Form ty(rM);
          form_add_slot(ty, var(y, s), 1, mod);
          form_add_mat(row, T_.phi[x], ty, 1, mod);
          emit_form(emit, row, M.orders);
        }
    }
  };
  std::vector<Vec> Z = streamed_kernel(p, E_, nvars, src);

  // coboundaries of normalized h: G -> M
  std::vector<Vec> B;
  for (i64 y0 = 0; y0 < n_; ++y0) {
    if (y0 == ops.id) continue;
    for (int j = 0; j < rM; ++j) {
      Vec b(nvars, 0);
      for (i64 x = 0; x < n_; ++x)
        for (int s = 0; s < r_; ++s) {
          i64 g = ops.gens[s];
          // (delta h)(x, g) = phi(x) h(g) - h(xg) + h(x)
          for (int k = 0; k < rM; ++k) {
            i64 v = 0;
            if (g == y0) v += T_.phi[x].at(k, j);
            if (ops.mul(x, g) == y0 && k == j) v -= 1;
            if (x == y0 && k == j) v += 1;
            b[var(x, s) + k] = mod_norm(v, mod);
          }
        }
      B.push_back(b);
    }
  }
  H_ = make_cohomology(uniform_ambient(p, nvars, E_), Z, B, slot_orders, p,
                       E_);
}

GroupCocycle2 GroupH2::cocycle(const Vec& xvec) const {
  const Module& M = T_.M;
  int rM = M.rank();
  GroupOps ops = group_ops(T_.G);
  auto var = [&](i64 x, i64 s) { return (int)((x * r_ + s) * rM); };
  auto tval = [&](i64 x, i64 s) {
    Vec v(rM, 0);
    for (int k = 0; k < rM; ++k) v[k] = xvec[var(x, s) + k];
    return M.reduce(v);
  };
  // rebuild BFS order from the stored tree
  std::vector<i64> order(1, ops.id);
  {
    std::vector<std::vector<i64>> children(n_);
    for (i64 z = 0; z < n_; ++z)
      if (parent_[z] >= 0) children[parent_[z]].push_back(z);
    for (size_t q = 0; q < order.size(); ++q)
      for (i64 z : children[order[q]]) order.push_back(z);
  }
  GroupCocycle2 out;
  out.f.assign((size_t)n_ * n_, M.zero());
  for (i64 x = 0; x < n_; ++x)
    for (size_t q = 1; q < order.size(); ++q) {
      i64 z = order[q], w = parent_[z];
      i64 s = pgen_[z];
      Vec v = M.add(out.f[(size_t)x * n_ + w], tval(ops.mul(x, w), s));
      v = M.sub(v, hom_apply(M, M, T_.phi[x], tval(w, s)));
      out.f[(size_t)x * n_ + z] = v;
    }
  return out;
}

Vec GroupH2::slot_vector(const std::function<Vec(i64, i64)>& f) const {
  const Module& M = T_.M;
  int rM = M.rank();
  GroupOps ops = group_ops(T_.G);
  Vec x((size_t)(n_ * r_) * rM, 0);
  for (i64 g = 0; g < n_; ++g)
    for (int s = 0; s < r_; ++s) {
      Vec v = f(g, ops.gens[s]);
      for (int k = 0; k < rM; ++k)
        x[((g * r_ + s) * rM) + k] = mod_norm(v[k], M.mod_of(k));
    }
  return x;
}

Vec GroupH2::xvec_of(const GroupCocycle2& c) const {
  if ((i64)c.f.size() != n_ * n_)
    throw std::domain_error("cocycle table has wrong size");
  return slot_vector(
      [&](i64 x, i64 y) { return c.f[(size_t)x * n_ + y]; });
}

Vec GroupH2::class_coords(const GroupCocycle2& c) const {
  std::string why;
  if (!cocycle_valid(T_, c, &why))
    throw std::domain_error("not a 2-cocycle: " + why);
  return H_.pres.project(xvec_of(c));
}

bool cocycle_valid(const GroupTriple& T, const GroupCocycle2& c,
                   std::string* why) {
  const Module& M = T.M;
  i64 n = T.G.size();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if ((i64)c.f.size() != n * n) return fail("table size != |G|^2");
  GroupOps ops = group_ops(T.G);
  for (i64 x = 0; x < n; ++x) {
    if (!M.is_zero(c.f[(size_t)x * n + ops.id]) ||
        !M.is_zero(c.f[(size_t)ops.id * n + x]))
      return fail("not normalized at element " + std::to_string(x));
  }
  auto check = [&](i64 x, i64 y, i64 z) {
    Vec lhs = hom_apply(M, M, T.phi[x], c.f[(size_t)y * n + z]);
    lhs = M.sub(lhs, c.f[(size_t)ops.mul(x, y) * n + z]);
    lhs = M.add(lhs, c.f[(size_t)x * n + ops.mul(y, z)]);
    lhs = M.sub(lhs, c.f[(size_t)x * n + y]);
    return M.is_zero(lhs);
  };
  i64 p = M.p;
  if (n <= p * p) {
    for (i64 x = 0; x < n; ++x)
      for (i64 y = 0; y < n; ++y)
        for (i64 z = 0; z < n; ++z)
          if (!check(x, y, z))
            return fail("cocycle identity fails at (" + std::to_string(x) +
                        "," + std::to_string(y) + "," + std::to_string(z) +
                        ")");
  } else {
    std::mt19937 rng(0xc0c1);
    std::uniform_int_distribution<i64> d(0, n - 1);
    for (int t = 0; t < 100000; ++t) {
      i64 x = d(rng), y = d(rng), z = d(rng);
      if (!check(x, y, z))
        return fail("cocycle identity fails at (" + std::to_string(x) + "," +
                    std::to_string(y) + "," + std::to_string(z) + ")");
    }
  }
  return true;
}

// ===========================================================================
// degree 2, Lie side

namespace {

// canonical digit chain: the predecessor of b strips one unit off the
// highest nonzero coordinate
int top_digit(const Vec& b) {
  for (int i = (int)b.size() - 1; i >= 0; --i)
    if (b[i] != 0) return i;
  return -1;
}

}  // namespace

LieH2::LieH2(const LieTriple& T, i64 max_elements) : T_(T) {
  const Module& M = T_.M;
  Module L = T_.L.module();
  i64 p = M.p;
  n_ = L.size();
  rL_ = T_.L.rank();
  E_ = M.max_order();
  i64 mod = pow_i(p, E_);
  int rM = M.rank();
  i64 bound = max_elements < 0 ? p * p * p : max_elements;
  if (n_ > bound)
    throw std::domain_error("h2_lie: |L| = " + std::to_string(n_) +
                            " exceeds bound " + std::to_string(bound));

  std::vector<Vec> elems;
  for (i64 i = 0; i < n_; ++i) elems.push_back(L.element(i));
  auto eidx = [&](int i) {  // index of basis element e_i
    Vec e = L.zero();
    e[i] = 1;
    return L.index_of(e);
  };
  auto addi = [&](i64 a, i64 b) {
    return L.index_of(L.add(elems[a], elems[b]));
  };
  auto bri = [&](i64 a, i64 b) {
    return L.index_of(T_.L.bracket(elems[a], elems[b]));
  };

  i64 nU = n_ * rL_ * rM;
  int nvars = (int)(2 * nU);
  auto var_u = [&](i64 a, int i) { return (int)((a * rL_ + i) * rM); };
  auto var_w = [&](int i, i64 c) { return (int)(nU + ((i64)i * n_ + c) * rM); };
  std::vector<int> slot_orders(nvars);
  for (int v = 0; v < nvars; ++v) slot_orders[v] = M.orders[v % rM];

  // g(a, b) as a form in the u-slots, along the digit chain of b:
  //   g(a, w + e_i) = g(a, w) + u_i(a + w) - u_i(w)
  auto form_g = [&](i64 a, i64 b) {
    Form f(rM);
    Vec digits = elems[b];
    i64 w = 0;  // running element index
    Vec wv = L.zero();
    for (int i = 0; i < rL_; ++i)
      for (i64 t = 0; t < digits[i]; ++t) {
        form_add_slot(f, var_u(addi(a, w), i), 1, mod);
        form_add_slot(f, var_u(w, i), -1, mod);
        wv[i] += 1;
        w = L.index_of(wv);
      }
    return f;
  };
  // f(a, c) in the u- and w-slots, along the digit chain of a:
  //   f(w + e_i, c) = f(w, c) + w_i(c) + g([w,c],[e_i,c]) + psi(c) g(w, e_i)
  auto form_f = [&](i64 a, i64 c) {
    Form f(rM);
    Mat psic = T_.psi_of(elems[c]);
    Vec digits = elems[a];
    i64 w = 0;
    Vec wv = L.zero();
    for (int i = 0; i < rL_; ++i)
      for (i64 t = 0; t < digits[i]; ++t) {
        form_add_slot(f, var_w(i, c), 1, mod);
        form_axpy(f, form_g(bri(w, c), bri(eidx(i), c)), 1, mod);
        form_add_mat(f, psic, form_g(w, eidx(i)), 1, mod);
        wv[i] += 1;
        w = L.index_of(wv);
      }
    return f;
  };
  // is (b, i) the defining chain step of z = b + e_i?
  auto definitional = [&](i64 b, int i, i64 z) {
    const Vec& bb = elems[b];
    const Vec& zz = elems[z];
    if (top_digit(zz) != i || zz[i] != bb[i] + 1) return false;
    for (int j = 0; j < rL_; ++j)
      if (j != i && zz[j] != bb[j]) return false;
    return true;
  };

  RowSource src = [&](const RowEmit& emit) {
    // normalization u_i(0) = 0, w_i(0) = 0
    for (int i = 0; i < rL_; ++i)
      for (int k = 0; k < rM; ++k) {
        emit({{var_u(0, i) + k, 1}}, M.orders[k]);
        emit({{var_w(i, 0) + k, 1}}, M.orders[k]);
      }
    // cocycle family: g(a,b) + u_i(a+b) - u_i(b) - g(a, b+e_i) = 0
    for (i64 a = 0; a < n_; ++a)
      for (i64 b = 0; b < n_; ++b)
        for (int i = 0; i < rL_; ++i) {
          i64 z = addi(b, eidx(i));
          if (definitional(b, i, z)) continue;
          Form row = form_g(a, b);
          form_add_slot(row, var_u(addi(a, b), i), 1, mod);
          form_add_slot(row, var_u(b, i), -1, mod);
          form_axpy(row, form_g(a, z), -1, mod);
          emit_form(emit, row, M.orders);
        }
    // symmetry of g on basis pairs (biadditive defect => basis suffices)
    for (int i = 0; i < rL_; ++i)
      for (int j = i + 1; j < rL_; ++j) {
        Form row = form_g(eidx(i), eidx(j));
        form_axpy(row, form_g(eidx(j), eidx(i)), -1, mod);
        emit_form(emit, row, M.orders);
      }
    // twisted biadditivity in the first argument:
    // f(a,c) + w_i(c) + g([a,c],[e_i,c]) + psi(c) g(a,e_i) - f(a+e_i,c) = 0
    for (i64 c = 0; c < n_; ++c) {
      Mat psic = T_.psi_of(elems[c]);
      for (i64 a = 0; a < n_; ++a)
        for (int i = 0; i < rL_; ++i) {
          i64 z = addi(a, eidx(i));
          if (definitional(a, i, z)) continue;
          Form row = form_f(a, c);
          form_add_slot(row, var_w(i, c), 1, mod);
          form_axpy(row, form_g(bri(a, c), bri(eidx(i), c)), 1, mod);
          form_add_mat(row, psic, form_g(a, eidx(i)), 1, mod);
          form_axpy(row, form_f(z, c), -1, mod);
          emit_form(emit, row, M.orders);
        }
    }
    // twisted antisymmetry: f(a,b) + f(b,a) + g([a,b],[b,a]) = 0.
    // Not implied by the other families; without it the solution space
    // contains pairs whose bracket is not antisymmetric.
    for (i64 a = 0; a < n_; ++a)
      for (i64 b = a; b < n_; ++b) {
        Form row = form_f(a, b);
        form_axpy(row, form_f(b, a), 1, mod);
        form_axpy(row, form_g(bri(a, b), bri(b, a)), 1, mod);
        emit_form(emit, row, M.orders);
      }
    // alternation f(a,a) = 0 (independent of p parity)
    for (i64 a = 0; a < n_; ++a) {
      Form row = form_f(a, a);
      emit_form(emit, row, M.orders);
    }
    // twisted Jacobi on basis triples; multiadditivity follows from the
    // families above, so basis triples pin the general identity
    for (int i = 0; i < rL_; ++i)
      for (int j = 0; j < rL_; ++j)
        for (int k = 0; k < rL_; ++k) {
          i64 ei = eidx(i), ej = eidx(j), ek = eidx(k);
          Form row(rM);
          i64 arg[3][3] = {{ei, ej, ek}, {ej, ek, ei}, {ek, ei, ej}};
          for (int t = 0; t < 3; ++t) {
            form_axpy(row, form_f(bri(arg[t][0], arg[t][1]), arg[t][2]), 1,
                      mod);
            form_add_mat(row, T_.psi_of(elems[arg[t][2]]),
                         form_f(arg[t][0], arg[t][1]), -1, mod);
          }
          i64 b1 = bri(bri(ei, ej), ek);
          i64 b2 = bri(bri(ej, ek), ei);
          i64 b3 = bri(bri(ek, ei), ej);
          form_axpy(row, form_g(b1, b2), 1, mod);
          form_axpy(row, form_g(addi(b1, b2), b3), 1, mod);
          emit_form(emit, row, M.orders);
        }
  };
  std::vector<Vec> Z = streamed_kernel(p, E_, nvars, src);

  // coboundary pair (h(a)+h(b)-h(a+b), psi(a)h(b)-psi(b)h(a)-h([a,b]))
  std::vector<Vec> B;
  for (i64 a0 = 1; a0 < n_; ++a0)
    for (int j = 0; j < rM; ++j) {
      Vec b(nvars, 0);
      auto hval = [&](i64 x, int k) -> i64 { return x == a0 && k == j ? 1 : 0; };
      for (i64 a = 0; a < n_; ++a)
        for (int i = 0; i < rL_; ++i)
          for (int k = 0; k < rM; ++k)
            b[var_u(a, i) + k] = mod_norm(
                hval(a, k) + hval(eidx(i), k) - hval(addi(a, eidx(i)), k),
                mod);
      for (int i = 0; i < rL_; ++i)
        for (i64 c = 0; c < n_; ++c)
          for (int k = 0; k < rM; ++k) {
            i64 v = 0;
            if (c == a0) v += T_.psi[i].at(k, j);
            if (eidx(i) == a0) {
              Mat psic = T_.psi_of(elems[c]);
              v -= psic.at(k, j);
            }
            v -= hval(bri(eidx(i), c), k);
            b[var_w(i, c) + k] = mod_norm(v, mod);
          }
      B.push_back(b);
    }
  H_ = make_cohomology(uniform_ambient(p, nvars, E_), Z, B, slot_orders, p,
                       E_);
}

LieFactorSystem LieH2::factor_system(const Vec& xvec) const {
  const Module& M = T_.M;
  Module L = T_.L.module();
  int rM = M.rank();
  std::vector<Vec> elems;
  for (i64 i = 0; i < n_; ++i) elems.push_back(L.element(i));
  auto eidx = [&](int i) {
    Vec e = L.zero();
    e[i] = 1;
    return L.index_of(e);
  };
  i64 nU = n_ * rL_ * rM;
  auto uval = [&](i64 a, int i) {
    Vec v(rM, 0);
    for (int k = 0; k < rM; ++k) v[k] = xvec[(a * rL_ + i) * rM + k];
    return M.reduce(v);
  };
  auto wval = [&](int i, i64 c) {
    Vec v(rM, 0);
    for (int k = 0; k < rM; ++k) v[k] = xvec[nU + ((i64)i * n_ + c) * rM + k];
    return M.reduce(v);
  };
  LieFactorSystem out;
  out.g.assign((size_t)n_ * n_, M.zero());
  out.f.assign((size_t)n_ * n_, M.zero());
  // g first: DP over the second argument in index order (the chain
  // predecessor has a smaller index)
  for (i64 a = 0; a < n_; ++a)
    for (i64 b = 1; b < n_; ++b) {
      int i = top_digit(elems[b]);
      Vec wv = elems[b];
      wv[i] -= 1;
      i64 w = L.index_of(wv);
      Vec v = out.g[(size_t)a * n_ + w];
      v = M.add(v, uval(L.index_of(L.add(elems[a], wv)), i));
      v = M.sub(v, uval(w, i));
      out.g[(size_t)a * n_ + b] = v;
    }
  auto gtab = [&](i64 a, i64 b) { return out.g[(size_t)a * n_ + b]; };
  for (i64 c = 0; c < n_; ++c) {
    Mat psic = T_.psi_of(elems[c]);
    for (i64 a = 1; a < n_; ++a) {
      int i = top_digit(elems[a]);
      Vec wv = elems[a];
      wv[i] -= 1;
      i64 w = L.index_of(wv);
      i64 wc = L.index_of(T_.L.bracket(wv, elems[c]));
      i64 eic = L.index_of(T_.L.bracket(elems[eidx(i)], elems[c]));
      Vec v = out.f[(size_t)w * n_ + c];
      v = M.add(v, wval(i, c));
      v = M.add(v, gtab(wc, eic));
      v = M.add(v, hom_apply(M, M, psic, gtab(w, eidx(i))));
      out.f[(size_t)a * n_ + c] = v;
    }
  }
  return out;
}

Vec LieH2::xvec_of(const LieFactorSystem& s) const {
  const Module& M = T_.M;
  Module L = T_.L.module();
  int rM = M.rank();
  i64 nU = n_ * rL_ * rM;
  Vec x((size_t)(2 * nU), 0);
  auto eidx = [&](int i) {
    Vec e = L.zero();
    e[i] = 1;
    return L.index_of(e);
  };
  for (i64 a = 0; a < n_; ++a)
    for (int i = 0; i < rL_; ++i) {
      const Vec& v = s.g[(size_t)a * n_ + eidx(i)];
      for (int k = 0; k < rM; ++k)
        x[(a * rL_ + i) * rM + k] = mod_norm(v[k], M.mod_of(k));
    }
  for (int i = 0; i < rL_; ++i)
    for (i64 c = 0; c < n_; ++c) {
      const Vec& v = s.f[(size_t)eidx(i) * n_ + c];
      for (int k = 0; k < rM; ++k)
        x[nU + ((i64)i * n_ + c) * rM + k] = mod_norm(v[k], M.mod_of(k));
    }
  return x;
}

Vec LieH2::class_coords(const LieFactorSystem& s) const {
  std::string why;
  if (!factor_system_valid(T_, s, &why))
    throw std::domain_error("not a factor system: " + why);
  return H_.pres.project(xvec_of(s));
}

bool factor_system_valid(const LieTriple& T, const LieFactorSystem& s,
                         std::string* why) {
  const Module& M = T.M;
  Module L = T.L.module();
  i64 n = L.size();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if ((i64)s.g.size() != n * n || (i64)s.f.size() != n * n)
    return fail("table size != |L|^2");
  std::vector<Vec> elems;
  for (i64 i = 0; i < n; ++i) elems.push_back(L.element(i));
  auto addi = [&](i64 a, i64 b) {
    return L.index_of(L.add(elems[a], elems[b]));
  };
  auto bri = [&](i64 a, i64 b) {
    return L.index_of(T.L.bracket(elems[a], elems[b]));
  };
  auto g = [&](i64 a, i64 b) { return s.g[(size_t)a * n + b]; };
  auto f = [&](i64 a, i64 b) { return s.f[(size_t)a * n + b]; };
  for (i64 a = 0; a < n; ++a)
    if (!M.is_zero(g(a, 0)) || !M.is_zero(g(0, a)) || !M.is_zero(f(a, 0)) ||
        !M.is_zero(f(0, a)) || !M.is_zero(f(a, a)))
      return fail("not normalized at element " + std::to_string(a));

  auto check_pair = [&](i64 a, i64 b) {
    if (g(a, b) != g(b, a)) return std::string("g not symmetric");
    Vec anti = M.add(M.add(f(a, b), f(b, a)), g(bri(a, b), bri(b, a)));
    if (!M.is_zero(anti)) return std::string("twisted antisymmetry fails");
    return std::string();
  };
  auto check_cocycle = [&](i64 a, i64 b, i64 c) {
    Vec lhs = M.add(g(a, b), g(addi(a, b), c));
    Vec rhs = M.add(g(b, c), g(a, addi(b, c)));
    return lhs == rhs;
  };
  auto check_biadd = [&](i64 a, i64 b, i64 c) {
    Mat psic = T.psi_of(elems[c]);
    Vec lhs = M.sub(f(addi(a, b), c), hom_apply(M, M, psic, g(a, b)));
    Vec rhs = M.add(M.add(f(a, c), f(b, c)), g(bri(a, c), bri(b, c)));
    return lhs == rhs;
  };
  auto check_jacobi = [&](i64 a, i64 b, i64 c) {
    Vec acc = M.zero();
    i64 arg[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (auto& t : arg) {
      acc = M.add(acc, f(bri(t[0], t[1]), t[2]));
      acc = M.sub(acc, hom_apply(M, M, T.psi_of(elems[t[2]]), f(t[0], t[1])));
    }
    i64 b1 = bri(bri(a, b), c), b2 = bri(bri(b, c), a), b3 = bri(bri(c, a), b);
    acc = M.add(acc, g(b1, b2));
    acc = M.add(acc, g(addi(b1, b2), b3));
    return M.is_zero(acc);
  };

  i64 p = M.p;
  auto run_triple = [&](i64 a, i64 b, i64 c) -> std::string {
    std::string e = check_pair(a, b);
    if (!e.empty()) return e;
    if (!check_cocycle(a, b, c)) return "g cocycle identity fails";
    if (!check_biadd(a, b, c)) return "twisted biadditivity fails";
    if (!check_jacobi(a, b, c)) return "twisted Jacobi fails";
    return std::string();
  };
  auto at = [&](i64 a, i64 b, i64 c, const std::string& e) {
    return e + " at (" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
  };
  if (n <= p * p) {
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b)
        for (i64 c = 0; c < n; ++c) {
          std::string e = run_triple(a, b, c);
          if (!e.empty()) return fail(at(a, b, c, e));
        }
  } else {
    std::mt19937 rng(0x11e2);
    std::uniform_int_distribution<i64> d(0, n - 1);
    for (int t = 0; t < 100000; ++t) {
      i64 a = d(rng), b = d(rng), c = d(rng);
      std::string e = run_triple(a, b, c);
      if (!e.empty()) return fail(at(a, b, c, e));
    }
  }
  return true;
}

}  // namespace lazard
