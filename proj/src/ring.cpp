#include "lazard/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lazard {

i64 pow_i(i64 base, int exp) {
  i64 r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

i64 mod_norm(i64 x, i64 m) {
  x %= m;
  return x < 0 ? x + m : x;
}

i64 inv_mod(i64 a, i64 m) {
  a = mod_norm(a, m);
  i64 t = 0, newt = 1, r = m, newr = a;
  while (newr != 0) {
    i64 q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not a unit");
  return mod_norm(t, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int val_p(i64 x, i64 p, int e) {
  if (x == 0) return e;
  int v = 0;
  while (v < e && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------

static i64 gcd_i(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

Rat::Rat(i64 n, i64 d) {
  if (d == 0) throw std::domain_error("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = gcd_i(n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rat Rat::operator+(const Rat& o) const {
  return Rat(num * o.den + o.num * den, den * o.den);
}
Rat Rat::operator-(const Rat& o) const {
  return Rat(num * o.den - o.num * den, den * o.den);
}
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator-() const { return Rat(-num, den); }

i64 reduce_local(const Rat& q, i64 p, int e) {
  if (q.den % p == 0)
    throw hypothesis_violation("p-adic pole: denominator divisible by p=" +
                               std::to_string(p));
  i64 m = pow_i(p, e);
  return mod_norm(q.num, m) * inv_mod(q.den, m) % m;
}

// ---------------------------------------------------------------------------

i64 Module::size() const {
  i64 s = 1;
  for (int o : orders) s *= pow_i(p, o);
  return s;
}

int Module::max_order() const {
  int m = 0;
  for (int o : orders) m = std::max(m, o);
  return m;
}

Vec Module::reduce(Vec v) const {
  for (int i = 0; i < rank(); ++i) v[i] = mod_norm(v[i], mod_of(i));
  return v;
}

Vec Module::add(const Vec& a, const Vec& b) const {
  Vec r(rank());
  for (int i = 0; i < rank(); ++i) r[i] = mod_norm(a[i] + b[i], mod_of(i));
  return r;
}

Vec Module::sub(const Vec& a, const Vec& b) const {
  Vec r(rank());
  for (int i = 0; i < rank(); ++i) r[i] = mod_norm(a[i] - b[i], mod_of(i));
  return r;
}

Vec Module::neg(const Vec& a) const {
  Vec r(rank());
  for (int i = 0; i < rank(); ++i) r[i] = mod_norm(-a[i], mod_of(i));
  return r;
}

Vec Module::smul(i64 c, const Vec& a) const {
  Vec r(rank());
  for (int i = 0; i < rank(); ++i)
    r[i] = mod_norm(mod_norm(c, mod_of(i)) * a[i], mod_of(i));
  return r;
}

bool Module::is_zero(const Vec& a) const {
  for (i64 x : a)
    if (x != 0) return false;
  return true;
}

i64 Module::index_of(const Vec& v) const {
  i64 idx = 0;
  for (int i = rank() - 1; i >= 0; --i) idx = idx * mod_of(i) + v[i];
  return idx;
}

Vec Module::element(i64 idx) const {
  Vec v(rank());
  for (int i = 0; i < rank(); ++i) {
    v[i] = idx % mod_of(i);
    idx /= mod_of(i);
  }
  return v;
}

// ---------------------------------------------------------------------------

Mat Mat::identity(int n, i64 m) {
  Mat r(n, n, m);
  for (int i = 0; i < n; ++i) r.at(i, i) = 1 % m;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows || mod != o.mod) throw std::domain_error("Mat*: shape");
  Mat r(rows, o.cols, mod);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      i64 x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols; ++j)
        r.at(i, j) = mod_norm(r.at(i, j) + x * o.at(k, j), mod);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_norm(a[i] + o.a[i], mod);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_norm(a[i] - o.a[i], mod);
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols, rows, mod);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

Vec Mat::apply(const Vec& v) const {
  Vec r(rows, 0);
  for (int i = 0; i < rows; ++i) {
    i64 s = 0;
    for (int j = 0; j < cols; ++j) s = mod_norm(s + at(i, j) * v[j], mod);
    r[i] = s;
  }
  return r;
}

bool Mat::is_zero() const {
  for (i64 x : a)
    if (x) return false;
  return true;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(int cols, i64 p, int e)
    : cols_(cols), p_(p), mod_(pow_i(p, e)), e_(e), pivot_of_col_(cols, -1) {}

bool Echelon::add_row(Vec r) {
  bool grew = false;
  // Worklist because inserting a pivot can spawn an annihilator row.
  std::vector<Vec> work;
  work.push_back(std::move(r));
  while (!work.empty()) {
    Vec row = std::move(work.back());
    work.pop_back();
    for (int c = 0; c < cols_; ++c) {
      if (row[c] == 0) continue;
      int v = val_p(row[c], p_, e_);
      int pr = pivot_of_col_[c];
      if (pr >= 0 && pval_[pr] <= v) {
        i64 mult = row[c] / pow_i(p_, pval_[pr]);
        const Vec& prow = rows_[pr];
        for (int j = c; j < cols_; ++j)
          row[j] = mod_norm(row[j] - mult * prow[j], mod_);
        continue;
      }
      // Normalize: strip the unit so the pivot entry is exactly p^v.
      i64 unit = row[c] / pow_i(p_, v);
      i64 ui = inv_mod(unit, mod_);
      for (int j = c; j < cols_; ++j) row[j] = mod_norm(row[j] * ui, mod_);
      if (pr >= 0) {
        std::swap(rows_[pr], row);
        std::swap(pval_[pr], v);
        // Old pivot row continues through the loop: its entry at c now has
        // valuation >= the new pivot's, so the branch above consumes it.
        i64 mult = row[c] / pow_i(p_, pval_[pr]);
        const Vec& prow = rows_[pr];
        for (int j = c; j < cols_; ++j)
          row[j] = mod_norm(row[j] - mult * prow[j], mod_);
        // Annihilator of the new pivot.
        if (pval_[pr] > 0) {
          Vec ann(cols_, 0);
          i64 mul = pow_i(p_, e_ - pval_[pr]);
          for (int j = c; j < cols_; ++j)
            ann[j] = mod_norm(rows_[pr][j] * mul, mod_);
          work.push_back(std::move(ann));
        }
        continue;
      }
      rows_.push_back(row);
      pcol_.push_back(c);
      pval_.push_back(v);
      pivot_of_col_[c] = static_cast<int>(rows_.size()) - 1;
      grew = true;
      if (v > 0) {
        Vec ann(cols_, 0);
        i64 mul = pow_i(p_, e_ - v);
        for (int j = c; j < cols_; ++j)
          ann[j] = mod_norm(row[j] * mul, mod_);
        work.push_back(std::move(ann));
      }
      row.clear();
      break;
    }
  }
  return grew;
}

void Echelon::reduce(Vec& r) const {
  for (int c = 0; c < cols_; ++c) {
    if (r[c] == 0) continue;
    int pr = pivot_of_col_[c];
    if (pr < 0) continue;
    int v = val_p(r[c], p_, e_);
    if (v < pval_[pr]) continue;
    i64 mult = r[c] / pow_i(p_, pval_[pr]);
    const Vec& prow = rows_[pr];
    for (int j = c; j < cols_; ++j) r[j] = mod_norm(r[j] - mult * prow[j], mod_);
  }
}

bool Echelon::member(const Vec& r) const {
  Vec t = r;
  reduce(t);
  for (i64 x : t)
    if (x) return false;
  return true;
}

std::optional<Vec> Echelon::coords(const Vec& v) const {
  Vec t = v;
  Vec cf(rows_.size(), 0);
  for (int c = 0; c < cols_; ++c) {
    if (t[c] == 0) continue;
    int pr = pivot_of_col_[c];
    if (pr < 0) return std::nullopt;
    int vv = val_p(t[c], p_, e_);
    if (vv < pval_[pr]) return std::nullopt;
    i64 mult = t[c] / pow_i(p_, pval_[pr]);
    cf[pr] = mod_norm(cf[pr] + mult, pow_i(p_, e_ - pval_[pr]));
    const Vec& prow = rows_[pr];
    for (int j = c; j < cols_; ++j) t[j] = mod_norm(t[j] - mult * prow[j], mod_);
  }
  for (i64 x : t)
    if (x) return std::nullopt;
  return cf;
}

int Echelon::log_size() const {
  int s = 0;
  for (int v : pval_) s += e_ - v;
  return s;
}

Mat Echelon::howell_mat() const {
  // Order rows by pivot column, then clear entries above pivots.
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pcol_[a] < pcol_[b]; });
  std::vector<Vec> rows;
  std::vector<int> pc, pv;
  for (int i : order) {
    rows.push_back(rows_[i]);
    pc.push_back(pcol_[i]);
    pv.push_back(pval_[i]);
  }
  for (size_t k = 0; k < rows.size(); ++k) {
    i64 piv = pow_i(p_, pv[k]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == k) continue;
      i64 x = rows[r][pc[k]];
      if (x == 0) continue;
      i64 mult = x / piv;
      if (mult == 0) continue;
      for (int j = pc[k]; j < cols_; ++j)
        rows[r][j] = mod_norm(rows[r][j] - mult * rows[k][j], mod_);
    }
  }
  // Drop rows that became zero (possible when an annihilator row is absorbed).
  Mat H(0, cols_, mod_);
  std::vector<Vec> keep;
  for (auto& r : rows) {
    bool z = true;
    for (i64 x : r)
      if (x) {
        z = false;
        break;
      }
    if (!z) keep.push_back(r);
  }
  H.rows = static_cast<int>(keep.size());
  H.a.resize((size_t)H.rows * cols_);
  for (int i = 0; i < H.rows; ++i)
    std::copy(keep[i].begin(), keep[i].end(), H.a.begin() + (size_t)i * cols_);
  return H;
}

Mat howell_form(const Mat& A, i64 p) {
  int e = 0;
  while (pow_i(p, e) < A.mod) ++e;
  if (pow_i(p, e) != A.mod) throw std::domain_error("howell: modulus not p^e");
  Echelon ech(A.cols, p, e);
  for (int i = 0; i < A.rows; ++i) {
    Vec r(A.a.begin() + (size_t)i * A.cols, A.a.begin() + (size_t)(i + 1) * A.cols);
    ech.add_row(std::move(r));
  }
  return ech.howell_mat();
}

// ---------------------------------------------------------------------------

static int exponent_of(i64 mod, i64 p) {
  int e = 0;
  while (pow_i(p, e) < mod) ++e;
  if (pow_i(p, e) != mod) throw std::domain_error("modulus not a power of p");
  return e;
}

std::vector<Vec> right_kernel(const Mat& A, i64 p) {
  int e = exponent_of(A.mod, p);
  // Replace A by its Howell form: same row span, hence same right kernel,
  // and at most `cols` rows.
  Mat H = howell_form(A, p);
  int n = A.cols, m = H.rows;
  Echelon ech(m + n, p, e);
  for (int i = 0; i < n; ++i) {
    Vec row(m + n, 0);
    for (int j = 0; j < m; ++j) row[j] = H.at(j, i);  // H^T
    row[m + i] = 1;
    ech.add_row(std::move(row));
  }
  std::vector<Vec> ker;
  Mat K = ech.howell_mat();
  for (int i = 0; i < K.rows; ++i) {
    bool zero_head = true;
    for (int j = 0; j < m; ++j)
      if (K.at(i, j)) {
        zero_head = false;
        break;
      }
    if (!zero_head) continue;
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = K.at(i, m + j);
    ker.push_back(std::move(x));
  }
  return ker;
}

std::optional<LinearSolution> solve_linear(const Mat& A, const Vec& b, i64 p) {
  int e = exponent_of(A.mod, p);
  int n = A.cols, m = A.rows;
  // Rows of [A^T | I]; the I-part tracks which x produces each row span
  // element of A^T (i.e. each column combination of A).
  Echelon ech(m + n, p, e);
  for (int i = 0; i < n; ++i) {
    Vec row(m + n, 0);
    for (int j = 0; j < m; ++j) row[j] = A.at(j, i);
    row[m + i] = 1;
    ech.add_row(std::move(row));
  }
  Mat K = ech.howell_mat();
  // Back-substitute b against the head (A^T) parts.
  Vec t = b;
  Vec x(n, 0);
  i64 mod = A.mod;
  for (int i = 0; i < K.rows; ++i) {
    int pc = -1;
    for (int j = 0; j < m; ++j)
      if (K.at(i, j)) {
        pc = j;
        break;
      }
    if (pc < 0) continue;  // kernel row
    if (t[pc] == 0) continue;
    int pv = val_p(K.at(i, pc), p, e);
    if (val_p(t[pc], p, e) < pv) return std::nullopt;
    i64 mult = t[pc] / pow_i(p, pv);
    for (int j = pc; j < m; ++j) t[j] = mod_norm(t[j] - mult * K.at(i, j), mod);
    for (int j = 0; j < n; ++j)
      x[j] = mod_norm(x[j] + mult * K.at(i, m + j), mod);
  }
  for (i64 v : t)
    if (v) return std::nullopt;
  LinearSolution sol;
  sol.particular = std::move(x);
  for (int i = 0; i < K.rows; ++i) {
    bool zero_head = true;
    for (int j = 0; j < m; ++j)
      if (K.at(i, j)) {
        zero_head = false;
        break;
      }
    if (!zero_head) continue;
    Vec k(n);
    for (int j = 0; j < n; ++j) k[j] = K.at(i, m + j);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

// ---------------------------------------------------------------------------

SmithLocal smith_local(const Mat& A, i64 p) {
  int e = exponent_of(A.mod, p);
  i64 mod = A.mod;
  Mat D = A;
  int r = D.rows, c = D.cols;
  Mat U = Mat::identity(r, mod), V = Mat::identity(c, mod),
      Vinv = Mat::identity(c, mod);
  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(D.at(i, k), D.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(U.at(i, k), U.at(j, k));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(D.at(k, i), D.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(V.at(k, i), V.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(Vinv.at(i, k), Vinv.at(j, k));
  };
  auto row_axpy = [&](int dst, int src, i64 mult) {  // row dst -= mult*src
    if (!mult) return;
    for (int k = 0; k < c; ++k)
      D.at(dst, k) = mod_norm(D.at(dst, k) - mult * D.at(src, k), mod);
    for (int k = 0; k < r; ++k)
      U.at(dst, k) = mod_norm(U.at(dst, k) - mult * U.at(src, k), mod);
  };
  auto col_axpy = [&](int dst, int src, i64 mult) {  // col dst -= mult*src
    if (!mult) return;
    for (int k = 0; k < r; ++k)
      D.at(k, dst) = mod_norm(D.at(k, dst) - mult * D.at(k, src), mod);
    for (int k = 0; k < c; ++k)
      V.at(k, dst) = mod_norm(V.at(k, dst) - mult * V.at(k, src), mod);
    // Vinv picks up the inverse op: row src += mult * row dst.
    for (int k = 0; k < c; ++k)
      Vinv.at(src, k) = mod_norm(Vinv.at(src, k) + mult * Vinv.at(dst, k), mod);
  };
  auto row_scale = [&](int i, i64 u) {
    for (int k = 0; k < c; ++k) D.at(i, k) = mod_norm(D.at(i, k) * u, mod);
    for (int k = 0; k < r; ++k) U.at(i, k) = mod_norm(U.at(i, k) * u, mod);
  };

  int t = 0;
  int nmin = std::min(r, c);
  for (; t < nmin; ++t) {
    // Find the minimal-valuation entry in the remaining block.
    int bi = -1, bj = -1, bv = e + 1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        if (D.at(i, j) == 0) continue;
        int v = val_p(D.at(i, j), p, e);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;  // rest is zero
    row_swap(t, bi);
    col_swap(t, bj);
    i64 unit = D.at(t, t) / pow_i(p, bv);
    row_scale(t, inv_mod(unit, mod));
    i64 piv = pow_i(p, bv);
    for (int i = t + 1; i < r; ++i)
      if (D.at(i, t)) row_axpy(i, t, D.at(i, t) / piv);
    for (int j = t + 1; j < c; ++j)
      if (D.at(t, j)) col_axpy(j, t, D.at(t, j) / piv);
  }
  SmithLocal s;
  s.diag_val.assign(nmin, e);
  for (int i = 0; i < nmin; ++i)
    s.diag_val[i] = val_p(D.at(i, i), p, e);
  s.U = std::move(U);
  s.V = std::move(V);
  s.Vinv = std::move(Vinv);
  return s;
}

// ---------------------------------------------------------------------------

i64 factors_size(const InvariantFactors& f, i64 p) {
  i64 s = 1;
  for (int x : f) s *= pow_i(p, x);
  return s;
}

std::string factors_str(const InvariantFactors& f, i64 p) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) os << ",";
    os << pow_i(p, f[i]);
  }
  os << "]";
  return os.str();
}

InvariantFactors quotient_invariants(const std::vector<Vec>& generators,
                                     const std::vector<int>& ambient_orders,
                                     i64 p) {
  int n = static_cast<int>(ambient_orders.size());
  if (n == 0) return {};
  int E = 0;
  for (int o : ambient_orders) E = std::max(E, o);
  i64 mod = pow_i(p, E);
  for (const Vec& g : generators) {
    if (static_cast<int>(g.size()) != n)
      throw std::domain_error("quotient_invariants: generator rank mismatch");
    for (int j = 0; j < n; ++j)
      if (g[j] < 0 || g[j] >= pow_i(p, ambient_orders[j]))
        throw std::domain_error("quotient_invariants: generator out of range");
  }
  Mat R(static_cast<int>(generators.size()) + n, n, mod);
  for (size_t i = 0; i < generators.size(); ++i)
    for (int j = 0; j < n; ++j) R.at(static_cast<int>(i), j) = mod_norm(generators[i][j], mod);
  for (int j = 0; j < n; ++j)
    R.at(static_cast<int>(generators.size()) + j, j) = pow_i(p, ambient_orders[j]) % mod;
  SmithLocal s = smith_local(R, p);
  InvariantFactors f;
  for (int v : s.diag_val)
    if (v > 0) f.push_back(v);
  std::sort(f.rbegin(), f.rend());
  return f;
}

// ---------------------------------------------------------------------------

Submodule::Submodule(Module amb)
    : amb_(std::move(amb)),
      E_(amb_.max_order() == 0 ? 1 : amb_.max_order()),
      ech_(amb_.rank(), amb_.p, E_) {}

Submodule::Submodule(Module amb, const std::vector<Vec>& gens)
    : Submodule(std::move(amb)) {
  for (const Vec& g : gens) add(g);
}

Vec Submodule::scale(const Vec& v) const {
  Vec s(amb_.rank());
  i64 mod = pow_i(amb_.p, E_);
  for (int i = 0; i < amb_.rank(); ++i)
    s[i] = mod_norm(v[i] * pow_i(amb_.p, E_ - amb_.orders[i]), mod);
  return s;
}

Vec Submodule::unscale(const Vec& v) const {
  Vec s(amb_.rank());
  for (int i = 0; i < amb_.rank(); ++i) {
    i64 f = pow_i(amb_.p, E_ - amb_.orders[i]);
    s[i] = mod_norm(v[i] / f, pow_i(amb_.p, amb_.orders[i]));
  }
  return s;
}

bool Submodule::add(const Vec& v) { return ech_.add_row(scale(v)); }

bool Submodule::member(const Vec& v) const { return ech_.member(scale(v)); }

i64 Submodule::size() const { return pow_i(amb_.p, ech_.log_size()); }

std::vector<Vec> Submodule::basis() const {
  std::vector<Vec> b;
  for (const Vec& r : ech_.rows()) b.push_back(unscale(r));
  return b;
}

bool Submodule::operator==(const Submodule& o) const {
  return ech_.howell_mat() == o.ech_.howell_mat();
}

bool Submodule::contains(const Submodule& o) const {
  for (const Vec& r : o.ech_.rows())
    if (!ech_.member(r)) return false;
  return true;
}

InvariantFactors Submodule::invariants() const {
  // Ulm invariants: the number of factors with exponent > k equals
  // log_p|p^k S| - log_p|p^{k+1} S|.
  std::vector<int> logs;
  std::vector<Vec> gens = basis();
  for (int k = 0;; ++k) {
    Submodule s(amb_);
    for (const Vec& g : gens) s.add(amb_.smul(pow_i(amb_.p, k), g));
    int lg = s.ech_.log_size();
    logs.push_back(lg);
    if (lg == 0) break;
  }
  InvariantFactors f;
  // layer[k] = number of factors with exponent > k.
  std::vector<int> layer(logs.size() - 1);
  for (size_t k = 0; k + 1 < logs.size(); ++k) layer[k] = logs[k] - logs[k + 1];
  if (!layer.empty()) {
    int nfac = layer[0];
    for (int i = 0; i < nfac; ++i) {
      int expo = 0;
      while (expo < static_cast<int>(layer.size()) && layer[expo] > i) ++expo;
      f.push_back(expo);
    }
  }
  std::sort(f.rbegin(), f.rend());
  return f;
}

// ---------------------------------------------------------------------------

SubquotientMap::SubquotientMap(Module amb, const std::vector<Vec>& z_gens,
                               const std::vector<Vec>& b_gens)
    : amb_(std::move(amb)),
      E_(std::max(amb_.max_order(), 1)),
      zech_(amb_.rank(), amb_.p, E_) {
  i64 p = amb_.p;
  auto scale = [&](const Vec& v) {
    Vec s(amb_.rank());
    i64 mod = pow_i(p, E_);
    for (int i = 0; i < amb_.rank(); ++i)
      s[i] = mod_norm(v[i] * pow_i(p, E_ - amb_.orders[i]), mod);
    return s;
  };
  for (const Vec& g : z_gens) zech_.add_row(scale(g));
  int m = zech_.rank();
  zorders_.resize(m);
  for (int i = 0; i < m; ++i) zorders_[i] = E_ - zech_.pivot_vals()[i];
  // Express B in Z-coordinates and present the quotient by Smith.
  std::vector<Vec> bcoords;
  for (const Vec& g : b_gens) {
    auto cf = zech_.coords(scale(g));
    if (!cf) throw std::domain_error("SubquotientMap: B not contained in Z");
    bcoords.push_back(*cf);
  }
  if (m == 0) {
    inv_ = {};
    return;
  }
  // The working modulus must cover the true additive order of every row,
  // which can exceed p^{zorders_j}: a Howell row may carry entries of lower
  // valuation to the right of its pivot. E_ is always enough.
  int Ez = std::max(E_, 1);
  i64 mod = pow_i(p, Ez);
  Mat R(static_cast<int>(bcoords.size()) + m, m, mod);
  for (size_t i = 0; i < bcoords.size(); ++i)
    for (int j = 0; j < m; ++j) R.at(static_cast<int>(i), j) = mod_norm(bcoords[i][j], mod);
  // Annihilator relations: p^{zorders_j} * row_j stays in the span (Howell
  // property) but is generally a nonzero combination of the other rows, so
  // the relation is p^{zorders_j} e_j minus that combination -- the diagonal
  // term alone under-presents the quotient whenever e > 1.
  i64 amb_mod = pow_i(p, E_);
  for (int j = 0; j < m; ++j) {
    Vec pj(amb_.rank());
    for (int c = 0; c < amb_.rank(); ++c)
      pj[c] = mod_norm(zech_.rows()[j][c] * pow_i(p, zorders_[j]), amb_mod);
    auto cf = zech_.coords(pj);
    if (!cf)
      throw std::logic_error("SubquotientMap: annihilator left the span");
    int r = static_cast<int>(bcoords.size()) + j;
    R.at(r, j) = pow_i(p, zorders_[j]) % mod;
    for (int i = 0; i < m; ++i)
      R.at(r, i) = mod_norm(R.at(r, i) - (*cf)[i], mod);
  }
  SmithLocal s = smith_local(R, p);
  V_ = s.V;
  Vinv_ = s.Vinv;
  for (int j = 0; j < m; ++j) {
    if (s.diag_val[j] > 0) {
      keep_.push_back(j);
      inv_.push_back(s.diag_val[j]);
    }
  }
  // Keep invariants non-increasing (smith_local emits ascending valuations,
  // but only among nonzero positions; sort slots accordingly).
  std::vector<size_t> order(keep_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return inv_[a] > inv_[b]; });
  std::vector<int> keep2;
  InvariantFactors inv2;
  for (size_t i : order) {
    keep2.push_back(keep_[i]);
    inv2.push_back(inv_[i]);
  }
  keep_ = std::move(keep2);
  inv_ = std::move(inv2);
}

Vec SubquotientMap::project(const Vec& v) const {
  Vec s(amb_.rank());
  i64 p = amb_.p;
  i64 mod = pow_i(p, E_);
  for (int i = 0; i < amb_.rank(); ++i)
    s[i] = mod_norm(v[i] * pow_i(p, E_ - amb_.orders[i]), mod);
  auto cf = zech_.coords(s);
  if (!cf) throw std::domain_error("SubquotientMap::project: not in Z");
  Vec out(inv_.size(), 0);
  if (zech_.rank() == 0) return out;
  // coords -> smith coordinates: (a * V) mod diag
  for (size_t k = 0; k < keep_.size(); ++k) {
    int j = keep_[k];
    i64 sum = 0;
    i64 m = pow_i(p, inv_[k]);
    for (int i = 0; i < zech_.rank(); ++i)
      sum = mod_norm(sum + (*cf)[i] % V_.mod * V_.at(i, j), V_.mod);
    out[k] = mod_norm(sum, m);
  }
  return out;
}

Vec SubquotientMap::lift(const Vec& coords) const {
  // smith coords -> Z coords via Vinv, then combine Z rows.
  int m = zech_.rank();
  Vec zc(m, 0);
  for (size_t k = 0; k < keep_.size(); ++k) {
    int j = keep_[k];
    for (int i = 0; i < m; ++i)
      zc[i] = mod_norm(zc[i] + coords[k] * Vinv_.at(j, i), Vinv_.mod);
  }
  Vec acc(amb_.rank(), 0);
  i64 mod = pow_i(amb_.p, E_);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < amb_.rank(); ++j)
      acc[j] = mod_norm(acc[j] + zc[i] * zech_.rows()[i][j], mod);
  // Unscale.
  Vec out(amb_.rank());
  for (int i = 0; i < amb_.rank(); ++i) {
    i64 f = pow_i(amb_.p, E_ - amb_.orders[i]);
    out[i] = mod_norm(acc[i] / f, pow_i(amb_.p, amb_.orders[i]));
  }
  return out;
}

bool SubquotientMap::is_trivial_class(const Vec& v) const {
  for (i64 x : project(v))
    if (x) return false;
  return true;
}

}  // namespace lazard
