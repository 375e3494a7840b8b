#pragma once

// Exact arithmetic over Z/p^e and p-local rationals, plus the linear
// algebra (Howell form, solving, invariant factors) the rest of the
// library is built on.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lazard {

using i64 = long long;
using Vec = std::vector<i64>;

// A computation was asked to run outside the hypotheses of the theorem
// it implements (c >= p, d >= p-1, c+d >= p, ...). CLI maps this to exit 2.
struct hypothesis_violation : std::runtime_error {
  explicit hypothesis_violation(const std::string& what)
      : std::runtime_error(what) {}
};

// A bounded search ran out of budget without a verdict. CLI exit 3.
struct undecided_error : std::runtime_error {
  explicit undecided_error(const std::string& what)
      : std::runtime_error(what) {}
};

i64 pow_i(i64 base, int exp);
i64 mod_norm(i64 x, i64 m);
i64 inv_mod(i64 a, i64 m);  // a must be a unit mod m
bool is_prime(i64 n);

// p-adic valuation of the residue x in [0, mod); val(0) is capped at e.
int val_p(i64 x, i64 p, int e);

// ---------------------------------------------------------------------------
// PLocalRat: rationals with denominator coprime conditions checked only at
// reduction time (one BCH table serves every prime larger than its class).

struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n, i64 d = 1);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator-() const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
};

// num * den^-1 mod p^e; throws hypothesis_violation ("p-adic pole") if p | den.
i64 reduce_local(const Rat& q, i64 p, int e);

// ---------------------------------------------------------------------------
// Finite abelian p-module ⊕ Z/p^{orders[i]}, elements as coordinate vectors.

struct Module {
  i64 p = 0;
  std::vector<int> orders;  // exponent vector; coordinate i lives mod p^orders[i]

  int rank() const { return static_cast<int>(orders.size()); }
  i64 mod_of(int i) const { return pow_i(p, orders[i]); }
  i64 size() const;
  int max_order() const;
  Vec zero() const { return Vec(orders.size(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec smul(i64 c, const Vec& a) const;
  bool is_zero(const Vec& a) const;
  // mixed-radix enumeration of all elements
  i64 index_of(const Vec& v) const;
  Vec element(i64 idx) const;
};

// ---------------------------------------------------------------------------
// Dense matrix over a single modulus.

struct Mat {
  int rows = 0, cols = 0;
  i64 mod = 1;
  Vec a;

  Mat() = default;
  Mat(int r, int c, i64 m) : rows(r), cols(c), mod(m), a((size_t)r * c, 0) {}

  i64& at(int i, int j) { return a[(size_t)i * cols + j]; }
  i64 at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(int n, i64 m);
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat transpose() const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  bool is_zero() const;
  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && mod == o.mod && a == o.a;
  }
};

// ---------------------------------------------------------------------------
// Incremental echelon over Z/p^e with annihilator closure (the working core
// of the Howell form). Pivots are normalized to exact powers of p.

class Echelon {
 public:
  Echelon(int cols, i64 p, int e);

  // Reduces r against the current pivots and inserts what is left.
  // Returns true if the echelon grew.
  bool add_row(Vec r);

  // Forward-reduce r in place; afterwards r == 0 iff r was in the span.
  void reduce(Vec& r) const;
  bool member(const Vec& r) const;

  // Coefficients of v on the current rows, or nullopt if v is outside the
  // span. Coefficient i lands in [0, p^{e - pval_i}).
  std::optional<Vec> coords(const Vec& v) const;

  int cols() const { return cols_; }
  i64 modulus() const { return mod_; }
  int exponent() const { return e_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivot_cols() const { return pcol_; }
  const std::vector<int>& pivot_vals() const { return pval_; }

  // log_p of the span size: sum of (e - pval_i).
  int log_size() const;

  // Canonical Howell form: entries above each pivot reduced mod the pivot,
  // rows ordered by pivot column.
  Mat howell_mat() const;

 private:
  int cols_;
  i64 p_, mod_;
  int e_;
  std::vector<Vec> rows_;
  std::vector<int> pcol_, pval_;
  std::vector<int> pivot_of_col_;
};

// Howell normal form of A (all moduli equal; throws otherwise by contract of
// Mat). Row span, including annihilator combinations, is preserved.
Mat howell_form(const Mat& A, i64 p);

// ---------------------------------------------------------------------------
// Linear solving.

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;  // generators of {x : A x = 0}
};

// Solve A x = b over Z/p^e; nullopt when no solution exists.
std::optional<LinearSolution> solve_linear(const Mat& A, const Vec& b, i64 p);

// Generators of the right kernel {x : A x = 0}.
std::vector<Vec> right_kernel(const Mat& A, i64 p);

// ---------------------------------------------------------------------------
// Local Smith form: D = U A V with U, V invertible over Z/p^e and D diagonal
// with p-power entries (ascending valuation).

struct SmithLocal {
  std::vector<int> diag_val;  // valuations of the diagonal, length min(r,c)
  Mat U, V, Vinv;
};

SmithLocal smith_local(const Mat& A, i64 p);

// ---------------------------------------------------------------------------
// Invariant factors: non-increasing list of exponents f with factors p^f.

using InvariantFactors = std::vector<int>;

i64 factors_size(const InvariantFactors& f, i64 p);
std::string factors_str(const InvariantFactors& f, i64 p);

// Invariant factors of (⊕ Z/p^{orders[i]}) / <generators>.
InvariantFactors quotient_invariants(const std::vector<Vec>& generators,
                                     const std::vector<int>& ambient_orders,
                                     i64 p);

// ---------------------------------------------------------------------------
// Submodule of a mixed-order module, held as the Howell span of the scaled
// embedding into (Z/p^E)^n. Immutable value semantics after building.

class Submodule {
 public:
  explicit Submodule(Module amb);
  Submodule(Module amb, const std::vector<Vec>& gens);

  const Module& ambient() const { return amb_; }
  bool add(const Vec& v);  // returns true if the span grew
  bool member(const Vec& v) const;
  i64 size() const;
  bool is_zero() const { return ech_.rank() == 0; }
  std::vector<Vec> basis() const;  // unscaled generating rows
  bool operator==(const Submodule& o) const;
  bool contains(const Submodule& o) const;

  // Invariant factors of the subgroup itself (via Ulm-style p^k-multiples).
  InvariantFactors invariants() const;

  Vec scale(const Vec& v) const;
  Vec unscale(const Vec& v) const;

 private:
  Module amb_;
  int E_;
  Echelon ech_;
};

// ---------------------------------------------------------------------------
// Presentation of a subquotient Z/B of a mixed-order ambient module, with a
// projection onto invariant-factor coordinates and a lift back. Every
// cohomology group in the library is delivered through one of these.

class SubquotientMap {
 public:
  SubquotientMap() = default;
  // B must be contained in the span of Z.
  SubquotientMap(Module amb, const std::vector<Vec>& z_gens,
                 const std::vector<Vec>& b_gens);

  const InvariantFactors& invariants() const { return inv_; }
  const Module& ambient() const { return amb_; }
  i64 p() const { return amb_.p; }

  // Coordinates of v in the quotient; throws if v is outside span(Z).
  Vec project(const Vec& v) const;
  // An ambient representative with the given quotient coordinates.
  Vec lift(const Vec& coords) const;
  i64 size() const { return factors_size(inv_, amb_.p); }
  bool is_trivial_class(const Vec& v) const;

 private:
  Module amb_;
  int E_ = 0;
  Echelon zech_{0, 2, 1};
  std::vector<int> zorders_;       // orders of the adapted Z-basis
  Mat V_, Vinv_;                   // smith transforms on Z-coordinates
  std::vector<int> keep_;          // indices of nontrivial diagonal slots
  InvariantFactors inv_;
};

}  // namespace lazard
