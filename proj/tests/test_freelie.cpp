#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lazard/freelie.hpp"

using namespace lazard;

namespace {
Word W(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(static_cast<char>(l));
  return w;
}
const Word X = W({0}), Y = W({1});

// necklace count: number of Lyndon words of weight w over k letters
long long witt(int k, int w) {
  auto mobius = [](int n) {
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  long long s = 0;
  for (int d = 1; d <= w; ++d)
    if (w % d == 0) s += mobius(d) * pow_i(k, w / d);
  return s / w;
}
}  // namespace

TEST_CASE("lyndon_basis examples and Witt counts") {
  CHECK(lyndon_basis(2, 1) == std::vector<Word>{X, Y});
  CHECK(lyndon_basis(1, 3) == std::vector<Word>{X});
  CHECK(lyndon_basis(2, 3) ==
        std::vector<Word>{X, Y, W({0, 1}), W({0, 0, 1}), W({0, 1, 1})});
  for (int k = 1; k <= 3; ++k)
    for (int maxw = 1; maxw <= 6; ++maxw) {
      auto basis = lyndon_basis(k, maxw);
      long long expect = 0;
      for (int w = 1; w <= maxw; ++w) expect += witt(k, w);
      CHECK((long long)basis.size() == expect);
      for (const Word& w : basis) CHECK(is_lyndon(w));
      // ordered by length then lex
      for (size_t i = 0; i + 1 < basis.size(); ++i) {
        CHECK((basis[i].size() < basis[i + 1].size() ||
               (basis[i].size() == basis[i + 1].size() &&
                basis[i] < basis[i + 1])));
      }
    }
}

TEST_CASE("standard factorization splits into smaller Lyndon words") {
  CHECK(standard_factorization(W({0, 1})) == std::make_pair(X, Y));
  CHECK(standard_factorization(W({0, 0, 1})) == std::make_pair(X, W({0, 1})));
  CHECK(standard_factorization(W({0, 1, 1})) == std::make_pair(W({0, 1}), Y));
  for (const Word& w : lyndon_basis(3, 6)) {
    if (w.size() < 2) continue;
    auto [u, v] = standard_factorization(w);
    CHECK(u + v == w);
    CHECK(is_lyndon(u));
    CHECK(is_lyndon(v));
    CHECK(u < v);
  }
}

TEST_CASE("exp and log are inverse truncated series") {
  for (int cutoff = 1; cutoff <= 6; ++cutoff) {
    FreeAssoc x = FreeAssoc::gen(0, cutoff), y = FreeAssoc::gen(1, cutoff);
    CHECK(exp_trunc(FreeAssoc(cutoff)) == FreeAssoc::one(cutoff));
    CHECK(log_trunc(exp_trunc(x)) == x);
    CHECK(exp_trunc(log_trunc(FreeAssoc::one(cutoff) + x)) ==
          FreeAssoc::one(cutoff) + x);
    FreeAssoc mix = x + y + comm(x, y).scaled(Rat(1, 3));
    CHECK(log_trunc(exp_trunc(mix)) == mix);
  }
  // exp(x) at cutoff 3 = 1 + x + x^2/2 + x^3/6
  FreeAssoc e = exp_trunc(FreeAssoc::gen(0, 3));
  CHECK(e.at(W({})) == Rat(1));
  CHECK(e.at(X) == Rat(1));
  CHECK(e.at(W({0, 0})) == Rat(1, 2));
  CHECK(e.at(W({0, 0, 0})) == Rat(1, 6));
}

TEST_CASE("project_to_lie basics") {
  int cutoff = 3;
  FreeAssoc x = FreeAssoc::gen(0, cutoff), y = FreeAssoc::gen(1, cutoff);
  auto c1 = project_to_lie(comm(x, y), cutoff);
  REQUIRE(c1.has_value());
  CHECK(c1->size() == 1);
  CHECK(c1->at(W({0, 1})) == Rat(1));
  CHECK(!project_to_lie(x * y, cutoff).has_value());
  // random Lie combinations round-trip; perturbed ones are rejected
  std::mt19937 rng(7);
  auto basis = lyndon_basis(2, 4);
  for (int t = 0; t < 40; ++t) {
    FreeAssoc a(4);
    std::map<Word, Rat> want;
    for (const Word& w : basis) {
      i64 n = (i64)(rng() % 7) - 3;
      if (n == 0) continue;
      Rat q(n, 1 + (i64)(rng() % 3));
      want[w] = q;
      a = a + bracket_expansion(w, 4).scaled(q);
    }
    auto got = project_to_lie(a, 4);
    REQUIRE(got.has_value());
    CHECK(*got == want);
    // non-Lie perturbation: add a lone monomial xy
    FreeAssoc bad = a + FreeAssoc::gen(0, 4) * FreeAssoc::gen(1, 4);
    auto reject = project_to_lie(bad, 4);
    if (reject) CHECK(!(reject->count(W({0, 1})) &&
                        (*reject)[W({0, 1})] == want[W({0, 1})]));
    CHECK(!reject.has_value());
  }
}

TEST_CASE("bch_table frozen low-weight coefficients") {
  BchTable t1 = bch_table(1);
  CHECK(t1.terms.size() == 2);
  CHECK(t1.coeff(X) == Rat(1));
  CHECK(t1.coeff(Y) == Rat(1));

  BchTable t2 = bch_table(2);
  CHECK(t2.coeff(W({0, 1})) == Rat(1, 2));

  BchTable t3 = bch_table(3);
  CHECK(t3.coeff(W({0, 0, 1})) == Rat(1, 12));  // [x,[x,y]]
  // the basis element for xyy is [[x,y],y] = -[y,[x,y]]
  CHECK(t3.coeff(W({0, 1, 1})) == Rat(1, 12));
}

TEST_CASE("bch_table matches the associative oracle up to class 5") {
  for (int c = 1; c <= 5; ++c) {
    BchTable t = bch_table(c);
    FreeAssoc x = FreeAssoc::gen(0, c), y = FreeAssoc::gen(1, c);
    FreeAssoc want = log_trunc(exp_trunc(x) * exp_trunc(y));
    FreeAssoc got(c);
    for (const auto& [w, q] : t.terms)
      got = got + bracket_expansion(w, c).scaled(q);
    CHECK(got == want);
    // normalization H(x,0) = x: substituting y=0 kills every mixed term
    CHECK(t.coeff(X) == Rat(1));
    CHECK(t.coeff(Y) == Rat(1));
    // every prime factor of a weight-w denominator is <= w, so the table
    // reduces mod p^e for any p > c
    for (const auto& [w, q] : t.terms) {
      i64 d = q.den;
      for (i64 f = 2; f <= (i64)w.size(); ++f)
        while (d % f == 0) d /= f;
      CHECK(d == 1);
    }
  }
}

TEST_CASE("commutator log remainder: weight-3 terms of log[exp x, exp y]") {
  // log((exp x)^-1 (exp y)^-1 exp x exp y) = [x,y] + higher;
  // verify against direct expansion at class 4
  int c = 4;
  auto rem = commutator_log_remainder(c);
  FreeAssoc x = FreeAssoc::gen(0, c), y = FreeAssoc::gen(1, c);
  FreeAssoc u = exp_trunc(x.scaled(Rat(-1))) * exp_trunc(y.scaled(Rat(-1))) *
                exp_trunc(x) * exp_trunc(y);
  FreeAssoc want = log_trunc(u) - bracket_expansion(W({0, 1}), c);
  FreeAssoc got(c);
  for (const auto& [w, q] : rem) {
    CHECK(w.size() >= 3);
    got = got + bracket_expansion(w, c).scaled(q);
  }
  CHECK(got == want);
}

TEST_CASE("inverse identities for h1 and h2 hold in the truncated algebra") {
  for (int c = 1; c <= 5; ++c) {
    SeriesCheck r = inverse_bch_identities(c);
    CHECK(r.pass);
    for (int w = 1; w <= c; ++w) CHECK(r.weight_ok[w]);
  }
}
