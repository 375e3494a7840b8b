#pragma once

// Free truncated associative algebra on a finite alphabet with exact
// p-local rational coefficients, the exp/log series, Lyndon-word Lie
// bases, and extraction of the BCH series.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lazard/ring.hpp"

namespace lazard {

// Words are strings over bytes 0, 1, ... (letter indices, not ASCII).
using Word = std::string;

// Element of the free associative algebra with all monomials of weight
// > cutoff discarded. Weight = word length; "" is the unit monomial.
class FreeAssoc {
 public:
  explicit FreeAssoc(int cutoff) : cutoff_(cutoff) {}

  static FreeAssoc one(int cutoff);
  static FreeAssoc gen(int letter, int cutoff);

  int cutoff() const { return cutoff_; }
  const std::map<Word, Rat>& terms() const { return c_; }
  Rat at(const Word& w) const;
  void set(const Word& w, const Rat& r);  // drops weight > cutoff and zeros
  Rat constant_term() const { return at(""); }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const FreeAssoc& o) const { return c_ == o.c_; }

  FreeAssoc operator+(const FreeAssoc& o) const;
  FreeAssoc operator-(const FreeAssoc& o) const;
  FreeAssoc operator*(const FreeAssoc& o) const;
  FreeAssoc scaled(const Rat& r) const;

 private:
  int cutoff_;
  std::map<Word, Rat> c_;
};

// [a,b] = ab - ba
FreeAssoc comm(const FreeAssoc& a, const FreeAssoc& b);

// exp(a) = sum_{k<=cutoff} a^k / k!; requires zero constant term.
FreeAssoc exp_trunc(const FreeAssoc& a);
// log(u) = sum_{k<=cutoff} (-1)^{k+1} (u-1)^k / k; requires constant term 1.
FreeAssoc log_trunc(const FreeAssoc& u);

// All Lyndon words of weight <= max_weight, ordered by length then lex.
std::vector<Word> lyndon_basis(int alphabet_size, int max_weight);
bool is_lyndon(const Word& w);

// Chen-Fox-Lyndon standard factorization w = u v with v the longest
// proper Lyndon suffix; requires |w| >= 2 and w Lyndon.
std::pair<Word, Word> standard_factorization(const Word& w);

// The associative expansion of the standard bracketing of a Lyndon word.
FreeAssoc bracket_expansion(const Word& lyndon, int cutoff);

// Evaluate the standard bracketing of a Lyndon word over any bracket.
template <class T, class Br>
T eval_bracketing(const Word& w, const std::vector<T>& letters, Br&& br) {
  if (w.size() == 1) return letters[static_cast<unsigned char>(w[0])];
  auto [u, v] = standard_factorization(w);
  return br(eval_bracketing(u, letters, br), eval_bracketing(v, letters, br));
}

// Coordinates on bracketed Lyndon words, or nullopt when the element is
// not in the Lie subalgebra. Requires zero constant term.
std::optional<std::map<Word, Rat>> project_to_lie(const FreeAssoc& a,
                                                  int max_weight);

// H(x,y) = log(exp x . exp y) truncated at weight c, as exact coordinates
// on bracketed Lyndon words over the two-letter alphabet {0=x, 1=y}.
struct BchTable {
  int cls = 0;
  std::vector<std::pair<Word, Rat>> terms;  // sorted: length then lex
  Rat coeff(const Word& w) const;
};

BchTable bch_table(int c);

// Weight >= 2 part of H (what multiplication adds beyond a+b).
std::map<Word, Rat> bch_remainder(int c);
// Weight >= 3 part of log((exp x)^{-1} (exp y)^{-1} exp x exp y) beyond [x,y].
std::map<Word, Rat> commutator_log_remainder(int c);

// Checks h1(exp x, exp y) = exp(x+y) and h2(exp x, exp y) = exp([x,y])
// in the truncated algebra, per weight.
struct SeriesCheck {
  std::vector<bool> weight_ok;  // index 1..c used
  bool pass = false;
};
SeriesCheck inverse_bch_identities(int c);

}  // namespace lazard
