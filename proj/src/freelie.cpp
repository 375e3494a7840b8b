#include "lazard/freelie.hpp"

#include <algorithm>

namespace lazard {

FreeAssoc FreeAssoc::one(int cutoff) {
  FreeAssoc r(cutoff);
  r.c_[""] = Rat(1);
  return r;
}

FreeAssoc FreeAssoc::gen(int letter, int cutoff) {
  FreeAssoc r(cutoff);
  if (cutoff >= 1) r.c_[Word(1, static_cast<char>(letter))] = Rat(1);
  return r;
}

Rat FreeAssoc::at(const Word& w) const {
  auto it = c_.find(w);
  return it == c_.end() ? Rat() : it->second;
}

void FreeAssoc::set(const Word& w, const Rat& r) {
  if (static_cast<int>(w.size()) > cutoff_ || r.is_zero())
    c_.erase(w);
  else
    c_[w] = r;
}

FreeAssoc FreeAssoc::operator+(const FreeAssoc& o) const {
  FreeAssoc r = *this;
  for (const auto& [w, q] : o.c_) r.set(w, r.at(w) + q);
  return r;
}

FreeAssoc FreeAssoc::operator-(const FreeAssoc& o) const {
  FreeAssoc r = *this;
  for (const auto& [w, q] : o.c_) r.set(w, r.at(w) - q);
  return r;
}

FreeAssoc FreeAssoc::operator*(const FreeAssoc& o) const {
  FreeAssoc r(cutoff_);
  for (const auto& [w1, q1] : c_)
    for (const auto& [w2, q2] : o.c_) {
      if (static_cast<int>(w1.size() + w2.size()) > cutoff_) continue;
      Word w = w1 + w2;
      r.set(w, r.at(w) + q1 * q2);
    }
  return r;
}

FreeAssoc FreeAssoc::scaled(const Rat& s) const {
  FreeAssoc r(cutoff_);
  if (s.is_zero()) return r;
  for (const auto& [w, q] : c_) r.set(w, q * s);
  return r;
}

FreeAssoc comm(const FreeAssoc& a, const FreeAssoc& b) {
  return a * b - b * a;
}

FreeAssoc exp_trunc(const FreeAssoc& a) {
  if (!a.constant_term().is_zero())
    throw std::domain_error("exp_trunc: nonzero constant term");
  FreeAssoc r = FreeAssoc::one(a.cutoff());
  FreeAssoc pw = FreeAssoc::one(a.cutoff());
  i64 fact = 1;
  for (int k = 1; k <= a.cutoff(); ++k) {
    pw = pw * a;
    fact *= k;
    r = r + pw.scaled(Rat(1, fact));
    if (pw.is_zero()) break;
  }
  return r;
}

FreeAssoc log_trunc(const FreeAssoc& u) {
  if (!(u.constant_term() == Rat(1)))
    throw std::domain_error("log_trunc: constant term is not 1");
  FreeAssoc a = u - FreeAssoc::one(u.cutoff());
  FreeAssoc r(u.cutoff());
  FreeAssoc pw = FreeAssoc::one(u.cutoff());
  for (int k = 1; k <= u.cutoff(); ++k) {
    pw = pw * a;
    r = r + pw.scaled(Rat(k % 2 ? 1 : -1, k));
    if (pw.is_zero()) break;
  }
  return r;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (size_t i = 1; i < w.size(); ++i) {
    // compare w with its rotation starting at i
    Word rot = w.substr(i) + w.substr(0, i);
    if (!(w < rot)) return false;
  }
  return true;
}

std::vector<Word> lyndon_basis(int alphabet_size, int max_weight) {
  if (alphabet_size < 1 || max_weight < 1)
    throw std::domain_error("lyndon_basis: bad arguments");
  std::vector<Word> out;
  // Duval's generation in lex order, then stable-sort by length.
  Word w(1, 0);
  while (true) {
    if (static_cast<int>(w.size()) <= max_weight) out.push_back(w);
    // extend periodically to max_weight
    Word t = w;
    while (static_cast<int>(t.size()) < max_weight)
      t.push_back(t[t.size() % w.size()]);
    // increment last non-maximal letter
    while (!t.empty() && t.back() == static_cast<char>(alphabet_size - 1))
      t.pop_back();
    if (t.empty()) break;
    ++t.back();
    w = t;
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() < b.size();
  });
  return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2)
    throw std::domain_error("standard_factorization: weight < 2");
  // v = the lexicographically smallest proper suffix; it is the longest
  // Lyndon proper suffix and both parts are Lyndon with u < v.
  size_t best = 1;
  for (size_t i = 2; i < w.size(); ++i)
    if (w.compare(i, Word::npos, w, best, Word::npos) < 0) best = i;
  return {w.substr(0, best), w.substr(best)};
}

FreeAssoc bracket_expansion(const Word& lyndon, int cutoff) {
  if (lyndon.size() == 1)
    return FreeAssoc::gen(static_cast<unsigned char>(lyndon[0]), cutoff);
  auto [u, v] = standard_factorization(lyndon);
  return comm(bracket_expansion(u, cutoff), bracket_expansion(v, cutoff));
}

std::optional<std::map<Word, Rat>> project_to_lie(const FreeAssoc& a,
                                                  int max_weight) {
  if (!a.constant_term().is_zero()) return std::nullopt;
  FreeAssoc rem = a;
  std::map<Word, Rat> coords;
  // The expansion of the standard bracketing of a Lyndon word l is
  // l + (lex-greater words of the same weight), so per weight the system
  // is triangular: repeatedly strip the lex-smallest remaining monomial.
  for (int w = 1; w <= max_weight; ++w) {
    while (true) {
      const Word* head = nullptr;
      for (const auto& [word, q] : rem.terms()) {
        if (static_cast<int>(word.size()) != w) continue;
        head = &word;  // std::map iterates words of equal length in lex order
        break;
      }
      if (!head) break;
      Word word = *head;
      if (!is_lyndon(word)) return std::nullopt;
      Rat q = rem.at(word);
      rem = rem - bracket_expansion(word, rem.cutoff()).scaled(q);
      coords[word] = q;
    }
  }
  // anything of weight > max_weight left over is out of contract
  if (!rem.is_zero()) return std::nullopt;
  return coords;
}

Rat BchTable::coeff(const Word& w) const {
  for (const auto& [word, q] : terms)
    if (word == w) return q;
  return Rat();
}

BchTable bch_table(int c) {
  if (c < 1) throw std::domain_error("bch_table: class must be >= 1");
  FreeAssoc x = FreeAssoc::gen(0, c), y = FreeAssoc::gen(1, c);
  FreeAssoc z = log_trunc(exp_trunc(x) * exp_trunc(y));
  auto coords = project_to_lie(z, c);
  if (!coords) throw std::logic_error("bch_table: H is not a Lie element");
  BchTable t;
  t.cls = c;
  for (const Word& w : lyndon_basis(2, c)) {
    auto it = coords->find(w);
    if (it != coords->end() && !it->second.is_zero())
      t.terms.emplace_back(w, it->second);
  }
  return t;
}

std::map<Word, Rat> bch_remainder(int c) {
  std::map<Word, Rat> out;
  for (const auto& [w, q] : bch_table(c).terms)
    if (w.size() >= 2) out[w] = q;
  return out;
}

std::map<Word, Rat> commutator_log_remainder(int c) {
  FreeAssoc x = FreeAssoc::gen(0, c), y = FreeAssoc::gen(1, c);
  FreeAssoc u = exp_trunc(x.scaled(Rat(-1))) * exp_trunc(y.scaled(Rat(-1))) *
                exp_trunc(x) * exp_trunc(y);
  auto coords = project_to_lie(log_trunc(u), c);
  if (!coords)
    throw std::logic_error("commutator_log_remainder: not a Lie element");
  std::map<Word, Rat> out;
  for (const auto& [w, q] : *coords)
    if (w.size() >= 3 && !q.is_zero()) out[w] = q;
  return out;
}

SeriesCheck inverse_bch_identities(int c) {
  FreeAssoc x = FreeAssoc::gen(0, c), y = FreeAssoc::gen(1, c);
  FreeAssoc a = exp_trunc(x), b = exp_trunc(y);
  FreeAssoc h1 = exp_trunc(log_trunc(a) + log_trunc(b));
  FreeAssoc h2 = exp_trunc(comm(log_trunc(a), log_trunc(b)));
  FreeAssoc want1 = exp_trunc(x + y);
  FreeAssoc want2 = exp_trunc(comm(x, y));
  SeriesCheck r;
  r.weight_ok.assign(c + 1, true);
  auto check = [&](const FreeAssoc& got, const FreeAssoc& want) {
    FreeAssoc d = got - want;
    for (const auto& [w, q] : d.terms())
      if (!q.is_zero()) r.weight_ok[w.size()] = false;
  };
  check(h1, want1);
  check(h2, want2);
  r.pass = std::all_of(r.weight_ok.begin() + 1, r.weight_ok.end(),
                       [](bool b2) { return b2; });
  return r;
}

}  // namespace lazard
