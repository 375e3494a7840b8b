#pragma once
// Text input format (a small TOML subset) for rings, modules and actions,
// with a canonical serializer. Sections:
//   [ring]     p, class_hint, basis = [...], orders = [...]
//   [brackets] "bi,bj" = {bk = coefficient}   (omitted pairs are zero;
//                                              [bj,bi] is inferred)
//   [module]   orders = [...]
//   [action]   bi = [[...], ...]              (matrix, row-major, acting on
//                                              column vectors; omitted = 0)
#include <stdexcept>
#include <string>

#include "lazard/triples.hpp"

namespace lazard {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedInput {
  NilLieRing ring;
  bool has_module = false;
  Module module;
  bool has_action = false;
  std::vector<Mat> psi;  // per ring basis element; zero when not given
};

// Throws parse_error on malformed text, unknown labels or shape mismatches.
ParsedInput parse_input(const std::string& text);

// Canonical text: fixed section order, only nonzero brackets (i < j), only
// nonzero action matrices. parse(format(parse(t))) == parse(t), and
// format is a fixpoint on its own output.
std::string format_input(const ParsedInput& in);

// The triple described by the file; requires [module] (the action defaults
// to zero maps when [action] is absent).
LieTriple triple_of(const ParsedInput& in);

}  // namespace lazard
