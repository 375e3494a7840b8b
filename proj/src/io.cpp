#include "lazard/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lazard {

namespace {

// ---------------------------------------------------------------------------
// Tokenized values of the subset: integers, strings, arrays, inline tables.

struct TomlValue {
  enum Kind { INT, STR, ARR, TAB } kind = INT;
  i64 num = 0;
  std::string str;
  std::vector<TomlValue> arr;
  std::vector<std::pair<std::string, TomlValue>> tab;
};

struct Cursor {
  const std::string& s;
  size_t i = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("line " + std::to_string(line) + ": " + what);
  }
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  void advance() {
    if (s[i] == '\n') ++line;
    ++i;
  }
  // skips spaces, tabs and # comments but not newlines
  void skip_inline_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (!done() && s[i] == '#')
      while (!done() && s[i] != '\n') ++i;
  }
  // skips everything insignificant, including newlines (inside values)
  void skip_all_ws() {
    for (;;) {
      skip_inline_ws();
      if (!done() && s[i] == '\n')
        advance();
      else
        return;
    }
  }
};

std::string parse_quoted(Cursor& c) {
  if (c.peek() != '"') c.fail("expected a quoted string");
  c.advance();
  std::string out;
  while (!c.done() && c.peek() != '"') {
    if (c.peek() == '\n') c.fail("newline inside a string");
    out.push_back(c.peek());
    c.advance();
  }
  if (c.done()) c.fail("unterminated string");
  c.advance();
  return out;
}

std::string parse_key(Cursor& c) {
  if (c.peek() == '"') return parse_quoted(c);
  std::string out;
  while (!c.done() && (std::isalnum((unsigned char)c.peek()) ||
                       c.peek() == '_' || c.peek() == '-'))
    out.push_back(c.s[c.i]), c.advance();
  if (out.empty()) c.fail("expected a key");
  return out;
}

i64 parse_int(Cursor& c) {
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    c.advance();
  }
  if (!std::isdigit((unsigned char)c.peek())) c.fail("expected an integer");
  i64 v = 0;
  while (!c.done() && std::isdigit((unsigned char)c.peek())) {
    v = v * 10 + (c.peek() - '0');
    if (v > (i64)1 << 60) c.fail("integer too large");
    c.advance();
  }
  return neg ? -v : v;
}

TomlValue parse_value(Cursor& c) {
  c.skip_all_ws();
  TomlValue v;
  char ch = c.peek();
  if (ch == '"') {
    v.kind = TomlValue::STR;
    v.str = parse_quoted(c);
  } else if (ch == '[') {
    v.kind = TomlValue::ARR;
    c.advance();
    c.skip_all_ws();
    while (c.peek() != ']') {
      v.arr.push_back(parse_value(c));
      c.skip_all_ws();
      if (c.peek() == ',') {
        c.advance();
        c.skip_all_ws();
      } else if (c.peek() != ']') {
        c.fail("expected ',' or ']' in array");
      }
    }
    c.advance();
  } else if (ch == '{') {
    v.kind = TomlValue::TAB;
    c.advance();
    c.skip_all_ws();
    while (c.peek() != '}') {
      std::string k = parse_key(c);
      c.skip_all_ws();
      if (c.peek() != '=') c.fail("expected '=' in inline table");
      c.advance();
      v.tab.emplace_back(k, parse_value(c));
      c.skip_all_ws();
      if (c.peek() == ',') {
        c.advance();
        c.skip_all_ws();
      } else if (c.peek() != '}') {
        c.fail("expected ',' or '}' in inline table");
      }
    }
    c.advance();
  } else if (ch == '-' || std::isdigit((unsigned char)ch)) {
    v.kind = TomlValue::INT;
    v.num = parse_int(c);
  } else {
    c.fail("unexpected character in value");
  }
  return v;
}

using Section = std::vector<std::pair<std::string, TomlValue>>;

std::map<std::string, Section> parse_sections(const std::string& text) {
  Cursor c{text};
  std::map<std::string, Section> out;
  Section* cur = nullptr;
  while (!c.done()) {
    c.skip_inline_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '\n') {
      c.advance();
      continue;
    }
    if (ch == '[') {
      c.advance();
      std::string name = parse_key(c);
      if (c.peek() != ']') c.fail("expected ']' after section name");
      c.advance();
      cur = &out[name];
      continue;
    }
    if (cur == nullptr) c.fail("key outside a section");
    std::string key = parse_key(c);
    c.skip_inline_ws();
    if (c.peek() != '=') c.fail("expected '=' after key");
    c.advance();
    cur->emplace_back(key, parse_value(c));
    c.skip_inline_ws();
    if (!c.done() && c.peek() != '\n') c.fail("trailing text after value");
  }
  return out;
}

const TomlValue* find(const Section& s, const std::string& k) {
  for (const auto& [key, v] : s)
    if (key == k) return &v;
  return nullptr;
}

[[noreturn]] void fail(const std::string& what) { throw parse_error(what); }

std::vector<int> int_list(const TomlValue& v, const std::string& what) {
  if (v.kind != TomlValue::ARR) fail(what + " must be an array of integers");
  std::vector<int> out;
  for (const TomlValue& e : v.arr) {
    if (e.kind != TomlValue::INT)
      fail(what + " must be an array of integers");
    out.push_back((int)e.num);
  }
  return out;
}

}  // namespace

ParsedInput parse_input(const std::string& text) {
  auto sections = parse_sections(text);
  for (const auto& [name, _] : sections)
    if (name != "ring" && name != "brackets" && name != "module" &&
        name != "action")
      fail("unknown section [" + name + "]");
  auto rit = sections.find("ring");
  if (rit == sections.end()) fail("missing [ring] section");
  const Section& ring = rit->second;

  ParsedInput in;
  const TomlValue* pv = find(ring, "p");
  if (!pv || pv->kind != TomlValue::INT || pv->num < 2)
    fail("[ring] needs a prime p");
  in.ring.p = pv->num;
  if (const TomlValue* cv = find(ring, "class_hint")) {
    if (cv->kind != TomlValue::INT) fail("class_hint must be an integer");
    in.ring.class_hint = (int)cv->num;
  }
  const TomlValue* ov = find(ring, "orders");
  if (!ov) fail("[ring] needs orders");
  in.ring.orders = int_list(*ov, "[ring] orders");
  int r = (int)in.ring.orders.size();
  for (int e : in.ring.orders)
    if (e < 1) fail("[ring] orders must be positive");
  if (const TomlValue* bv = find(ring, "basis")) {
    if (bv->kind != TomlValue::ARR) fail("basis must be an array of strings");
    for (const TomlValue& e : bv->arr) {
      if (e.kind != TomlValue::STR)
        fail("basis must be an array of strings");
      in.ring.labels.push_back(e.str);
    }
  } else {
    for (int i = 0; i < r; ++i)
      in.ring.labels.push_back("b" + std::to_string(i + 1));
  }
  if ((int)in.ring.labels.size() != r)
    fail("basis and orders disagree on the rank");
  std::map<std::string, int> index;
  for (int i = 0; i < r; ++i) {
    if (index.count(in.ring.labels[i])) fail("duplicate basis label");
    index[in.ring.labels[i]] = i;
  }
  auto label_index = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) fail("unknown basis label '" + name + "'");
    return it->second;
  };

  Module Lm{in.ring.p, in.ring.orders};
  in.ring.sc.assign(r, std::vector<Vec>(r, Lm.zero()));
  if (auto bit = sections.find("brackets"); bit != sections.end())
    for (const auto& [key, val] : bit->second) {
      size_t comma = key.find(',');
      if (comma == std::string::npos)
        fail("bracket key must be \"bi,bj\", got '" + key + "'");
      int i = label_index(key.substr(0, comma));
      int j = label_index(key.substr(comma + 1));
      if (i == j) fail("bracket of '" + key + "' with itself must be zero");
      if (val.kind != TomlValue::TAB)
        fail("bracket value must be an inline table");
      Vec coords = Lm.zero();
      for (const auto& [bk, cv] : val.tab) {
        if (cv.kind != TomlValue::INT)
          fail("bracket coefficient must be an integer");
        coords[label_index(bk)] = cv.num;
      }
      coords = Lm.reduce(coords);
      if (!Lm.is_zero(in.ring.sc[i][j]) &&
          !(in.ring.sc[i][j] == coords))
        fail("conflicting assignments for bracket '" + key + "'");
      in.ring.sc[i][j] = coords;
      in.ring.sc[j][i] = Lm.neg(coords);
    }

  auto mit = sections.find("module");
  if (mit != sections.end()) {
    const TomlValue* mo = find(mit->second, "orders");
    if (!mo) fail("[module] needs orders");
    in.has_module = true;
    in.module = Module{in.ring.p, int_list(*mo, "[module] orders")};
    for (int e : in.module.orders)
      if (e < 1) fail("[module] orders must be positive");
  }
  if (auto ait = sections.find("action"); ait != sections.end()) {
    if (!in.has_module) fail("[action] requires a [module] section");
    in.has_action = true;
    in.psi.assign(r, hom_zero(in.module, in.module));
    int rm = in.module.rank();
    for (const auto& [key, val] : ait->second) {
      int bi = label_index(key);
      if (val.kind != TomlValue::ARR || (int)val.arr.size() != rm)
        fail("action matrix for '" + key + "' needs " + std::to_string(rm) +
             " rows");
      Mat A = hom_zero(in.module, in.module);
      for (int row = 0; row < rm; ++row) {
        std::vector<int> vals = int_list(val.arr[row], "action row");
        if ((int)vals.size() != rm)
          fail("action matrix for '" + key + "' needs " +
               std::to_string(rm) + " columns");
        for (int col = 0; col < rm; ++col)
          A.at(row, col) = mod_norm(vals[col], A.mod);
      }
      in.psi[bi] = A;
    }
  }
  return in;
}

std::string format_input(const ParsedInput& in) {
  std::ostringstream o;
  const NilLieRing& L = in.ring;
  Module Lm = L.module();
  o << "[ring]\n";
  o << "p = " << L.p << "\n";
  if (L.class_hint > 0) o << "class_hint = " << L.class_hint << "\n";
  o << "basis = [";
  for (int i = 0; i < L.rank(); ++i)
    o << (i ? ", " : "") << '"' << L.labels[i] << '"';
  o << "]\n";
  o << "orders = [";
  for (int i = 0; i < L.rank(); ++i) o << (i ? ", " : "") << L.orders[i];
  o << "]\n";

  bool any = false;
  for (int i = 0; i < L.rank(); ++i)
    for (int j = i + 1; j < L.rank(); ++j)
      if (!Lm.is_zero(L.sc[i][j])) any = true;
  if (any) {
    o << "\n[brackets]\n";
    for (int i = 0; i < L.rank(); ++i)
      for (int j = i + 1; j < L.rank(); ++j) {
        if (Lm.is_zero(L.sc[i][j])) continue;
        o << '"' << L.labels[i] << ',' << L.labels[j] << "\" = {";
        bool first = true;
        for (int k = 0; k < L.rank(); ++k)
          if (L.sc[i][j][k] != 0) {
            o << (first ? "" : ", ") << L.labels[k] << " = "
              << L.sc[i][j][k];
            first = false;
          }
        o << "}\n";
      }
  }
  if (in.has_module) {
    o << "\n[module]\n";
    o << "orders = [";
    for (int i = 0; i < in.module.rank(); ++i)
      o << (i ? ", " : "") << in.module.orders[i];
    o << "]\n";
  }
  if (in.has_action) {
    bool header = false;
    for (int b = 0; b < L.rank(); ++b) {
      if (hom_is_zero(in.module, in.module, in.psi[b])) continue;
      if (!header) {
        o << "\n[action]\n";
        header = true;
      }
      o << L.labels[b] << " = [";
      for (int row = 0; row < in.psi[b].rows; ++row) {
        o << (row ? ", [" : "[");
        for (int col = 0; col < in.psi[b].cols; ++col)
          o << (col ? ", " : "") << in.psi[b].at(row, col);
        o << "]";
      }
      o << "]\n";
    }
  }
  return o.str();
}

LieTriple triple_of(const ParsedInput& in) {
  if (!in.has_module)
    throw parse_error("this command needs a [module] section");
  LieTriple T;
  T.L = in.ring;
  T.M = in.module;
  if (in.has_action)
    T.psi = in.psi;
  else
    T.psi.assign(in.ring.rank(), hom_zero(in.module, in.module));
  return T;
}

}  // namespace lazard
