// Batch front end: parse object files, dispatch computations, emit
// machine-readable JSON reports.
//
// Exit codes: 0 success/verified, 1 malformed input or usage, 2 hypothesis
// violated/refused, 3 inconclusive/undecided. A report is written on exits
// 0, 2 and 3.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lazard/cohomology.hpp"
#include "lazard/crossedmod.hpp"
#include "lazard/fiveterm.hpp"
#include "lazard/io.hpp"
#include "lazard/schur.hpp"

using json = nlohmann::ordered_json;
using namespace lazard;

namespace {

constexpr const char* kSchema = "lazard-lab/1";

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot read '" + path + "'");
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

std::string fnv1a64(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

i64 max_elements_env() {
  const char* v = std::getenv("LAZARD_MAX_ELEMENTS");
  if (!v) return -1;
  char* end = nullptr;
  long long n = std::strtoll(v, &end, 10);
  if (end == v || *end != '\0' || n <= 0)
    throw parse_error("LAZARD_MAX_ELEMENTS must be a positive integer");
  return n;
}

json factors_json(const InvariantFactors& f, i64 p) {
  json a = json::array();
  for (int e : f) a.push_back(e);
  return json{{"exponents", a}, {"order", factors_size(f, p)},
              {"pretty", factors_str(f, p)}};
}

json mat_json(const Mat& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) {
    json r = json::array();
    for (int j = 0; j < A.cols; ++j) r.push_back(A.at(i, j));
    rows.push_back(r);
  }
  return rows;
}

// Loaded input file plus the report skeleton every command shares.
struct Ctx {
  ParsedInput in;
  json rep;
};

Ctx load(const std::string& command, const std::string& path) {
  std::string raw = read_file(path);
  Ctx c;
  c.in = parse_input(raw);
  c.rep["schema"] = kSchema;
  c.rep["command"] = command;
  c.rep["input"] = path;
  c.rep["input_hash"] = fnv1a64(raw);
  return c;
}

void emit(const json& rep, const std::string& out_path) {
  std::string text = rep.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw parse_error("cannot write '" + out_path + "'");
    f << text;
  }
}

std::string render_word(const Word& w) {
  std::string s;
  for (char c : w) s.push_back(c == 0 ? 'x' : 'y');
  return s;
}

std::string render_bracketing(const Word& w) {
  if (w.size() == 1) return render_word(w);
  auto [u, v] = standard_factorization(w);
  return "[" + render_bracketing(u) + "," + render_bracketing(v) + "]";
}

std::vector<Vec> parse_normal_spec(const NilLieRing& L,
                                   const std::string& spec) {
  std::vector<Vec> gens;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    // a basis label, or a comma-separated coordinate vector
    auto lit = std::find(L.labels.begin(), L.labels.end(), item);
    if (lit != L.labels.end()) {
      Vec e = L.module().zero();
      e[lit - L.labels.begin()] = 1;
      gens.push_back(e);
      continue;
    }
    Vec v;
    std::stringstream cs(item);
    std::string num;
    while (std::getline(cs, num, ',')) {
      char* end = nullptr;
      long long x = std::strtoll(num.c_str(), &end, 10);
      if (end == num.c_str() || *end != '\0')
        throw parse_error("bad --normal entry '" + item + "'");
      v.push_back(x);
    }
    if ((int)v.size() != L.rank())
      throw parse_error("--normal vector '" + item + "' needs " +
                        std::to_string(L.rank()) + " coordinates");
    gens.push_back(L.module().reduce(v));
  }
  if (gens.empty()) throw parse_error("--normal spec is empty");
  return gens;
}

json compare_json(const CompareReport& r, i64 p) {
  json j;
  j["degree"] = r.degree;
  j["in_scope"] = r.in_scope;
  if (!r.scope_note.empty()) j["scope_note"] = r.scope_note;
  j["lie"] = factors_json(r.lie_inv, p);
  j["group"] = factors_json(r.group_inv, p);
  j["invariants_equal"] = r.invariants_equal;
  if (r.degree == 0) j["set_equal"] = r.set_equal;
  if (r.degree > 0) j["transport_ok"] = r.transport_ok;
  j["witnesses"] = r.witnesses;
  j["verdict"] = r.verdict();
  return j;
}

json multiplier_json(const MultiplierReport& r, i64 p) {
  json j;
  json levels = json::array();
  for (const InvariantFactors& f : r.level_inv)
    levels.push_back(factors_json(f, p));
  j["levels"] = levels;
  json images = json::array();
  for (const InvariantFactors& f : r.image_inv)
    images.push_back(factors_json(f, p));
  j["images"] = images;
  j["stabilized"] = r.stabilized;
  j["stabilization_level"] = r.stabilization_level;
  if (r.stabilized) j["stable"] = factors_json(r.stable, p);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

bool lie_equal(const LieCrossedModule& A, const LieCrossedModule& B) {
  return A.p == B.p && A.g.addt == B.g.addt && A.g.brt == B.g.brt &&
         A.g.zero == B.g.zero && A.g1.addt == B.g1.addt &&
         A.g1.brt == B.g1.brt && A.g2.addt == B.g2.addt &&
         A.g2.brt == B.g2.brt && A.mu == B.mu && A.eta == B.eta &&
         A.ker == B.ker && A.alpha == B.alpha &&
         A.M.orders == B.M.orders;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the report; refusals surface as exceptions.

json cmd_validate(const std::string& path) {
  Ctx c = load("validate", path);
  std::vector<std::string> violations = validate(c.in.ring);
  if (c.in.has_module) {
    LieTriple T = triple_of(c.in);
    for (const std::string& v : validate(T)) violations.push_back(v);
  }
  c.rep["ok"] = violations.empty();
  c.rep["violations"] = violations;
  c.rep["canonical"] = format_input(c.in);
  return c.rep;
}

json cmd_bch_table(int cls) {
  if (cls < 1 || cls > 8) throw parse_error("--class must be in 1..8");
  BchTable t = bch_table(cls);
  json rep;
  rep["schema"] = kSchema;
  rep["command"] = "bch-table";
  rep["class"] = cls;
  json entries = json::array();
  for (const auto& [w, q] : t.terms)
    entries.push_back(json{{"word", render_word(w)},
                           {"bracketing", render_bracketing(w)},
                           {"numerator", q.num},
                           {"denominator", q.den}});
  rep["entries"] = entries;
  return rep;
}

json cmd_exp(const std::string& path) {
  Ctx c = load("exp", path);
  LazardGroup G(c.in.ring);
  GroupOps ops = group_ops(G);
  std::vector<ElemSet> gs = gamma_series(ops);
  c.rep["order"] = G.size();
  c.rep["class"] = G.cls();
  json sizes = json::array();
  for (const ElemSet& s : gs) sizes.push_back((i64)s.size());
  c.rep["gamma_sizes"] = sizes;
  return c.rep;
}

json cmd_log(const std::string& path) {
  Ctx c = load("log", path);
  LazardGroup G(c.in.ring);
  NilLieRing R = recover_lie(G);
  c.rep["order"] = G.size();
  c.rep["class"] = nilpotency_class(R);
  c.rep["matches_input"] =
      R.orders == c.in.ring.orders && R.sc == c.in.ring.sc;
  return c.rep;
}

json cmd_cohomology(const std::string& path, int degree,
                    const std::string& side, i64 maxel) {
  Ctx c = load("cohomology", path);
  LieTriple T = triple_of(c.in);
  c.rep["degree"] = degree;
  c.rep["side"] = side;
  if (side == "compare") {
    CompareReport r = compare(T, degree, maxel);
    if (!r.in_scope) throw hypothesis_violation(r.scope_note);
    c.rep["report"] = compare_json(r, T.L.p);
    return c.rep;
  }
  InvariantFactors inv;
  if (side == "lie") {
    if (degree == 0)
      inv = h0(T).invariants();
    else if (degree == 1)
      inv = LieH1(T).H().inv;
    else
      inv = LieH2(T, maxel).H().inv;
  } else {
    GroupTriple E = exp_triple(T);
    if (degree == 0)
      inv = h0(E).invariants();
    else if (degree == 1)
      inv = GroupH1(E).H().inv;
    else
      inv = GroupH2(E, maxel).H().inv;
  }
  c.rep["invariant_factors"] = factors_json(inv, T.L.p);
  return c.rep;
}

json cmd_compare(const std::string& path, i64 maxel) {
  Ctx c = load("compare", path);
  LieTriple T = triple_of(c.in);
  json degrees = json::array();
  bool all = true;
  std::vector<std::string> refusals;
  for (int d = 0; d <= 2; ++d) {
    CompareReport r = compare(T, d, maxel);
    degrees.push_back(compare_json(r, T.L.p));
    if (!r.in_scope) refusals.push_back(r.scope_note);
    all = all && r.verdict();
  }
  if (!refusals.empty()) {
    std::string joined;
    for (const std::string& s : refusals)
      joined += (joined.empty() ? "" : "; ") + s;
    throw hypothesis_violation(joined);
  }
  c.rep["degrees"] = degrees;
  c.rep["verdict"] = all;
  return c.rep;
}

json cmd_baer_sum(const std::string& path, i64 maxel) {
  Ctx c = load("baer-sum", path);
  LieTriple T = triple_of(c.in);
  int pairs = 0;
  bool additive = true;

  LieH2 hl(T, maxel);
  Module cl{T.L.p, hl.H().inv};
  for (size_t i = 0; i < hl.H().reps.size() && additive; ++i)
    for (size_t j = 0; j < hl.H().reps.size(); ++j) {
      LieFactorSystem a = hl.factor_system(hl.H().reps[i]);
      LieFactorSystem b = hl.factor_system(hl.H().reps[j]);
      Vec want = cl.add(hl.class_coords(a), hl.class_coords(b));
      if (cl.reduce(hl.class_coords(baer_sum(T, a, b))) != want) {
        additive = false;
        break;
      }
      ++pairs;
    }

  GroupTriple E = exp_triple(T);
  GroupH2 hg(E, maxel);
  Module cg{T.L.p, hg.H().inv};
  for (size_t i = 0; i < hg.H().reps.size() && additive; ++i)
    for (size_t j = 0; j < hg.H().reps.size(); ++j) {
      GroupCocycle2 a = hg.cocycle(hg.H().reps[i]);
      GroupCocycle2 b = hg.cocycle(hg.H().reps[j]);
      Vec want = cg.add(hg.class_coords(a), hg.class_coords(b));
      if (cg.reduce(hg.class_coords(baer_sum(E, a, b))) != want) {
        additive = false;
        break;
      }
      ++pairs;
    }
  c.rep["lie"] = factors_json(hl.H().inv, T.L.p);
  c.rep["group"] = factors_json(hg.H().inv, T.L.p);
  c.rep["pairs_checked"] = pairs;
  c.rep["additive"] = additive;
  return c.rep;
}

json cmd_schur(const std::string& path, const std::string& side, i64 maxel) {
  Ctx c = load("schur", path);
  const NilLieRing& L = c.in.ring;
  c.rep["side"] = side;
  if (side == "compare") {
    SchurCompare r = compare_schur(L, maxel);
    c.rep["lie"] = multiplier_json(r.lie, L.p);
    c.rep["group"] = multiplier_json(r.group, L.p);
    c.rep["stable_equal"] = r.stable_equal;
    c.rep["squares_commute"] = r.squares_commute;
    c.rep["witnesses"] = r.witnesses;
    c.rep["verdict"] = r.verdict();
    if (!r.lie.stabilized || !r.group.stabilized)
      throw undecided_error("inconclusive: the coefficient tower did not "
                            "stabilize under the level cap");
    return c.rep;
  }
  MultiplierReport r =
      side == "lie" ? schur_lie(L, 0, maxel) : schur_group(L, 0, maxel);
  c.rep["report"] = multiplier_json(r, L.p);
  if (!r.stabilized)
    throw undecided_error("inconclusive: the coefficient tower did not "
                          "stabilize under the level cap");
  return c.rep;
}

json cmd_five_term(const std::string& path, const std::string& spec) {
  Ctx c = load("five-term", path);
  std::vector<Vec> gens = parse_normal_spec(c.in.ring, spec);
  FiveTermReport r = five_term_verify(c.in.ring, gens);
  i64 p = c.in.ring.p;
  auto invs = [&](const std::vector<InvariantFactors>& v) {
    json a = json::array();
    for (const InvariantFactors& f : v) a.push_back(factors_json(f, p));
    return a;
  };
  auto mats = [&](const std::vector<Mat>& v) {
    json a = json::array();
    for (const Mat& m : v) a.push_back(mat_json(m));
    return a;
  };
  c.rep["lie_invariants"] = invs(r.lie_inv);
  c.rep["group_invariants"] = invs(r.group_inv);
  c.rep["lie_maps"] = mats(r.lie_maps);
  c.rep["group_maps"] = mats(r.group_maps);
  c.rep["lie_exact"] = r.lie_exact;
  c.rep["group_exact"] = r.group_exact;
  c.rep["injective_start"] = r.injective_start;
  c.rep["carriers_match"] = r.carriers_match;
  c.rep["squares_commute"] = r.squares_commute;
  c.rep["witnesses"] = r.witnesses;
  c.rep["note"] = r.note;
  c.rep["verdict"] = r.verdict();
  return c.rep;
}

json cmd_crossed(const std::string& path, const std::string& op, i64 maxel) {
  Ctx c = load("crossed", path);
  LieTriple T = triple_of(c.in);
  LieCrossedModule Y = module_crossed(T);
  c.rep["op"] = op;
  c.rep["carrier"] = Y.g.n;
  c.rep["base"] = Y.g1.n;
  if (op == "check") {
    std::vector<std::string> v = check_axioms(Y);
    c.rep["ok"] = v.empty();
    c.rep["violations"] = v;
    c.rep["class"] = crossed_class(Y);
    c.rep["action_length"] = crossed_action_length(Y);
    return c.rep;
  }
  if (op == "exp") {
    GroupCrossedModule X = exp_crossed(Y);
    c.rep["ok"] = check_axioms(X).empty();
    c.rep["group_carrier"] = X.H.n;
    c.rep["class"] = crossed_class(X);
    c.rep["action_length"] = crossed_action_length(X);
    return c.rep;
  }
  if (op == "log") {
    GroupCrossedModule X = exp_crossed(Y);
    LieCrossedModule Z = log_crossed(X);
    c.rep["ok"] = check_axioms(Z).empty();
    c.rep["round_trip"] = lie_equal(Z, Y);
    return c.rep;
  }
  if (op == "sum") {
    LieCrossedModule S = split_crossed(Y);
    LieCrossedModule B = baer_sum(Y, S);
    LieCrossedModule BB = baer_sum(Y, Y);
    bool boundary = B.g1.addt == Y.g1.addt && B.g1.brt == Y.g1.brt &&
                    B.g2.addt == Y.g2.addt && B.alpha == Y.alpha &&
                    B.M.orders == Y.M.orders && BB.alpha == Y.alpha;
    c.rep["sum_with_split_ok"] = check_axioms(B).empty();
    c.rep["sum_with_self_ok"] = check_axioms(BB).empty();
    c.rep["boundary_preserved"] = boundary;
    return c.rep;
  }
  if (op == "equiv") {
    LieCrossedModule S = split_crossed(Y);
    c.rep["self_equivalent"] = crossed_equivalent(Y, Y, maxel);
    c.rep["sum_with_split_equivalent"] =
        crossed_equivalent(baer_sum(Y, S), Y, maxel);
    return c.rep;
  }
  throw parse_error("unknown --op '" + op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit computations relating finite p-groups and "
               "nilpotent Lie rings"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report here");

  std::string file, side = "compare", op = "check", normal_spec;
  int degree = 2, cls = 3;

  CLI::App* validate_c = app.add_subcommand("validate", "parse and validate");
  validate_c->add_option("file", file)->required();

  CLI::App* bch_c = app.add_subcommand("bch-table", "emit the series table");
  bch_c->add_option("--class", cls, "truncation weight")->required();

  CLI::App* exp_c = app.add_subcommand("exp", "the group of a ring file");
  exp_c->add_option("file", file)->required();

  CLI::App* log_c =
      app.add_subcommand("log", "recover the ring from its group");
  log_c->add_option("file", file)->required();

  CLI::App* coh_c = app.add_subcommand("cohomology", "H^0, H^1, H^2");
  coh_c->add_option("file", file)->required();
  coh_c->add_option("--degree", degree)->check(CLI::Range(0, 2));
  coh_c->add_option("--side", side)
      ->check(CLI::IsMember({"group", "lie", "compare"}));

  CLI::App* cmp_c =
      app.add_subcommand("compare", "both sides, degrees 0 through 2");
  cmp_c->add_option("file", file)->required();

  CLI::App* baer_c =
      app.add_subcommand("baer-sum", "sum of classes vs cocycle addition");
  baer_c->add_option("file", file)->required();

  CLI::App* schur_c = app.add_subcommand("schur", "stable multiplier");
  schur_c->add_option("file", file)->required();
  schur_c->add_option("--side", side)
      ->check(CLI::IsMember({"group", "lie", "compare"}));

  CLI::App* five_c =
      app.add_subcommand("five-term", "inflation-restriction sequence");
  five_c->add_option("file", file)->required();
  five_c->add_option("--normal", normal_spec,
                     "generators, ';'-separated labels or vectors")
      ->required();

  CLI::App* crossed_c = app.add_subcommand("crossed", "crossed modules");
  crossed_c->add_option("file", file)->required();
  crossed_c->add_option("--op", op)
      ->check(CLI::IsMember({"check", "log", "exp", "sum", "equiv"}));

  CLI11_PARSE(app, argc, argv);

  json rep;
  int code = 0;
  try {
    i64 maxel = max_elements_env();
    if (validate_c->parsed())
      rep = cmd_validate(file);
    else if (bch_c->parsed())
      rep = cmd_bch_table(cls);
    else if (exp_c->parsed())
      rep = cmd_exp(file);
    else if (log_c->parsed())
      rep = cmd_log(file);
    else if (coh_c->parsed())
      rep = cmd_cohomology(file, degree, side, maxel);
    else if (cmp_c->parsed())
      rep = cmd_compare(file, maxel);
    else if (baer_c->parsed())
      rep = cmd_baer_sum(file, maxel);
    else if (schur_c->parsed())
      rep = cmd_schur(file, side, maxel);
    else if (five_c->parsed())
      rep = cmd_five_term(file, normal_spec);
    else if (crossed_c->parsed())
      rep = cmd_crossed(file, op, maxel);
  } catch (const parse_error& e) {
    std::fprintf(stderr, "lazard-lab: %s\n", e.what());
    return 1;
  } catch (const hypothesis_violation& e) {
    rep = json{{"schema", kSchema}, {"refused", e.what()}};
    code = 2;
  } catch (const undecided_error& e) {
    rep = json{{"schema", kSchema}, {"undecided", e.what()}};
    code = 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "lazard-lab: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "lazard-lab: %s\n", e.what());
    return 1;
  }
  try {
    emit(rep, out_path);
  } catch (const parse_error& e) {
    std::fprintf(stderr, "lazard-lab: %s\n", e.what());
    return 1;
  }
  return code;
}
