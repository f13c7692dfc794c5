/*
 * solvco — exact cohomology of compact solvmanifolds from finite presentations.
 *
 *   solvco validate <file>                      structural checks only
 *   solvco betti    <file> [--subtorus ...]     de Rham Betti numbers of G/Γ
 *   solvco hodge    <file> [--pipeline ...]     Dolbeault Hodge numbers of (G/Γ, J)
 *   solvco modify   <file> [--subtorus ...]     emit the modified algebra g^S
 *
 * Every command reads a single JSON input document and writes one JSON report to
 * stdout (and to --json <out> when given). Reports are byte-identical across runs
 * on the same input, except for the timing_ms field.
 *
 * Exit codes: 0 all checks pass; 1 hypothesis failure (the underlying theorem does
 * not apply to this input); 2 invalid input, failed validation, or an expectation
 * mismatch; 3 internal assertion (a bug, never silent wrong output).
 */

#include <solvco/io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace solvco {
namespace {

constexpr const char* kVersion = "0.1.0";

/* ---------------------------------------------------------------- plumbing */

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/** Parallelism cap from SOLVCO_THREADS (default: hardware concurrency). */
unsigned thread_budget() {
  const char* env = std::getenv("SOLVCO_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (!env || !*env) return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end || v < 1) throw Error(ErrKind::InvalidInput, "SOLVCO_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

SubtorusMode parse_subtorus(const std::string& s, IntCols& explicit_gens) {
  if (s == "auto") return SubtorusMode::Auto;
  if (s == "full") return SubtorusMode::Full;
  if (s.rfind("explicit:", 0) == 0) {
    std::ifstream in(s.substr(9));
    if (!in) throw Error(ErrKind::InvalidInput, "cannot open subtorus basis file");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw Error(ErrKind::InvalidInput, std::string("subtorus basis: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrKind::InvalidInput, "subtorus basis: expected an array");
    for (const Json& row : doc) {
      IntVec v;
      for (const Json& x : row) {
        if (!x.is_number_integer())
          throw Error(ErrKind::InvalidInput, "subtorus basis: expected integers");
        v.push_back(Int(x.get<long long>()));
      }
      explicit_gens.push_back(std::move(v));
    }
    return SubtorusMode::Explicit;
  }
  throw Error(ErrKind::InvalidInput, "--subtorus expects auto|full|explicit:<file>");
}

const char* subtorus_name(SubtorusMode m) {
  switch (m) {
    case SubtorusMode::Auto: return "auto";
    case SubtorusMode::Full: return "full";
    default: return "explicit";
  }
}

/* ------------------------------------------------------------ classification */

/** Greedy column-span basis (over the algebra's field). */
std::vector<std::vector<FieldElement>> span_basis(const FieldSpecPtr& spec, size_t dim,
                                                  const std::vector<std::vector<FieldElement>>& vs) {
  std::vector<std::vector<FieldElement>> basis;
  size_t rk = 0;
  for (const auto& v : vs) {
    auto trial = basis;
    trial.push_back(v);
    if (Matrix::from_cols(spec, dim, trial).rank() > rk) {
      basis = std::move(trial);
      ++rk;
    }
  }
  return basis;
}

/** Lower central series termination test. */
bool is_nilpotent(const LieAlgebraPresentation& g) {
  size_t dim = g.dim();
  std::vector<std::vector<FieldElement>> layer;
  for (size_t i = 0; i < dim; ++i) layer.push_back(g.unit(i));
  for (size_t step = 0; step <= dim; ++step) {
    if (layer.empty()) return true;
    std::vector<std::vector<FieldElement>> next;
    for (size_t i = 0; i < dim; ++i)
      for (const auto& v : layer) next.push_back(g.ad(i).apply(v));
    std::vector<std::vector<FieldElement>> nb = span_basis(g.spec(), dim, next);
    if (nb.size() >= layer.size() && step > 0) return false;  // series stalled above zero
    layer = std::move(nb);
  }
  return layer.empty();
}

/** All ad eigenvalues real: the joint ad_s weights are fixed by conjugation. */
bool is_completely_solvable(const LieAlgebraPresentation& g) {
  auto ws = build_weight_system(g);
  for (const auto& w : ws.weights)
    for (const auto& x : w)
      if (x.conj() != x) return false;
  return true;
}

/* --------------------------------------------------------------- reporting */

struct CheckList {
  Json items = Json::array();
  bool ok = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    Json c = Json::object();
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    items.push_back(std::move(c));
    ok = ok && pass;
  }
};

Json hodge_json(const HodgeTable& t) {
  Json out = Json::array();
  for (const auto& row : t) out.push_back(row);
  return out;
}

/* ----------------------------------------------------------------- commands */

struct Context {
  InputDocument doc;
  std::string raw;
  Json report;
  unsigned threads;
};

/** Structural validation shared by every command; fills `checks`. */
void run_validation(const Context& ctx, CheckList& checks, bool require_pass) {
  auto rep = ctx.doc.algebra.validate();
  for (const auto& c : rep.checks) checks.add("algebra." + c.name, c.pass, c.detail);
  if (!rep.ok()) {
    if (require_pass) throw Error(ErrKind::InvalidInput, "algebra validation failed");
    return;
  }

  try {
    auto ws = build_weight_system(ctx.doc.algebra);
    checks.add("weight_system", true);
    bool sized = true;
    for (const auto& c : ctx.doc.lattice.characters)
      sized = sized && c.values.size() == ctx.doc.lattice.n_generators();
    checks.add("lattice.values_per_generator", sized);
    if (sized && !ctx.doc.lattice.characters.empty()) {
      // the declared character functionals must resolve against the weight lattice
      bool resolves = true;
      std::string why;
      try {
        build_char_table(ws, ctx.doc.lattice);
      } catch (const Error& e) {
        resolves = false;
        why = e.what();
      }
      checks.add("lattice.char_table", resolves, why);
    }
  } catch (const Error& e) {
    checks.add("weight_system", false, e.what());
  }

  if (require_pass && !checks.ok)
    throw Error(ErrKind::InvalidInput, "input document failed validation");
}

/** Complex-structure compatibility checks; gate cmd_validate's verdict only —
 *  the hodge pipelines re-impose them as hypothesis gates where they matter. */
void add_j_checks(const Context& ctx, CheckList& checks) {
  if (!ctx.doc.complex_structure) return;
  auto jr = validate_complex_structure(ctx.doc.algebra, *ctx.doc.complex_structure);
  checks.add("J.even_dimension", jr.dim_even);
  checks.add("J.square_is_minus_one", jr.square);
  checks.add("J.integrable", jr.nijenhuis);
  checks.add("J.preserves_nilradical", jr.preserves_n);
  checks.add("J.preserves_splitting", jr.preserves_v);
  checks.add("J.commutes_with_semisimple_parts", jr.ads_commuting);
}

int cmd_validate(Context& ctx) {
  CheckList checks;
  run_validation(ctx, checks, /*require_pass=*/false);
  add_j_checks(ctx, checks);
  if (ctx.doc.complex_structure)
    ctx.report["holomorphic_mostow"] =
        holomorphic_mostow_check(ctx.doc.algebra, *ctx.doc.complex_structure);
  ctx.report["checks"] = checks.items;
  ctx.report["verdict"] = checks.ok ? "pass" : "fail";
  return checks.ok ? 0 : 2;
}

int cmd_betti(Context& ctx, SubtorusMode mode, const IntCols& explicit_gens) {
  CheckList checks;
  run_validation(ctx, checks, /*require_pass=*/true);

  auto ws = build_weight_system(ctx.doc.algebra);
  auto table = build_char_table(ws, ctx.doc.lattice);
  auto choice = choose_subtorus(ws, table, mode, explicit_gens);
  auto rep = derham_report(ctx.doc.algebra, ws, table, choice);

  ctx.report["betti"] = rep.betti;
  ctx.report["betti_modified"] = rep.betti_modified;
  ctx.report["betti_original"] = rep.betti_original;
  ctx.report["admitted_monomials"] = rep.admitted_monomials;
  Json sub = Json::object();
  sub["mode"] = subtorus_name(choice.mode);
  sub["rank"] = choice.rank();
  ctx.report["subtorus"] = std::move(sub);
  checks.add("unwound_characters_trivial", rep.check_unwound_trivial,
             rep.repair_index ? "finite-index repair hint: " + rep.repair_index->str() : "");
  checks.add("twists_inside_subtorus", rep.check_twists_in_subtorus);
  checks.add("betti_matches_modified_algebra", rep.check_betti_match);
  ctx.report["certified"] = rep.certified();
  ctx.report["mostow_torus"] = mostow_torus_check(choice);
  auto kas = kasuya_condition(ws, table);
  ctx.report["kasuya"] = kas.holds;

  bool expect_ok = true;
  if (ctx.doc.expectations.betti) {
    expect_ok = rep.betti == *ctx.doc.expectations.betti;
    checks.add("expected_betti", expect_ok);
  }
  ctx.report["checks"] = checks.items;
  ctx.report["verdict"] = checks.ok ? "pass" : "fail";
  if (!rep.certified())
    throw Error(ErrKind::Hypothesis, "lattice subcomplex could not be certified");
  if (!expect_ok)
    throw Error(ErrKind::InvalidInput, "computed Betti numbers differ from the recorded expectation");
  return 0;
}

HodgeTable run_pipeline(const Context& ctx, const std::string& pipeline) {
  const auto& g = ctx.doc.algebra;
  const Matrix& j = *ctx.doc.complex_structure;
  auto ws = build_weight_system(g);
  if (pipeline == "dolbb" || pipeline == "split") {
    // Infinitesimally the two theorems use the same bigraded subalgebra; "split"
    // additionally requires the document to declare the semidirect-product action.
    if (pipeline == "split" && ctx.doc.action_mode != "split")
      throw Error(ErrKind::Hypothesis, "document does not declare a split (semidirect) action");
    auto bg = build_B_gamma(g, ws, j, ctx.doc.lattice);
    return hodge_numbers(bg.complex);
  }
  if (pipeline == "breve") {
    auto bp = breve_pair(g, ws, j, ctx.doc.lattice);
    return shortcut_hodge(bp, ShortcutMode::General);
  }
  throw Error(ErrKind::InvalidInput, "--pipeline expects dolbb|split|breve|auto");
}

int cmd_hodge(Context& ctx, std::string pipeline) {
  CheckList checks;
  run_validation(ctx, checks, /*require_pass=*/true);
  if (!ctx.doc.complex_structure)
    throw Error(ErrKind::InvalidInput, "hodge requires a complex_structure block");

  HodgeTable table;
  if (pipeline == "auto") {
    std::string last;
    bool done = false;
    for (const char* p : {"dolbb", "split", "breve"}) {
      try {
        table = run_pipeline(ctx, p);
        pipeline = p;
        done = true;
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrKind::Hypothesis) throw;
        last = e.what();
      }
    }
    if (!done) throw Error(ErrKind::Hypothesis, "no pipeline applies: " + last);
  } else {
    table = run_pipeline(ctx, pipeline);
  }

  ctx.report["pipeline"] = pipeline;
  ctx.report["hodge"] = hodge_json(table);
  ctx.report["holomorphic_mostow"] =
      holomorphic_mostow_check(ctx.doc.algebra, *ctx.doc.complex_structure);

  bool expect_ok = true;
  if (ctx.doc.expectations.hodge) {
    expect_ok = table == *ctx.doc.expectations.hodge;
    checks.add("expected_hodge", expect_ok);
  }
  ctx.report["checks"] = checks.items;
  ctx.report["verdict"] = checks.ok ? "pass" : "fail";
  if (!expect_ok)
    throw Error(ErrKind::InvalidInput, "computed Hodge numbers differ from the recorded expectation");
  return 0;
}

int cmd_modify(Context& ctx, SubtorusMode mode, const IntCols& explicit_gens,
               const std::string& emit_path) {
  CheckList checks;
  run_validation(ctx, checks, /*require_pass=*/true);

  auto ws = build_weight_system(ctx.doc.algebra);
  auto table = build_char_table(ws, ctx.doc.lattice);
  auto choice = choose_subtorus(ws, table, mode, explicit_gens);
  auto modified = modified_algebra(ctx.doc.algebra, ws, choice);

  auto mrep = modified.validate();
  for (const auto& c : mrep.checks) checks.add("modified." + c.name, c.pass, c.detail);

  Json sub = Json::object();
  sub["mode"] = subtorus_name(choice.mode);
  sub["rank"] = choice.rank();
  ctx.report["subtorus"] = std::move(sub);
  ctx.report["nilpotent"] = is_nilpotent(modified);
  ctx.report["completely_solvable"] = is_completely_solvable(modified);
  if (ctx.doc.complex_structure) {
    ctx.report["holomorphic_mostow_before"] =
        holomorphic_mostow_check(ctx.doc.algebra, *ctx.doc.complex_structure);
    ctx.report["holomorphic_mostow_after"] =
        holomorphic_mostow_check(modified, *ctx.doc.complex_structure);
  }

  InputDocument out = ctx.doc;
  out.algebra = modified;
  out.expectations = Expectations{};  // the recorded tables describe the original algebra
  Json emitted = document_json(out);
  ctx.report["document"] = emitted;
  if (!emit_path.empty()) {
    std::ofstream f(emit_path);
    if (!f) throw Error(ErrKind::InvalidInput, "cannot write '" + emit_path + "'");
    f << emitted.dump(2) << "\n";
  }

  ctx.report["checks"] = checks.items;
  ctx.report["verdict"] = checks.ok ? "pass" : "fail";
  return checks.ok ? 0 : 2;
}

}  // namespace
}  // namespace solvco

int main(int argc, char** argv) {
  using namespace solvco;

  CLI::App app{"exact de Rham / Dolbeault cohomology of compact solvmanifolds"};
  app.require_subcommand(1);

  std::string path, json_out, subtorus = "auto", pipeline = "auto", emit_path;
  auto add_common = [&](CLI::App* c) {
    c->add_option("file", path, "input document (JSON)")->required();
    c->add_option("--json", json_out, "also write the report to this file");
  };
  CLI::App* validate = app.add_subcommand("validate", "structural checks");
  add_common(validate);
  CLI::App* betti = app.add_subcommand("betti", "de Rham Betti numbers of G/Gamma");
  add_common(betti);
  betti->add_option("--subtorus", subtorus, "auto|full|explicit:<file>");
  CLI::App* hodge = app.add_subcommand("hodge", "Dolbeault Hodge numbers");
  add_common(hodge);
  hodge->add_option("--pipeline", pipeline, "dolbb|split|breve|auto");
  CLI::App* modify = app.add_subcommand("modify", "emit the modified algebra");
  add_common(modify);
  modify->add_option("--subtorus", subtorus, "auto|full|explicit:<file>");
  modify->add_option("--emit", emit_path, "write the modified input document here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Context ctx;
  int code = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ctx.threads = thread_budget();
    ctx.raw = read_file(path);
    Json doc;
    try {
      doc = Json::parse(ctx.raw);
    } catch (const Json::parse_error& e) {
      throw Error(ErrKind::InvalidInput, std::string("JSON parse error: ") + e.what());
    }
    ctx.doc = parse_document(doc);
    ctx.report["version"] = kVersion;
    ctx.report["input"] = path;
    ctx.report["input_hash"] = fnv1a_hex(ctx.raw);
    ctx.report["threads"] = ctx.threads;

    if (validate->parsed()) {
      ctx.report["command"] = "validate";
      code = cmd_validate(ctx);
    } else if (betti->parsed()) {
      ctx.report["command"] = "betti";
      IntCols gens;
      auto mode = parse_subtorus(subtorus, gens);
      code = cmd_betti(ctx, mode, gens);
    } else if (hodge->parsed()) {
      ctx.report["command"] = "hodge";
      code = cmd_hodge(ctx, pipeline);
    } else {
      ctx.report["command"] = "modify";
      IntCols gens;
      auto mode = parse_subtorus(subtorus, gens);
      code = cmd_modify(ctx, mode, gens, emit_path);
    }
  } catch (const Error& e) {
    ctx.report["error"] = e.what();
    ctx.report["verdict"] = "fail";
    switch (e.kind()) {
      case ErrKind::Hypothesis: code = 1; break;
      case ErrKind::InvalidInput: code = 2; break;
      default: code = 3; break;
    }
  } catch (const std::exception& e) {
    ctx.report["error"] = e.what();
    ctx.report["verdict"] = "fail";
    code = 3;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  ctx.report["timing_ms"] = ms;

  std::string text = ctx.report.dump(2) + "\n";
  std::cout << text;
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    if (f) f << text;
  }
  return code;
}
