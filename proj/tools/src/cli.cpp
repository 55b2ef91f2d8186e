#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "entroscope/entropy.hpp"
#include "entroscope/errors.hpp"
#include "entroscope/flow_json.hpp"
#include "entroscope/harness.hpp"
#include "entroscope/mahler.hpp"
#include "entroscope/radicals.hpp"
#include "entroscope/trajectory.hpp"

namespace entroscope::cli {

namespace {

struct Options {
  std::string flow;
  std::string kind = "ha";
  std::string method = "auto";
  double precision = 1e-9;
  std::optional<unsigned> steps;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string csv;
  std::string poly;
  std::string radical = "Q";
  std::string axioms;
  unsigned trials = 100;
  std::string mode = "subgroup";
  std::string generators;
};

// Aligned "key  value" lines.
class Table {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void print(std::ostream& out) const {
    std::size_t w = 0;
    for (const auto& r : rows_) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows_) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path, or an inline JSON document when the argument starts with '{' or '['.
std::string load_document(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  return read_file(arg);
}

Flow load_flow(const Options& o) {
  if (o.flow.empty()) throw ParseError("flow", "a flow file or inline document is required");
  return parse_flow_text(load_document(o.flow));
}

std::string render_vector(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string render_part(const PartSubmodule& p) {
  if (p.generator) return "(" + p.generator->to_string() + ")";
  std::string s = "span{";
  const IntMatrix& b = p.subgroup->basis();
  for (std::size_t j = 0; j < b.cols(); ++j) s += (j ? ", " : "") + render_vector(b.col(j));
  return s + "}";
}

void add_submodule(Table& t, const std::string& prefix, const SubmoduleDesc& n) {
  for (std::size_t i = 0; i < n.parts.size(); ++i)
    t.add(prefix + (n.parts.size() > 1 ? " part " + std::to_string(i) : ""), render_part(n.parts[i]));
  t.add(prefix + " iso", n.iso);
}

void emit(std::ostream& out, const Options& o, const Json& j, const Table& t) {
  if (o.format == "json")
    out << j.dump(2) << '\n';
  else
    t.print(out);
}

Json value_json(const EntropyValue& v) {
  Json j = to_json(v);
  j["rendered"] = v.render();
  return j;
}

std::vector<Element> parse_elements(const std::string& text, const Flow& flow) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("generators", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("generators", "expected an array of elements");
  std::vector<Element> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "generators/" + std::to_string(i);
    const Json& e = doc[i];
    if (!e.is_array()) throw ParseError(where, "expected an element");
    Element el;
    if (flow.size() == 1 && (e.empty() || !e[0].is_array())) {
      el.push_back(parse_int_vector(e, where));
    } else {
      if (e.size() != flow.size()) throw ParseError(where, "expected one vector per part");
      for (std::size_t p = 0; p < e.size(); ++p) el.push_back(parse_int_vector(e[p], where + "/" + std::to_string(p)));
    }
    out.push_back(std::move(el));
  }
  return out;
}

Element zero_element(const Flow& flow) {
  Element e;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part))
      e.push_back(IntVector(fg->ambient_rank()));
    else
      e.push_back({});
  }
  return e;
}

int cmd_entropy(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  EntropyKind kind = parse_entropy_kind(o.kind);
  Method method = parse_method(o.method);
  EntropyValue v = entropy(flow, kind, method, o.precision);
  Json j;
  j["flow"] = describe(flow);
  j["kind"] = to_string(kind);
  j["method"] = to_string(method);
  j["value"] = value_json(v);
  Table t;
  t.add("flow", describe(flow));
  t.add("kind", to_string(kind));
  t.add("method", to_string(method));
  t.add("entropy", v.render());
  emit(out, o, j, t);
  return 0;
}

int cmd_mahler(const Options& o, std::ostream& out) {
  std::string text;
  if (!o.poly.empty())
    text = o.poly;
  else if (!o.flow.empty())
    text = load_document(o.flow);
  else
    throw ParseError("poly", "pass --poly or a polynomial file");
  IntPoly p = parse_poly_text(text);
  EntropyValue v = mahler(p, o.precision);
  Json j;
  j["poly"] = to_json(p.coeffs());
  j["value"] = value_json(v);
  Table t;
  t.add("poly", p.to_string());
  t.add("mahler", v.render());
  emit(out, o, j, t);
  return 0;
}

int cmd_radical(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  RadicalKind kind = parse_radical_kind(o.radical);
  SubmoduleDesc n = radical(flow, kind);
  Json j;
  j["radical"] = to_string(kind);
  j["submodule"] = to_json(n);
  Table t;
  t.add("flow", describe(flow));
  t.add("radical", to_string(kind));
  add_submodule(t, "radical", n);
  emit(out, o, j, t);
  return 0;
}

int cmd_tower(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  RadicalKind kind = parse_radical_kind(o.radical);
  const unsigned n_max = o.steps.value_or(5);
  std::vector<SubmoduleDesc> chain = tower(flow, kind, n_max);
  Json j;
  j["radical"] = to_string(kind);
  j["tower"] = Json::array();
  Table t;
  t.add("flow", describe(flow));
  for (std::size_t n = 0; n < chain.size(); ++n) {
    j["tower"].push_back(to_json(chain[n]));
    add_submodule(t, std::string(to_string(kind)) + "_" + std::to_string(n), chain[n]);
  }
  emit(out, o, j, t);
  return 0;
}

int cmd_pinsker(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  EntropyKind kind = parse_entropy_kind(o.kind);
  SubmoduleDesc p = pinsker(flow, kind);
  Json j;
  j["kind"] = to_string(kind);
  j["pinsker"] = to_json(p);
  Table t;
  t.add("flow", describe(flow));
  t.add("kind", to_string(kind));
  add_submodule(t, "pinsker", p);
  emit(out, o, j, t);
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  EntropyKind kind = parse_entropy_kind(o.kind);
  Classification c = classify(flow, kind);
  Json j;
  j["kind"] = to_string(kind);
  j["class"] = to_string(c.cls);
  j["pinsker"] = to_json(c.pinsker);
  j["sub"] = describe(c.sub);
  j["quotient"] = describe(c.quot);
  Table t;
  t.add("flow", describe(flow));
  t.add("kind", to_string(kind));
  t.add("class", to_string(c.cls));
  add_submodule(t, "pinsker", c.pinsker);
  t.add("quotient", describe(c.quot));
  emit(out, o, j, t);
  return 0;
}

int cmd_trajectory(const Options& o, std::ostream& out) {
  Flow flow = load_flow(o);
  TrajectoryOptions opt;
  if (o.mode == "subset")
    opt.mode = TrajectoryMode::Subset;
  else if (o.mode != "subgroup")
    throw ParseError("mode", "expected subgroup or subset");
  if (parse_entropy_kind(o.kind) == EntropyKind::Rank) opt.invariant = TrajectoryInvariant::Rank;
  opt.steps = o.steps;
  std::vector<Element> gens;
  if (!o.generators.empty()) {
    gens = parse_elements(load_document(o.generators), flow);
  } else {
    gens = module_generators(flow);
    if (opt.mode == TrajectoryMode::Subset) gens.insert(gens.begin(), zero_element(flow));
  }
  TrajectoryReport rep = trajectory(flow, gens, opt);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw ParseError(o.csv, "cannot write file");
    f << rep.csv();
  }
  Json j;
  j["mode"] = o.mode;
  j["tau"] = to_json(rep.tau);
  j["stabilized"] = rep.stabilized;
  j["estimate"] = value_json(rep.estimate);
  j["method"] = rep.method;
  if (opt.mode == TrajectoryMode::Subgroup) j["window"] = rep.window;
  Table t;
  t.add("flow", describe(flow));
  t.add("mode", o.mode);
  std::string taus;
  for (std::size_t k = 0; k < rep.tau.size(); ++k) taus += (k ? " " : "") + rep.tau[k].get_str();
  t.add(opt.invariant == TrajectoryInvariant::Rank ? "rank" : "tau", taus);
  t.add("stabilized", rep.stabilized ? "yes" : "no");
  t.add("estimate", rep.estimate.render());
  t.add("method", rep.method);
  emit(out, o, j, t);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  EntropyKind kind = parse_entropy_kind(o.kind);
  std::vector<Axiom> axioms = o.axioms.empty() ? all_axioms() : parse_axiom_list(o.axioms);
  VerifyReport r = verify_axioms(kind, axioms, o.trials, o.seed);
  if (o.format == "json") {
    out << to_json(r).dump(2) << '\n';
  } else {
    Table t;
    t.add("kind", to_string(kind));
    t.add("seed", std::to_string(o.seed));
    t.add("trials", std::to_string(o.trials));
    for (const auto& a : r.axioms) {
      t.add(to_string(a.axiom), "passed " + std::to_string(a.passed) + ", failed " + std::to_string(a.failed));
      if (!a.note.empty()) t.add(std::string(to_string(a.axiom)) + " note", a.note);
    }
    t.add("result", r.ok() ? "ok" : "FAILED");
    t.print(out);
    for (const auto& a : r.axioms)
      for (const auto& f : a.failures) {
        Json fj;
        fj["axiom"] = to_string(a.axiom);
        fj["trial"] = f.trial;
        fj["detail"] = f.detail;
        fj["instance"] = f.instance;
        out << fj.dump() << '\n';
      }
  }
  return r.ok() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy, radicals and torsion theories of algebraic flows", "entroscope"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_flow = [&](CLI::App* c) { c->add_option("flow", o.flow, "Flow JSON file or inline document"); };
  auto add_kind = [&](CLI::App* c) {
    c->add_option("--kind", o.kind, "Entropy kind")->check(CLI::IsMember({"ha", "ent", "rank", "ent_rank"}));
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_radical = [&](CLI::App* c) {
    c->add_option("--radical", o.radical, "Radical kind")->check(CLI::IsMember({"O", "I", "Q", "A", "W"}));
  };

  auto* c_entropy = app.add_subcommand("entropy", "Entropy of a flow");
  add_flow(c_entropy);
  add_kind(c_entropy);
  c_entropy->add_option("--method", o.method, "Backend")->check(CLI::IsMember({"auto", "closed_form", "trajectory"}));
  c_entropy->add_option("--precision", o.precision, "Absolute error budget")->check(CLI::PositiveNumber);
  add_format(c_entropy);

  auto* c_mahler = app.add_subcommand("mahler", "Logarithmic Mahler measure of an integer polynomial");
  c_mahler->add_option("file", o.flow, "JSON coefficient array file (little-endian)");
  c_mahler->add_option("--poly", o.poly, "Inline JSON coefficient array, constant term first");
  c_mahler->add_option("--precision", o.precision, "Absolute error budget")->check(CLI::PositiveNumber);
  add_format(c_mahler);

  auto* c_radical = app.add_subcommand("radical", "Radical O, I, Q, A or W of a flow");
  add_flow(c_radical);
  add_radical(c_radical);
  add_format(c_radical);

  auto* c_tower = app.add_subcommand("tower", "Tower X_0 <= X_1 <= ... for O, I or Q");
  add_flow(c_tower);
  add_radical(c_tower);
  c_tower->add_option("--steps", o.steps, "Last tower index (default 5)");
  add_format(c_tower);

  auto* c_pinsker = app.add_subcommand("pinsker", "Pinsker radical of an entropy kind");
  add_flow(c_pinsker);
  add_kind(c_pinsker);
  add_format(c_pinsker);

  auto* c_classify = app.add_subcommand("classify", "Torsion / torsion-free / mixed classification");
  add_flow(c_classify);
  add_kind(c_classify);
  add_format(c_classify);

  auto* c_traj = app.add_subcommand("trajectory", "Trajectory sizes of F + phi F + ...");
  add_flow(c_traj);
  add_kind(c_traj);
  c_traj->add_option("--mode", o.mode, "Trajectory mode")->check(CLI::IsMember({"subgroup", "subset"}));
  c_traj->add_option("--generators", o.generators, "JSON array of elements (default: module generators)");
  c_traj->add_option("--steps", o.steps, "Fixed number of steps (default: until certified)");
  c_traj->add_option("--csv", o.csv, "Write n, tau, log_tau_over_n, ratio to this file");
  add_format(c_traj);

  auto* c_verify = app.add_subcommand("verify", "Check entropy axioms on seeded random flows");
  add_kind(c_verify);
  c_verify->add_option("--axioms", o.axioms, "Comma-separated subset of A0,A1,A2*,A3,A4*,A5,AT,SANDWICH");
  c_verify->add_option("--trials", o.trials, "Trials per axiom")->check(CLI::PositiveNumber);
  c_verify->add_option("--seed", o.seed, "Seed");
  add_format(c_verify);

  std::vector<const char*> argv{"entroscope"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_entropy->parsed()) return cmd_entropy(o, out);
    if (c_mahler->parsed()) return cmd_mahler(o, out);
    if (c_radical->parsed()) return cmd_radical(o, out);
    if (c_tower->parsed()) return cmd_tower(o, out);
    if (c_pinsker->parsed()) return cmd_pinsker(o, out);
    if (c_classify->parsed()) return cmd_classify(o, out);
    if (c_traj->parsed()) return cmd_trajectory(o, out);
    if (c_verify->parsed()) return cmd_verify(o, out);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace entroscope::cli
