#include "qpart/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpart/billiard_genfun.hpp"
#include "qpart/errors.hpp"
#include "qpart/partition.hpp"
#include "qpart/quiver.hpp"
#include "qpart/report.hpp"
#include "qpart/schroeder.hpp"
#include "qpart/series.hpp"

namespace qpart::cli {
namespace {

using nlohmann::json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format;
  std::string out;
  std::string cls = "billiard";
  std::optional<int> max_n;
  int parts = 1;
  std::string smallest = "any";
  std::string which;
  std::string caps;
  std::string suite;
  std::optional<int> dmax;
  std::optional<int> weight_max_n;
  int d = 1;
  int m = 1;
  int n = 1;
  bool lucas = false;
  int k = 2;
  int l = 1;
  std::string convention = "signed";
  std::string quiver;
  unsigned seed = 0;
};

struct Output {
  std::string body;
  int code = kPass;
};

// ---------------------------------------------------------------------------
// argument parsing helpers

struct ClassSpec {
  std::string name;
  std::optional<SipClassB> typeB;  // empty for D
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Usage(path + ": " + e.what());
  }
}

ClassSpec parse_class(const std::string& spec) {
  if (spec == "D") return {"D", std::nullopt};
  if (spec == "billiard") return {spec, SipClassB::billiard()};
  if (spec == "p32") return {spec, SipClassB::p32()};
  if (spec == "p31") return {spec, SipClassB::p31()};
  const json j = read_json_file(spec);
  try {
    SipClassB cls(j.at("k").get<int>(), j.at("c").get<std::vector<int>>(), j.at("d").get<std::vector<int>>());
    return {spec, cls};
  } catch (const json::exception& e) {
    throw Usage(spec + ": class file needs integer k and arrays c, d (" + e.what() + ")");
  }
}

SipClassB require_typeB(const ClassSpec& spec) {
  if (!spec.typeB) throw Usage("class D has no basis listing; use --class billiard");
  return *spec.typeB;
}

int parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Usage(what + ": expected an integer, got '" + text + "'");
  }
  if (used != text.size() || v <= 0) throw Usage(what + ": expected a positive integer, got '" + text + "'");
  return v;
}

TruncationPolicy parse_caps(const std::string& text) {
  TruncationPolicy p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Usage("--caps: expected var=N, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const int v = parse_positive(item.substr(eq + 1), "--caps " + key);
    if (key == "q") p.q_cap = v;
    else if (key == "x") p.x_cap = v;
    else if (key == "z") p.z_cap = v;
    else throw Usage("--caps: unknown variable '" + key + "'");
  }
  return p;
}

SmallestPartMode parse_mode(const std::string& text) {
  if (text == "any") return SmallestPartMode::unrestricted();
  if (text.rfind("fixed:", 0) == 0) return SmallestPartMode::fixed(parse_positive(text.substr(6), "--smallest"));
  throw Usage("--smallest: expected fixed:V or any, got '" + text + "'");
}

int require_cap(const std::optional<int>& cap, const char* var, const std::string& what) {
  if (!cap) throw Usage(what + " needs --caps " + var + "=N");
  return *cap;
}

// ---------------------------------------------------------------------------
// rendering

std::string render_json(json j) {
  j["schema"] = 1;
  return j.dump(2) + "\n";
}

std::string csv_terms(const MultiSeries& s) {
  std::string out = "e_q,e_a,e_x,e_z,coeff\n";
  for (const auto& [m, c] : s.terms()) {
    out += std::to_string(m.e_q) + "," + std::to_string(m.e_a) + "," + std::to_string(m.e_x) + "," +
           std::to_string(m.e_z) + "," + c.get_str() + "\n";
  }
  return out;
}

// "k: coefficient" rows for k = lo..hi of the chosen variable.
std::string rows_by(const MultiSeries& s, Var v, int lo, int hi) {
  std::string out;
  for (int e = lo; e <= hi; ++e) out += std::to_string(e) + ": " + to_string(s.coefficient_of(v, e)) + "\n";
  return out;
}

std::string partition_list(const std::vector<Partition>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].to_string();
  return out;
}

json partition_strings(const std::vector<Partition>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

// ---------------------------------------------------------------------------
// commands

Output cmd_enumerate(const Options& o) {
  const ClassSpec spec = parse_class(o.cls);
  const int max_n = o.max_n.value_or(15);
  if (max_n < 1) throw Usage("--max-n must be positive");
  const auto table = spec.typeB ? enumerate_typeB(*spec.typeB, max_n) : enumerate_D(max_n);

  Output r;
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& [n, ps] : table) rows.push_back({{"n", n}, {"count", ps.size()}, {"partitions", partition_strings(ps)}});
    r.body = render_json({{"command", "enumerate"}, {"class", spec.name}, {"max_n", max_n}, {"sizes", rows}});
  } else if (o.format == "csv") {
    r.body = "n,partition\n";
    for (const auto& [n, ps] : table) {
      for (const auto& p : ps) r.body += std::to_string(n) + "," + p.to_string() + "\n";
    }
  } else {
    for (const auto& [n, ps] : table) {
      r.body += std::to_string(n) + " (" + std::to_string(ps.size()) + "):";
      if (!ps.empty()) r.body += " " + partition_list(ps);
      r.body += "\n";
    }
  }
  return r;
}

Output cmd_basis(const Options& o) {
  const ClassSpec spec = parse_class(o.cls);
  const SipClassB cls = require_typeB(spec);
  const SmallestPartMode mode = parse_mode(o.smallest);
  if (o.parts < 1) throw Usage("--parts must be positive");
  const auto basis = enumerate_basis(cls, o.parts, mode);

  Output r;
  if (o.format == "json") {
    r.body = render_json({{"command", "basis"},
                          {"class", spec.name},
                          {"parts", o.parts},
                          {"smallest", mode.to_string()},
                          {"count", basis.size()},
                          {"partitions", partition_strings(basis)}});
  } else if (o.format == "csv") {
    r.body = "index,partition\n";
    for (std::size_t i = 0; i < basis.size(); ++i) r.body += std::to_string(i + 1) + "," + basis[i].to_string() + "\n";
  } else {
    for (const auto& p : basis) r.body += p.to_string() + "\n";
  }
  return r;
}

Output cmd_series(const Options& o) {
  const TruncationPolicy caps = parse_caps(o.caps);
  MultiSeries s;
  json params = json::object();
  // Text layout: rows by one variable, or a single line.
  std::optional<Var> row_var;
  int row_lo = 0;
  int row_hi = 0;

  if (o.which == "D-weighted") {
    const int q = require_cap(caps.q_cap, "q", "D-weighted");
    s = weighted_series_D(q);
    params["q_cap"] = q;
    row_var = Var::q;
    row_hi = q;
  } else if (o.which == "s-closed") {
    s = s_closed(o.d, o.m);
    params = {{"d", o.d}, {"m", o.m}};
  } else if (o.which == "sn-z") {
    s = sn_z(o.n);
    params["n"] = o.n;
  } else if (o.which == "t") {
    s = t_recursive(o.d, o.m);
    params = {{"d", o.d}, {"m", o.m}};
  } else if (o.which == "cn-z") {
    s = cn_z(o.n);
    params["n"] = o.n;
  } else if (o.which == "quiver") {
    const int x = require_cap(caps.x_cap, "x", "quiver");
    if (o.quiver.empty()) {
      s = quiver_series_reduced(SymmetricQuiver::two_node(), prop2_weights(), TruncationPolicy::x(x));
      params = {{"quiver", SymmetricQuiver::two_node().to_json()}, {"substitution", "x1=q^5x, x2=-aq^3x"}};
    } else {
      const SymmetricQuiver Q = SymmetricQuiver::from_json(read_json_file(o.quiver));
      std::vector<NodeWeight> weights(Q.nodes(), NodeWeight{1, Monomial::x(1)});
      s = quiver_series_reduced(Q, weights, TruncationPolicy::x(x));
      params = {{"quiver", Q.to_json()}, {"substitution", "x_i=x"}};
    }
    params["x_cap"] = x;
    row_var = Var::x;
    row_hi = x;
  } else if (o.which == "schroeder") {
    const int x = require_cap(caps.x_cap, "x", "schroeder");
    s = schroeder_series(x);
    params["x_cap"] = x;
    row_var = Var::x;
    row_hi = x;
  } else {
    throw Usage("--which: unknown series '" + o.which + "'");
  }

  Output r;
  if (o.format == "json") {
    json j{{"command", "series"}, {"which", o.which}, {"params", params}, {"series", to_json(s)}};
    r.body = render_json(std::move(j));
  } else if (o.format == "csv") {
    r.body = csv_terms(s);
  } else if (row_var) {
    r.body = rows_by(s, *row_var, row_lo, row_hi);
  } else {
    r.body = to_string(s) + "\n";
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sdn",   "generatingE", "lucas",    "decomposition",
                                              "prop2", "schroeder",   "t-family"};
  return names;
}

CheckReport run_suite(const std::string& suite, const Options& o, const TruncationPolicy& caps) {
  if (suite == "sdn") return verify_sdn(o.dmax.value_or(10));
  if (suite == "generatingE") return verify_generating_function(caps.q_cap.value_or(40));
  if (suite == "lucas") return verify_lucas_suite(o.dmax.value_or(20));
  if (suite == "decomposition") return verify_decomposition(o.max_n.value_or(25), o.weight_max_n.value_or(40));
  if (suite == "prop2") {
    CheckReport rep = verify_prop2(caps.x_cap.value_or(8));
    if (rep.ok) {
      const CheckReport slices = verify_stratified_vs_enumeration(caps.x_cap.value_or(8));
      if (!slices.ok) return slices;
      rep.summary += "; x-slices match enumeration";
    }
    return rep;
  }
  if (suite == "schroeder") {
    QuotientConvention conv;
    if (o.convention == "signed") conv = QuotientConvention::SignedFirstNode;
    else if (o.convention == "literal") conv = QuotientConvention::Literal;
    else throw Usage("--convention: expected signed or literal");
    return verify_schroeder_quotient(caps.x_cap.value_or(6), caps.q_cap, conv);
  }
  if (suite == "t-family") return verify_t_family(o.max_n.value_or(6));
  throw Usage("--suite: unknown suite '" + suite + "'");
}

Output cmd_verify(const Options& o) {
  const TruncationPolicy caps = parse_caps(o.caps);
  std::vector<CheckReport> reports;
  if (o.suite == "all") {
    for (const auto& name : suite_names()) reports.push_back(run_suite(name, o, caps));
  } else {
    reports.push_back(run_suite(o.suite, o, caps));
  }

  bool ok = true;
  for (const auto& rep : reports) ok = ok && rep.ok;
  Output r;
  r.code = ok ? kPass : kVerificationFailed;
  if (o.format == "json") {
    if (reports.size() == 1) {
      r.body = render_json(to_json(reports.front()));
    } else {
      json all = json::array();
      for (const auto& rep : reports) all.push_back(to_json(rep));
      r.body = render_json({{"suite", "all"}, {"status", ok ? "pass" : "fail"}, {"reports", all}});
    }
  } else if (o.format == "csv") {
    r.body = "suite,status,summary\n";
    for (const auto& rep : reports) r.body += rep.suite + "," + (rep.ok ? "pass" : "fail") + ",\"" + rep.summary + "\"\n";
  } else {
    for (const auto& rep : reports) {
      r.body += rep.suite + ": " + (rep.ok ? "PASS" : "FAIL") + ": " + rep.summary + "\n";
      if (!rep.ok && rep.counterexample) r.body += "  first counterexample: " + rep.counterexample->dump() + "\n";
    }
  }
  return r;
}

Output cmd_table(const Options& o) {
  if (!o.lucas) throw Usage("table: only --lucas tables are available");
  if (o.k < 1 || o.l < 1 || o.l > o.k) throw Usage("table: need 1 <= l <= k");
  const int dmax = o.dmax.value_or(12);
  if (dmax < 2) throw Usage("--dmax must be at least 2");
  const SipClassB cls = SipClassB::lucas(o.k, o.l);
  const SmallestPartMode mode = parse_mode(o.smallest);
  const LucasReport rep = verify_lucas(cls, dmax, mode);

  Output r;
  if (o.format == "json") {
    json rows = json::array();
    for (int d = 1; d <= dmax; ++d) {
      const auto& c = rep.refined[d - 1];
      rows.push_back({{"d", d}, {"f_d", c.total()}, {"a_d", c.odd_like_top}, {"b_d", c.rest}});
    }
    r.body = render_json({{"command", "table"},
                          {"k", o.k},
                          {"l", o.l},
                          {"smallest", mode.to_string()},
                          {"T", rep.params.T},
                          {"R", rep.params.R},
                          {"recursion_holds", rep.ok()},
                          {"rows", rows}});
  } else {
    r.body = "d,f_d,a_d,b_d\n";
    for (int d = 1; d <= dmax; ++d) {
      const auto& c = rep.refined[d - 1];
      r.body += std::to_string(d) + "," + std::to_string(c.total()) + "," + std::to_string(c.odd_like_top) + "," +
                std::to_string(c.rest) + "\n";
    }
  }
  return r;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", o.out, "Write to this file (relative paths resolve under $QPART_OUTPUT_DIR)");
}

void emit(const Output& r, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << r.body;
    return;
  }
  std::filesystem::path path(o.out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("QPART_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Usage("cannot write " + path.string());
  file << r.body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Billiard and separable integer partitions: enumeration, series and identity checks", "qpart"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Reserved for test shuffling; ignored by the algorithms");

  auto* enumerate = app.add_subcommand("enumerate", "List class members by size");
  enumerate->add_option("--class", o.cls, "D, billiard, p32, p31 or a JSON file {k, c, d}");
  enumerate->add_option("--max-n", o.max_n, "Largest size");
  add_common(enumerate, o);

  auto* basis = app.add_subcommand("basis", "List basal partitions with a given number of parts");
  basis->add_option("--class", o.cls, "billiard, p32, p31 or a JSON file {k, c, d}");
  basis->add_option("--parts", o.parts, "Number of parts")->required();
  basis->add_option("--smallest", o.smallest, "fixed:V or any");
  add_common(basis, o);

  auto* series = app.add_subcommand("series", "Print a generating series");
  series->add_option("--which", o.which, "D-weighted, s-closed, sn-z, t, cn-z, quiver or schroeder")->required();
  series->add_option("--caps", o.caps, "Truncation caps, e.g. q=15,x=8");
  series->add_option("--d", o.d, "Number of parts (s-closed, t)");
  series->add_option("--m", o.m, "Largest part (s-closed, t)");
  series->add_option("--n", o.n, "Index n (sn-z, cn-z)");
  series->add_option("--quiver", o.quiver, "JSON file {nodes, adjacency} for the quiver series");
  add_common(series, o);

  auto* verify = app.add_subcommand("verify", "Check an identity coefficient by coefficient");
  verify->add_option("--suite", o.suite, "sdn, generatingE, lucas, decomposition, prop2, schroeder, t-family or all")
      ->required();
  verify->add_option("--caps", o.caps, "Truncation caps, e.g. q=40 or x=6");
  verify->add_option("--dmax", o.dmax, "Largest number of parts (sdn, lucas)");
  verify->add_option("--max-n", o.max_n, "Size bound (decomposition) or n bound (t-family)");
  verify->add_option("--weight-max-n", o.weight_max_n, "Size bound for weight preservation (decomposition)");
  verify->add_option("--convention", o.convention, "signed (x1=-x) or literal (x1=x), schroeder only");
  add_common(verify, o);

  auto* table = app.add_subcommand("table", "Basal counts f_d with the refinement a_d + b_d");
  table->add_flag("--lucas", o.lucas, "Lucas table for the (k, l) class")->required();
  table->add_option("--k", o.k, "Modulus k");
  table->add_option("--l", o.l, "Number of odd-like residues");
  table->add_option("--dmax", o.dmax, "Largest number of parts");
  table->add_option("--smallest", o.smallest, "fixed:V or any");
  add_common(table, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Output r;
    if (enumerate->parsed()) {
      if (o.format.empty()) o.format = "text";
      r = cmd_enumerate(o);
    } else if (basis->parsed()) {
      if (o.format.empty()) o.format = "text";
      r = cmd_basis(o);
    } else if (series->parsed()) {
      if (o.format.empty()) o.format = "text";
      r = cmd_series(o);
    } else if (verify->parsed()) {
      if (o.format.empty()) o.format = "text";
      r = cmd_verify(o);
    } else {
      if (o.format.empty()) o.format = "csv";
      r = cmd_table(o);
    }
    emit(r, o, out);
    return r.code;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingCap& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisViolated& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace qpart::cli
