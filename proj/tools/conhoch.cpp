#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conhoch/conhoch.hpp"
#include "conhoch/json_io.hpp"

using namespace conhoch;
using namespace conhoch::json_io;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;

/// Input errors map to exit 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A verification that should hold did not; maps to exit 2.
class MismatchError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string model;
  int kmax = 3;
  int cmax = 2;
  int degree = 2;
  std::string tag = "wobs";
  std::vector<std::string> inputs;
  std::string out;
  int jobs = default_jobs();
  bool table = false;
};

struct Result {
  json report;
  std::string table;  // nonempty when a table rendering was requested
  int code = kExitOk;
};

FlatModel parse_model(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw InputError("bad model component '" + part + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad model component '" + part + "'");
    }
  }
  if (v.size() != 3) throw InputError("--model expects nT,nW,n0, got '" + s + "'");
  return FlatModel(v[0], v[1], v[2]);
}

FunctionClassTag parse_tag(const std::string& s) {
  if (s == "wobs") return FunctionClassTag::Wobs;
  if (s == "null") return FunctionClassTag::Null;
  throw InputError("--tag expects wobs or null, got '" + s + "'");
}

json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

const json& single_input(const Config& cfg, const std::vector<json>& inputs) {
  if (inputs.size() != 1) throw InputError("expected exactly one --in file, got " + std::to_string(cfg.inputs.size()));
  return inputs.front();
}

/// A chain given either directly or as an operator {"symbol": ...}.
SymbolChain chain_input(const json& j, int n) {
  if (j.is_object() && j.contains("symbol")) return op_from_json(j, n).symbol();
  return chain_from_json(j, n);
}

std::string level(bool null, bool wobs) { return null ? "Null" : (wobs ? "Wobs" : "Total"); }

json witness_json(const FunctionalWitness& w) {
  json args = json::array();
  for (const auto& a : w.args) args.push_back(to_json(a));
  return {{"args", args}, {"value", to_json(w.value)}, {"required", conhoch::to_string(w.required)}};
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

// Commands

Result classify_function_cmd(const FlatModel& m, const json& in) {
  const Poly f = poly_from_json(in, m.n_total());
  return {{{"class", conhoch::to_string(classify_function(m, f))}}};
}

Result classify_field_cmd(const FlatModel& m, const json& in) {
  const VectorField v = vector_field_from_json(in, m.n_total());
  return {{{"class", level(vf_membership(m, v, FunctionClassTag::Null), vf_membership(m, v, FunctionClassTag::Wobs))}}};
}

Result classify_symbol_cmd(const FlatModel& m, const json& in) {
  if (in.is_object() && in.contains("degree")) {
    const MultiVector x = multivector_from_json(in, m.n_total());
    return {{{"class", level(mv_membership(m, x, FunctionClassTag::Null), mv_membership(m, x, FunctionClassTag::Wobs))}}};
  }
  const SymbolChain phi = chain_input(in, m.n_total());
  return {{{"class", level(chain_membership(m, phi, FunctionClassTag::Null),
                           chain_membership(m, phi, FunctionClassTag::Wobs))}}};
}

Result classify_operator_cmd(const FlatModel& m, const json& in) {
  const MultiDiffOp d(chain_input(in, m.n_total()));
  const bool null = op_membership(m, d, FunctionClassTag::Null);
  const bool wobs = op_membership(m, d, FunctionClassTag::Wobs);
  json w = nullptr;
  if (!null) {
    const auto tag = wobs ? FunctionClassTag::Null : FunctionClassTag::Wobs;
    if (auto found = functional_membership_witness(m, d.symbol(), tag, d.symbol().max_order() + 1))
      w = witness_json(*found);
  }
  return {{{"class", level(null, wobs)}, {"witness", w}}};
}

Result delta_cmd(const FlatModel& m, const json& in) {
  return {to_json(hochschild_delta(MultiDiffOp(chain_input(in, m.n_total()))))};
}

Result bigd_cmd(const FlatModel& m, const json& in) { return {to_json(differential_D(chain_input(in, m.n_total())))}; }

Result hkr_cmd(const FlatModel& m, const json& in) { return {to_json(hkr(multivector_from_json(in, m.n_total())))}; }

Result hh_dim_cmd(const FlatModel& m, const Config& cfg) {
  const auto tag = parse_tag(cfg.tag);
  if (cfg.degree < 0 || cfg.degree > 2) throw InputError("--degree must be 0, 1 or 2");
  std::vector<std::pair<int, int>> keys;
  if (cfg.degree == 0) {
    for (int c = 0; c <= cfg.cmax; ++c) keys.emplace_back(0, c);
  } else {
    for (int K = cfg.degree; K <= cfg.kmax; ++K)
      for (int c = 0; c <= cfg.cmax; ++c) keys.emplace_back(K, c);
  }
  std::vector<std::size_t> dims(keys.size());
  parallel_for(keys.size(), cfg.jobs, [&](std::size_t i) {
    dims[i] = hh_dimension(m, tag, cfg.degree, std::max(1, keys[i].first), keys[i].second);
  });
  Result r{json::array()};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    r.report.push_back({{"model", to_json(m)},
                        {"tag", conhoch::to_string(tag)},
                        {"degree", cfg.degree},
                        {"K", keys[i].first},
                        {"c", keys[i].second},
                        {"hh_dim", dims[i]}});
    rows.push_back({std::to_string(keys[i].first), std::to_string(keys[i].second), std::to_string(dims[i])});
  }
  if (cfg.table) r.table = render_table({"K", "c", "hh_dim"}, rows);
  return r;
}

Result verify_theorem_cmd(const FlatModel& m, const Config& cfg) {
  const auto tag = parse_tag(cfg.tag);
  const auto reports = verify_theorem_grid(m, tag, cfg.kmax, cfg.cmax, cfg.jobs, true);
  Result r{json::array()};
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : reports) {
    r.report.push_back(to_json(s));
    if (!s.match) r.code = kExitMismatch;
    rows.push_back({std::to_string(s.K), std::to_string(s.c), std::to_string(s.hh_dim), std::to_string(s.rhs_dim),
                    s.match ? "true" : "false"});
  }
  if (cfg.table) r.table = render_table({"K", "c", "hh_dim", "rhs_dim", "match"}, rows);
  return r;
}

Result decompose_cmd(const FlatModel& m, const Config& cfg, const json& in) {
  try {
    return {to_json(decompose_2cocycle(m, chain_input(in, m.n_total()), parse_tag(cfg.tag)))};
  } catch (const SolveFailure& e) {
    throw MismatchError(e.what());
  }
}

Result find_potential_cmd(const FlatModel& m, const Config& cfg, const json& in) {
  const SymbolChain phi = chain_input(in, m.n_total());
  auto plain = find_potential(m, phi);
  auto cons = find_constraint_potential(m, phi, parse_tag(cfg.tag));
  return {{{"plain", plain ? to_json(*plain) : json(nullptr)}, {"constraint", cons ? to_json(*cons) : json(nullptr)}}};
}

Result star_check_cmd(const FlatModel& m, const json& in) {
  const TruncatedStar s = star_from_json(in, m.n_total());
  json v = nullptr;
  if (auto bad = check_associativity(s, s.order())) {
    json args = json::array();
    for (const auto& a : bad->args) args.push_back(to_json(a));
    v = {{"order", bad->order}, {"args", args}, {"defect", to_json(bad->defect)}};
  }
  return {{{"associative", v.is_null()}, {"constraint", is_constraint_star(m, s)}, {"violation", v}}};
}

Result star_equiv_cmd(const FlatModel& m, const std::vector<json>& inputs) {
  if (inputs.size() != 2) throw InputError("star-equiv needs two --in files");
  const TruncatedStar a = star_from_json(inputs[0], m.n_total());
  const TruncatedStar b = star_from_json(inputs[1], m.n_total());
  int k = 0;
  const int common = std::min(a.order(), b.order());
  while (k + 1 < common && a.cochain(k + 1) == b.cochain(k + 1)) ++k;
  json rep = to_json(equivalence_report(m, a, b, k));
  rep["order"] = k + 1;
  return {rep};
}

Result classify_star_cmd(const FlatModel& m, const json& in) {
  const TruncatedStar s = star_from_json(in, m.n_total());
  const CocycleClass cls = classify_infinitesimal(m, s.cochain(1));
  json j = to_json(cls);
  j["reduced"] = to_json(reduce_multivector(m, cls.x));
  return {j};
}

Result reduce_cmd(const FlatModel& m, const json& in) {
  json out;
  if (in.is_object() && in.contains("degree")) {
    out = to_json(reduce_multivector(m, multivector_from_json(in, m.n_total())));
  } else if (in.is_object() && in.contains("components")) {
    out = to_json(reduce_multivector(m, vector_field_from_json(in, m.n_total()).as_multivector()));
  } else {
    out = to_json(reduce_function(m, poly_from_json(in, m.n_total())));
  }
  return {{{"reduced_dimension", m.reduced_dimension()}, {"reduced", out}}};
}

Result dispatch(const std::string& cmd, const Config& cfg) {
  const FlatModel m = parse_model(cfg.model);
  std::vector<json> inputs;
  for (const auto& p : cfg.inputs) inputs.push_back(read_input(p));
  if (cmd == "hh-dim") return hh_dim_cmd(m, cfg);
  if (cmd == "verify-theorem") return verify_theorem_cmd(m, cfg);
  if (cmd == "star-equiv") return star_equiv_cmd(m, inputs);
  const json& in = single_input(cfg, inputs);
  if (cmd == "classify-function") return classify_function_cmd(m, in);
  if (cmd == "classify-field") return classify_field_cmd(m, in);
  if (cmd == "classify-symbol") return classify_symbol_cmd(m, in);
  if (cmd == "classify-operator") return classify_operator_cmd(m, in);
  if (cmd == "delta") return delta_cmd(m, in);
  if (cmd == "bigd") return bigd_cmd(m, in);
  if (cmd == "hkr") return hkr_cmd(m, in);
  if (cmd == "decompose-cocycle") return decompose_cmd(m, cfg, in);
  if (cmd == "find-potential") return find_potential_cmd(m, cfg, in);
  if (cmd == "star-check") return star_check_cmd(m, in);
  if (cmd == "classify-star") return classify_star_cmd(m, in);
  if (cmd == "reduce") return reduce_cmd(m, in);
  throw InputError("unknown command " + cmd);
}

void emit(const Result& r, const Config& cfg) {
  const std::string text = cfg.table && !r.table.empty() ? r.table : r.report.dump() + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint Hochschild cohomology of flat constraint models"};
  app.require_subcommand(1);
  Config cfg;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"classify-function", "Wobs/Null/Total class of a polynomial"},
      {"classify-field", "class of a vector field"},
      {"classify-symbol", "class of a symbol chain or multivector"},
      {"classify-operator", "class of a multidifferential operator, with a functional witness"},
      {"delta", "Hochschild differential of an operator"},
      {"bigd", "symbol-side differential D of a symbol chain"},
      {"hkr", "HKR image of a multivector"},
      {"hh-dim", "dimensions of cohomology slices"},
      {"verify-theorem", "compare second cohomology with the predicted dimension per slice"},
      {"decompose-cocycle", "split a constraint 2-cocycle into potential, bivector and symmetric part"},
      {"find-potential", "plain and constraint primitives of a chain"},
      {"star-check", "associativity and constraint check of a truncated star product"},
      {"star-equiv", "plain and constraint equivalence of two truncated star products"},
      {"classify-star", "class of the first-order term of a constraint star product"},
      {"reduce", "image of a Wobs function, vector field or multivector on the reduced model"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--model", cfg.model, "flat model nT,nW,n0")->required();
    sub->add_option("--in", cfg.inputs, "input JSON file (repeat for star-equiv)");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--tag", cfg.tag, "wobs or null")->capture_default_str();
    sub->add_option("--kmax", cfg.kmax, "largest total symmetric degree")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--cmax", cfg.cmax, "largest coefficient degree")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--degree", cfg.degree, "cohomological degree for hh-dim")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads (default CONHOCH_JOBS or 1)")->check(CLI::PositiveNumber);
    sub->add_flag("--table", cfg.table, "aligned table instead of JSON (hh-dim, verify-theorem)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const Result r = dispatch(app.get_subcommands().front()->get_name(), cfg);
    emit(r, cfg);
    return r.code;
  } catch (const MismatchError& e) {
    std::cerr << "conhoch: verification failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const InternalError& e) {
    std::cerr << "conhoch: internal error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "conhoch: " << e.what() << "\n";
    return kExitInput;
  }
}
