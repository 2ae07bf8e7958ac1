#include "dpp/solver/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dpp::solver {

namespace {

using Path = std::vector<int>;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool parse_index(std::string_view s, std::size_t& pos, int& out) {
  std::size_t e = pos;
  while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
  if (e == pos) return false;
  out = std::stoi(std::string(s.substr(pos, e - pos)));
  pos = e;
  return true;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int x = -1;
    try {
      x = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || x < 0) fail("-" + key + ": bad field list '" + v + "'");
    out.push_back(x);
  }
  if (out.empty()) fail("-" + key + ": empty field list");
  return out;
}

struct RawNode {
  std::map<std::string, std::string> opts;  // key without prefix
  std::map<int, std::vector<int>> fields;   // explicit -pc_fieldsplit_N_fields
};

PcType parse_pc_type(const std::string& key, const std::string& v) {
  if (v == "none") return PcType::None;
  if (v == "bjacobi" || v == "ilu") return PcType::Ilu0;
  if (v == "hypre" || v == "amg" || v == "gamg") return PcType::Amg;
  if (v == "fieldsplit") return PcType::FieldSplit;
  fail("-" + key + ": unsupported pc type '" + v + "'");
}

std::string prefix_of(const Path& p) {
  std::string s;
  for (int i : p) s += "fieldsplit_" + std::to_string(i) + "_";
  return s;
}

PcSpec build(const std::map<Path, RawNode>& raw, const Path& path, int n_fields, std::vector<Path>& used) {
  PcSpec spec;
  const std::string pre = prefix_of(path);
  const auto it = raw.find(path);
  const RawNode empty;
  const RawNode& node = it == raw.end() ? empty : it->second;
  used.push_back(path);
  auto get = [&](const std::string& k) -> const std::string* {
    const auto f = node.opts.find(k);
    return f == node.opts.end() ? nullptr : &f->second;
  };

  if (!path.empty()) {
    if (const auto* v = get("ksp_type")) {
      if (*v != "preonly") fail("-" + pre + "ksp_type: only preonly is supported for inner solvers");
    }
    // inner blocks default to one ILU(0) sweep
    spec.type = PcType::Ilu0;
  }
  if (const auto* v = get("pc_type")) spec.type = parse_pc_type(pre + "pc_type", *v);

  const bool split = spec.type == PcType::FieldSplit;
  if (!node.fields.empty()) {
    // explicit groups must cover this node's fields exactly
    PcSpec probe;
    probe.type = PcType::FieldSplit;
    for (const auto& [idx, g] : node.fields) probe.groups.push_back(g);
    probe.validate(n_fields);
  }
  for (const auto& [k, v] : node.opts) {
    const bool split_key = k.rfind("pc_fieldsplit_", 0) == 0;
    if (split_key && !split) fail("-" + pre + k + ": pc type is not fieldsplit");
  }
  if (!node.fields.empty() && !split) fail("-" + pre + "pc_fieldsplit_N_fields: pc type is not fieldsplit");
  if (!split) return spec;

  if (const auto* v = get("pc_fieldsplit_type")) {
    if (*v == "additive") spec.split_type = SplitType::Additive;
    else if (*v == "schur") spec.split_type = SplitType::SchurFull;
    else fail("-" + pre + "pc_fieldsplit_type: unsupported split type '" + *v + "'");
  }
  const bool schur = spec.split_type == SplitType::SchurFull;
  if (const auto* v = get("pc_fieldsplit_schur_fact_type")) {
    if (!schur) fail("-" + pre + "pc_fieldsplit_schur_fact_type: split type is not schur");
    if (*v != "full") fail("-" + pre + "pc_fieldsplit_schur_fact_type: only full is supported");
  }
  if (const auto* v = get("pc_fieldsplit_schur_precondition")) {
    if (!schur) fail("-" + pre + "pc_fieldsplit_schur_precondition: split type is not schur");
    if (*v != "selfp") fail("-" + pre + "pc_fieldsplit_schur_precondition: only selfp is supported");
  }

  if (node.fields.empty()) {
    for (int f = 0; f < n_fields; ++f) spec.groups.push_back({f});
  } else {
    int expect = 0;
    for (const auto& [idx, g] : node.fields) {
      if (idx != expect) fail("-" + pre + "pc_fieldsplit_" + std::to_string(expect) + "_fields is missing");
      spec.groups.push_back(g);
      ++expect;
    }
  }
  spec.validate(n_fields);
  for (std::size_t i = 0; i < spec.groups.size(); ++i) {
    Path child = path;
    child.push_back(static_cast<int>(i));
    spec.children.push_back(build(raw, child, static_cast<int>(spec.groups[i].size()), used));
  }
  return spec;
}

void describe(const PcSpec& s, std::ostream& os) {
  os << to_string(s.type);
  if (s.type != PcType::FieldSplit) return;
  os << '[' << to_string(s.split_type) << ':';
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    if (i) os << '|';
    os << '{';
    for (std::size_t j = 0; j < s.groups[i].size(); ++j) os << (j ? "," : "") << s.groups[i][j];
    os << '}';
  }
  os << "](";
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    if (i) os << ',';
    describe(s.children[i], os);
  }
  os << ')';
}

}  // namespace

std::string to_string(PcType t) {
  switch (t) {
    case PcType::None: return "none";
    case PcType::Ilu0: return "ilu0";
    case PcType::Amg: return "amg";
    case PcType::FieldSplit: return "fieldsplit";
  }
  return "?";
}

std::string to_string(SplitType t) { return t == SplitType::Additive ? "additive" : "schur"; }

void PcSpec::validate(int n_fields) const {
  if (type != PcType::FieldSplit) return;
  std::vector<int> seen(n_fields, 0);
  for (const auto& g : groups) {
    if (g.empty()) fail("empty field group");
    for (int f : g) {
      if (f < 0 || f >= n_fields)
        fail("field " + std::to_string(f) + " is outside 0.." + std::to_string(n_fields - 1));
      if (seen[f]++) fail("field " + std::to_string(f) + " appears in more than one group");
    }
  }
  for (int f = 0; f < n_fields; ++f)
    if (!seen[f]) fail("field groups do not partition the fields: field " + std::to_string(f) + " is not assigned");
  if (groups.size() < 2) fail("a fieldsplit needs at least two field groups");
  if (split_type == SplitType::SchurFull && groups.size() != 2) fail("a schur split needs exactly two field groups");
  if (!children.empty()) {
    if (children.size() != groups.size()) fail("fieldsplit child count does not match its groups");
    for (std::size_t i = 0; i < groups.size(); ++i) children[i].validate(static_cast<int>(groups[i].size()));
  }
}

std::string SolverConfig::describe() const {
  std::ostringstream os;
  os << ksp.type << '+';
  solver::describe(pc, os);
  return os.str();
}

SolverConfig parse_options(const std::vector<std::string>& tokens) {
  std::map<Path, RawNode> raw;
  SolverConfig cfg;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok.size() < 2 || tok[0] != '-') fail("expected an option, got '" + tok + "'");
    if (i + 1 >= tokens.size()) fail(tok + ": missing value");
    const std::string value = tokens[++i];
    std::string_view key = std::string_view(tok).substr(1);

    Path path;
    std::size_t pos = 0;
    while (key.substr(pos).rfind("fieldsplit_", 0) == 0) {
      std::size_t p = pos + 11;
      int idx = 0;
      if (!parse_index(key, p, idx) || p >= key.size() || key[p] != '_') break;
      path.push_back(idx);
      pos = p + 1;
    }
    const std::string rest(key.substr(pos));

    if (path.empty()) {
      if (rest == "ksp_type") {
        if (value != "gmres") fail(tok + ": only gmres is supported for the outer solver");
        cfg.ksp.type = value;
        continue;
      }
      if (rest == "ksp_rtol") {
        try {
          cfg.ksp.rtol = std::stod(value);
        } catch (const std::exception&) {
          fail(tok + ": bad number '" + value + "'");
        }
        if (!(cfg.ksp.rtol > 0.0 && cfg.ksp.rtol < 1.0)) fail(tok + ": rtol must lie in (0, 1)");
        continue;
      }
      if (rest == "ksp_gmres_restart" || rest == "ksp_max_it") {
        int v = 0;
        try {
          v = std::stoi(value);
        } catch (const std::exception&) {
          fail(tok + ": bad integer '" + value + "'");
        }
        if (v < 1) fail(tok + ": must be positive");
        (rest == "ksp_max_it" ? cfg.ksp.max_iterations : cfg.ksp.restart) = v;
        continue;
      }
    }

    RawNode& node = raw[path];
    if (rest == "ksp_type" || rest == "pc_type" || rest == "pc_fieldsplit_type" ||
        rest == "pc_fieldsplit_schur_fact_type" || rest == "pc_fieldsplit_schur_precondition") {
      if (!node.opts.emplace(rest, value).second) fail(tok + ": given more than once");
      continue;
    }
    if (rest.rfind("pc_fieldsplit_", 0) == 0 && rest.size() > 21 && rest.compare(rest.size() - 7, 7, "_fields") == 0) {
      std::size_t p = 14;
      int idx = 0;
      if (parse_index(rest, p, idx) && p == rest.size() - 7) {
        if (!node.fields.emplace(idx, parse_int_list(tok.substr(1), value)).second) fail(tok + ": given more than once");
        continue;
      }
    }
    fail("unsupported option " + tok);
  }

  std::vector<Path> used;
  cfg.pc = build(raw, {}, 4, used);
  for (const auto& [path, node] : raw) {
    if (std::find(used.begin(), used.end(), path) == used.end())
      fail("options given for -" + prefix_of(path) + "... but no such split exists");
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> tokenize_options(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool comment = false;
  for (char ch : text) {
    if (comment) {
      if (ch == '\n') comment = false;
      continue;
    }
    if (ch == '#') {
      comment = true;
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
      continue;
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> read_options_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open options file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return tokenize_options(ss.str());
}

std::string to_string(Method m) { return m == Method::ScaleSplit ? "scale" : "field"; }

Method parse_method(std::string_view s) {
  if (s == "scale" || s == "scale-split") return Method::ScaleSplit;
  if (s == "field" || s == "field-split") return Method::FieldSplit;
  fail("unknown method '" + std::string(s) + "' (expected scale or field)");
}

std::vector<std::string> method_options(Method m) {
  const char* scale = R"(
    -ksp_type gmres
    -pc_type fieldsplit
    -pc_fieldsplit_0_fields 0,1
    -pc_fieldsplit_1_fields 2,3
    -pc_fieldsplit_type additive
    -fieldsplit_0_ksp_type preonly
    -fieldsplit_0_pc_type fieldsplit
    -fieldsplit_0_pc_fieldsplit_type schur
    -fieldsplit_0_pc_fieldsplit_schur_fact_type full
    -fieldsplit_0_pc_fieldsplit_schur_precondition selfp
    -fieldsplit_0_fieldsplit_0_ksp_type preonly
    -fieldsplit_0_fieldsplit_0_pc_type bjacobi
    -fieldsplit_0_fieldsplit_1_ksp_type preonly
    -fieldsplit_0_fieldsplit_1_pc_type hypre
    -fieldsplit_1_ksp_type preonly
    -fieldsplit_1_pc_type fieldsplit
    -fieldsplit_1_pc_fieldsplit_type schur
    -fieldsplit_1_pc_fieldsplit_schur_fact_type full
    -fieldsplit_1_pc_fieldsplit_schur_precondition selfp
    -fieldsplit_1_fieldsplit_0_ksp_type preonly
    -fieldsplit_1_fieldsplit_0_pc_type bjacobi
    -fieldsplit_1_fieldsplit_1_ksp_type preonly
    -fieldsplit_1_fieldsplit_1_pc_type hypre
  )";
  const char* field = R"(
    -ksp_type gmres
    -pc_type fieldsplit
    -pc_fieldsplit_0_fields 0,2
    -pc_fieldsplit_1_fields 1,3
    -pc_fieldsplit_type schur
    -pc_fieldsplit_schur_fact_type full
    -pc_fieldsplit_schur_precondition selfp
    -fieldsplit_0_ksp_type preonly
    -fieldsplit_0_pc_type bjacobi
    -fieldsplit_1_ksp_type preonly
    -fieldsplit_1_pc_type fieldsplit
    -fieldsplit_1_pc_fieldsplit_type additive
    -fieldsplit_1_fieldsplit_0_ksp_type preonly
    -fieldsplit_1_fieldsplit_0_pc_type hypre
    -fieldsplit_1_fieldsplit_1_ksp_type preonly
    -fieldsplit_1_fieldsplit_1_pc_type hypre
  )";
  return tokenize_options(m == Method::ScaleSplit ? scale : field);
}

SolverConfig method_config(Method m, double rtol) {
  SolverConfig c = parse_options(method_options(m));
  c.ksp.rtol = rtol;
  return c;
}

}  // namespace dpp::solver
