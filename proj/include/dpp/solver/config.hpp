#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dpp::solver {

enum class PcType { None, Ilu0, Amg, FieldSplit };
enum class SplitType { Additive, SchurFull };

std::string to_string(PcType t);
std::string to_string(SplitType t);

/// One node of the preconditioner tree.
///
/// For a fieldsplit node, `groups` lists the child field groups as indices
/// into this node's own field list (the root's fields are 0..3 in the order
/// u1, p1, u2, p2), and `children` holds one spec per group. Schur nodes use
/// the selfp approximation D - C diag(A)^{-1} B for the complement.
struct PcSpec {
  PcType type = PcType::None;
  std::string ksp_type = "preonly";
  SplitType split_type = SplitType::Additive;
  std::vector<std::vector<int>> groups;
  std::vector<PcSpec> children;

  /// Throws std::invalid_argument when groups do not partition 0..n_fields-1
  /// or a schur node does not have exactly two groups.
  void validate(int n_fields) const;
};

struct KspSpec {
  std::string type = "gmres";
  double rtol = 1e-7;
  int restart = 30;
  int max_iterations = 1000;
};

struct SolverConfig {
  KspSpec ksp;
  PcSpec pc;

  void validate() const { pc.validate(4); }
  /// Compact one-line description, e.g. "gmres+fieldsplit[schur:{0,2}|{1,3}](ilu0,fieldsplit[...])".
  std::string describe() const;
};

/// Parses PETSc-style option tokens ("-key", "value" pairs). Unknown keys,
/// missing values and options aimed at nonexistent splits throw
/// std::invalid_argument.
SolverConfig parse_options(const std::vector<std::string>& tokens);

/// Whitespace tokenization with '#' comments running to end of line.
std::vector<std::string> tokenize_options(std::string_view text);
std::vector<std::string> read_options_file(const std::string& path);

enum class Method { ScaleSplit, FieldSplit };
std::string to_string(Method m);
Method parse_method(std::string_view s);

/// Token sets of the two block preconditioners: groups {u1,p1}|{u2,p2}
/// (additive outer, schur-full per network) and {u1,u2}|{p1,p2} (schur-full
/// outer, additive over the pressures).
std::vector<std::string> method_options(Method m);
SolverConfig method_config(Method m, double rtol = 1e-7);

}  // namespace dpp::solver
