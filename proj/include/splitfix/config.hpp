#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "splitfix/convex_set.hpp"
#include "splitfix/error.hpp"
#include "splitfix/fixed_point_map.hpp"
#include "splitfix/linear_operator.hpp"
#include "splitfix/solvers.hpp"

namespace splitfix {

/// Malformed or rejected configuration. what() starts with "file:line:".
class ParseError : public Error {
public:
  ParseError(const std::string& file, int line, const std::string& field, const std::string& message);
  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

private:
  std::string file_;
  int line_;
  std::string field_;
};

/// Flat key = value file. Values are numbers (a/b fractions allowed), bare
/// words, bracketed lists [1, 2] or lists of lists [[1, 2], [3, 4]]. A list
/// may continue over several lines until its brackets balance; '#' starts a
/// comment.
///
/// Every key must be consumed by one of the typed getters; reject_unused()
/// then reports the first one that was not.
class ConfigFile {
public:
  using Number = double;
  using Word = std::string;
  using List = std::vector<double>;
  using Rows = std::vector<std::vector<double>>;
  using Value = std::variant<Number, Word, List, Rows>;

  struct Entry {
    Value value;
    int line;
  };

  static ConfigFile parse(const std::string& text, const std::string& file = "<config>");
  static ConfigFile load(const std::string& path);

  const std::string& file() const noexcept { return file_; }
  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  /// Keys in file order.
  const std::vector<std::string>& keys() const noexcept { return order_; }

  std::optional<double> number(const std::string& key) const;
  std::optional<std::string> word(const std::string& key) const;
  std::optional<Vector> vector(const std::string& key) const;
  std::optional<Matrix> matrix(const std::string& key) const;
  std::optional<std::int64_t> integer(const std::string& key) const;
  /// Accepts a number or a word; the caller interprets the word.
  std::optional<Value> raw(const std::string& key) const;

  /// Error located at the key's line.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  void reject_unused() const;

private:
  const Entry& entry(const std::string& key) const;

  std::string file_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  mutable std::set<std::string> used_;
};

/// The problem half of a configuration: one or more maps on each side, the
/// operator, the domain and the starting point.
struct ProblemSpec {
  std::vector<FixedPointMap> Fs;  // F, or F1, F2, ...
  std::vector<FixedPointMap> Gs;  // G, or G1, G2, ...
  std::optional<LinearOperator> A;  // identity on dim(F) when absent
  ConvexSet D = ConvexSet::whole_space(1);
  std::optional<Vector> reference;
  Vector u0;
  std::uint64_t seed = 0;
};

/// Reads F*, G*, A, D, reference, u0 and seed. `seed_override` replaces the
/// file's seed (it drives u0 = random and A = random without an A.seed).
ProblemSpec load_problem(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override = std::nullopt);

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"moudafi", "averaged_weak", "hybrid_strong", "multi_operator",
                                                 "common_fixed_point"};
  return names;
}

struct RunSpec {
  std::string algorithm;
  WeakParams weak;
  StrongParams strong;
  bool gamma_auto = true;   // gamma = 0.9 / (lambda mu)
  bool lambda_auto = true;  // lambda = 0.9 / ||A*||^2
  std::vector<double> weights_c, weights_d, thetas, phis;
  std::optional<std::string> out;
};

/// Flags given on the command line; each replaces the run file's value.
struct RunOverrides {
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::optional<std::string> out;
};

RunSpec load_run(const ConfigFile& cfg, const RunOverrides& overrides = {});

}  // namespace splitfix
