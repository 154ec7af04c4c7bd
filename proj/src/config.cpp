#include "splitfix/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "splitfix/gallery.hpp"
#include "splitfix/random.hpp"

namespace splitfix {

ParseError::ParseError(const std::string& file, int line, const std::string& field, const std::string& message)
    : Error(file + ":" + std::to_string(line) + ": " + (field.empty() ? "" : "field '" + field + "': ") + message),
      file_(file), line_(line), field_(field) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_plain_number(const std::string& s) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

// A decimal literal or a fraction p/q of two literals.
std::optional<double> parse_number(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain_number(s);
  auto num = parse_plain_number(s.substr(0, slash));
  auto den = parse_plain_number(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

bool looks_numeric(const std::string& token) {
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  if (digit(token[0])) return true;
  return token.size() > 1 && (token[0] == '-' || token[0] == '+' || token[0] == '.') && (digit(token[1]) || token[1] == '.');
}

class ValueParser {
public:
  ValueParser(const std::string& text, const std::string& file, int line, const std::string& key)
      : text_(text), file_(file), line_(line), key_(key) {}

  ConfigFile::Value parse() {
    skip_space();
    if (pos_ == text_.size()) fail("missing value");
    ConfigFile::Value out;
    if (text_[pos_] == '[') {
      out = parse_bracketed();
    } else {
      std::string token = text_.substr(pos_);
      pos_ = text_.size();
      if (token.find_first_of(" \t") != std::string::npos) fail("unexpected whitespace in '" + token + "'");
      if (auto n = parse_number(token))
        out = *n;
      else if (looks_numeric(token))
        fail("malformed number '" + token + "'");
      else
        out = token;
    }
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters '" + text_.substr(pos_) + "'");
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(file_, line_, key_, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  double parse_element() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string token = text_.substr(start, pos_ - start);
    auto n = parse_number(token);
    if (!n) fail("list element '" + token + "' is not a number");
    return *n;
  }

  std::vector<double> parse_numbers() {
    std::vector<double> out;
    expect('[');
    if (peek(']')) {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(parse_element());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }

  ConfigFile::Value parse_bracketed() {
    const std::size_t save = pos_;
    expect('[');
    const bool nested = peek('[');
    pos_ = save;
    if (!nested) return parse_numbers();
    ConfigFile::Rows rows;
    expect('[');
    while (true) {
      rows.push_back(parse_numbers());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return rows;
    }
  }

  const std::string& text_;
  const std::string& file_;
  int line_;
  const std::string& key_;
  std::size_t pos_ = 0;
};

int bracket_depth(const std::string& s) {
  int depth = 0;
  for (char c : s) depth += (c == '[') - (c == ']');
  return depth;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& file) {
  static const std::regex key_pattern("[A-Za-z_][A-Za-z0-9_]*(\\.[A-Za-z_][A-Za-z0-9_]*)?");
  ConfigFile cfg;
  cfg.file_ = file;

  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = trim(raw_line.substr(0, raw_line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(file, line_no, "", "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (!std::regex_match(key, key_pattern)) throw ParseError(file, line_no, key, "malformed key");
    if (cfg.entries_.count(key))
      throw ParseError(file, line_no, key, "duplicate key (first set on line " + std::to_string(cfg.entries_[key].line) + ")");

    const int start_line = line_no;
    std::string value = trim(line.substr(eq + 1));
    while (bracket_depth(value) > 0 && std::getline(in, raw_line)) {
      ++line_no;
      value += " " + trim(raw_line.substr(0, raw_line.find('#')));
    }
    if (bracket_depth(value) != 0) throw ParseError(file, start_line, key, "unbalanced brackets");

    cfg.entries_[key] = Entry{ValueParser(value, file, start_line, key).parse(), start_line};
    cfg.order_.push_back(key);
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "", "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& key) const {
  used_.insert(key);
  return entries_.at(key);
}

void ConfigFile::fail(const std::string& key, const std::string& message) const {
  auto it = entries_.find(key);
  throw ParseError(file_, it == entries_.end() ? 0 : it->second.line, key, message);
}

std::optional<ConfigFile::Value> ConfigFile::raw(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return entry(key).value;
}

std::optional<double> ConfigFile::number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto* n = std::get_if<Number>(&entry(key).value);
  if (!n) fail(key, "expected a number");
  return *n;
}

std::optional<std::int64_t> ConfigFile::integer(const std::string& key) const {
  auto n = number(key);
  if (!n) return std::nullopt;
  if (*n != std::floor(*n) || std::abs(*n) > 9.0e15) fail(key, "expected an integer");
  return static_cast<std::int64_t>(*n);
}

std::optional<std::string> ConfigFile::word(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto* w = std::get_if<Word>(&entry(key).value);
  if (!w) fail(key, "expected a word");
  return *w;
}

std::optional<Vector> ConfigFile::vector(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const Value& v = entry(key).value;
  if (const auto* n = std::get_if<Number>(&v)) return Vector{*n};
  const auto* list = std::get_if<List>(&v);
  if (!list) fail(key, "expected a list of numbers such as [1, 2]");
  if (list->empty()) fail(key, "empty list");
  return Vector(*list);
}

std::optional<Matrix> ConfigFile::matrix(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto* rows = std::get_if<Rows>(&entry(key).value);
  if (!rows) fail(key, "expected a list of rows such as [[1, 0], [0, 1]]");
  try {
    return Matrix(*rows);
  } catch (const Error& e) {
    fail(key, e.what());
  }
}

void ConfigFile::reject_unused() const {
  for (const auto& key : order_)
    if (!used_.count(key)) fail(key, "unknown key");
}

namespace {

// Wraps library validation errors so they carry the key's location.
template <class Fn>
auto located(const ConfigFile& cfg, const std::string& key, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    cfg.fail(key, e.what());
  }
}

Vector required_vector(const ConfigFile& cfg, const std::string& key, const std::string& owner) {
  auto v = cfg.vector(key);
  if (!v) cfg.fail(owner, "missing '" + key + "'");
  return *v;
}

double required_number(const ConfigFile& cfg, const std::string& key, const std::string& owner) {
  auto v = cfg.number(key);
  if (!v) cfg.fail(owner, "missing '" + key + "'");
  return *v;
}

ConvexSet make_set(const ConfigFile& cfg, const std::string& prefix, const std::string& kind) {
  const std::string p = prefix + ".";
  return located(cfg, prefix, [&]() -> ConvexSet {
    if (kind == "box") return ConvexSet::box(required_vector(cfg, p + "lower", prefix), required_vector(cfg, p + "upper", prefix));
    if (kind == "ball") return ConvexSet::ball(required_vector(cfg, p + "center", prefix), required_number(cfg, p + "radius", prefix));
    if (kind == "halfspace")
      return ConvexSet::halfspace(required_vector(cfg, p + "normal", prefix), required_number(cfg, p + "offset", prefix));
    if (kind == "affine") {
      auto m = cfg.matrix(p + "matrix");
      if (!m) cfg.fail(prefix, "missing '" + p + "matrix'");
      return ConvexSet::affine(*m, required_vector(cfg, p + "rhs", prefix));
    }
    cfg.fail(prefix, "unknown set kind '" + kind + "'");
  });
}

FixedPointMap make_map(const ConfigFile& cfg, const std::string& prefix) {
  const auto kind = cfg.word(prefix);
  if (!kind) cfg.fail(prefix, "expected a map name");
  const std::string p = prefix + ".";
  auto any_of = [&](std::initializer_list<const char*> suffixes) {
    return std::any_of(suffixes.begin(), suffixes.end(), [&](const char* s) { return cfg.has(p + s); });
  };

  if (*kind == "identity") {
    auto dim = cfg.integer(p + "dim");
    if (!dim || *dim < 1) cfg.fail(prefix, "identity needs '" + p + "dim' >= 1");
    return identity_map(static_cast<std::size_t>(*dim));
  }
  if (*kind == "example1") return example1_map();
  if (*kind == "proj_box") {
    if (!any_of({"lower", "upper"})) return gallery_entry("proj_box").map;
    return projection_as_map(make_set(cfg, prefix, "box"));
  }
  if (*kind == "proj_ball") {
    if (!any_of({"center", "radius"})) return gallery_entry("proj_ball").map;
    return projection_as_map(make_set(cfg, prefix, "ball"));
  }
  if (*kind == "proj_halfspace") {
    if (!any_of({"normal", "offset"})) return gallery_entry("proj_halfspace").map;
    return projection_as_map(make_set(cfg, prefix, "halfspace"));
  }
  if (*kind == "proj_affine") return projection_as_map(make_set(cfg, prefix, "affine"));
  if (*kind == "affine") {
    if (!any_of({"matrix", "center", "beta"})) return gallery_entry("affine").map;
    auto m = cfg.matrix(p + "matrix");
    if (!m) cfg.fail(prefix, "missing '" + p + "matrix'");
    const Vector center = required_vector(cfg, p + "center", prefix);
    const double beta = required_number(cfg, p + "beta", prefix);
    return located(cfg, prefix, [&] { return affine_map(*m, center, beta); });
  }
  cfg.fail(prefix, "unknown map '" + *kind +
                       "' (expected identity, example1, proj_box, proj_ball, proj_halfspace, proj_affine or affine)");
}

// F, or F1..Fk without gaps.
std::vector<FixedPointMap> make_side(const ConfigFile& cfg, const std::string& side) {
  const std::regex numbered(side + "([0-9]+)");
  std::vector<int> indices;
  for (const auto& key : cfg.keys()) {
    std::smatch m;
    if (std::regex_match(key, m, numbered)) indices.push_back(std::stoi(m[1]));
  }
  std::sort(indices.begin(), indices.end());
  if (cfg.has(side) && !indices.empty()) cfg.fail(side, "use either '" + side + "' or '" + side + "1', '" + side + "2', ...");
  if (cfg.has(side)) return {make_map(cfg, side)};
  if (indices.empty()) throw ParseError(cfg.file(), 0, side, "missing map '" + side + "'");
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] != static_cast<int>(i) + 1)
      cfg.fail(side + std::to_string(indices[i]), "numbered maps must run " + side + "1, " + side + "2, ... without gaps");
  std::vector<FixedPointMap> out;
  for (int i : indices) out.push_back(make_map(cfg, side + std::to_string(i)));
  return out;
}

void require_dim(const ConfigFile& cfg, const std::string& key, std::size_t expected, std::size_t actual) {
  if (expected != actual)
    cfg.fail(key, "dimension " + std::to_string(actual) + " does not match the problem dimension " + std::to_string(expected));
}

}  // namespace

ProblemSpec load_problem(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override) {
  ProblemSpec spec;
  if (auto s = cfg.integer("seed")) {
    if (*s < 0) cfg.fail("seed", "seed must be >= 0");
    spec.seed = static_cast<std::uint64_t>(*s);
  }
  if (seed_override) spec.seed = *seed_override;

  spec.Fs = make_side(cfg, "F");
  spec.Gs = make_side(cfg, "G");
  const std::string f_key = spec.Fs.size() == 1 && cfg.has("F") ? "F" : "F1";
  const std::string g_key = spec.Gs.size() == 1 && cfg.has("G") ? "G" : "G1";
  const std::size_t n = spec.Fs.front().dim();
  const std::size_t m = spec.Gs.front().dim();
  for (std::size_t i = 1; i < spec.Fs.size(); ++i) require_dim(cfg, "F" + std::to_string(i + 1), n, spec.Fs[i].dim());
  for (std::size_t i = 1; i < spec.Gs.size(); ++i) require_dim(cfg, "G" + std::to_string(i + 1), m, spec.Gs[i].dim());

  if (auto a = cfg.raw("A")) {
    if (std::holds_alternative<ConfigFile::Rows>(*a)) {
      spec.A = located(cfg, "A", [&] { return LinearOperator(*cfg.matrix("A")); });
    } else if (const auto* w = std::get_if<ConfigFile::Word>(&*a); w && *w == "identity") {
      spec.A = LinearOperator::identity(n);
    } else if (w && *w == "random") {
      auto rows = cfg.integer("A.rows");
      auto cols = cfg.integer("A.cols");
      if (!rows || !cols || *rows < 1 || *cols < 1) cfg.fail("A", "random A needs positive 'A.rows' and 'A.cols'");
      auto seed = cfg.integer("A.seed");
      if (seed && *seed < 0) cfg.fail("A.seed", "seed must be >= 0");
      const double lo = cfg.number("A.lo").value_or(-1.0);
      const double hi = cfg.number("A.hi").value_or(1.0);
      if (!(lo < hi)) cfg.fail("A", "need A.lo < A.hi");
      spec.A = LinearOperator(random_matrix(static_cast<std::size_t>(*rows), static_cast<std::size_t>(*cols),
                                            seed ? static_cast<std::uint64_t>(*seed) : spec.seed, lo, hi));
    } else {
      cfg.fail("A", "expected rows [[...], ...], 'identity' or 'random'");
    }
    if (spec.A->dim_in() != n)
      cfg.fail("A", "A has " + std::to_string(spec.A->dim_in()) + " columns but " + f_key + " acts on dimension " +
                        std::to_string(n));
    if (spec.A->dim_out() != m)
      cfg.fail("A", "A has " + std::to_string(spec.A->dim_out()) + " rows but " + g_key + " acts on dimension " +
                        std::to_string(m));
  } else if (n != m) {
    cfg.fail(g_key, "F and G act on different dimensions, so A must be given");
  }

  spec.D = ConvexSet::whole_space(n);
  if (auto d = cfg.word("D")) {
    if (*d != "whole_space") spec.D = make_set(cfg, "D", *d);
    require_dim(cfg, "D", n, spec.D.dim());
  }

  if (auto ref = cfg.vector("reference")) {
    require_dim(cfg, "reference", n, ref->dim());
    spec.reference = std::move(*ref);
  }

  auto u0 = cfg.raw("u0");
  if (!u0) throw ParseError(cfg.file(), 0, "u0", "missing initial point 'u0'");
  if (const auto* w = std::get_if<ConfigFile::Word>(&*u0)) {
    if (*w != "random") cfg.fail("u0", "expected a vector or 'random'");
    const double lo = cfg.number("u0.lo").value_or(-1.0);
    const double hi = cfg.number("u0.hi").value_or(1.0);
    if (!(lo < hi)) cfg.fail("u0", "need u0.lo < u0.hi");
    auto seed = cfg.integer("u0.seed");
    if (seed && *seed < 0) cfg.fail("u0.seed", "seed must be >= 0");
    Rng rng(seed ? static_cast<std::uint64_t>(*seed) : spec.seed);
    spec.u0 = spec.D.project(rng.uniform_vector(n, lo, hi));
  } else {
    spec.u0 = *cfg.vector("u0");
    require_dim(cfg, "u0", n, spec.u0.dim());
  }

  cfg.reject_unused();
  return spec;
}

namespace {

const std::set<std::string>& keys_for(const std::string& algorithm) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"moudafi", {"gamma", "mu", "alpha", "delta"}},
      {"averaged_weak", {"gamma", "mu", "alpha", "delta", "form", "a", "b"}},
      {"hybrid_strong", {"lambda", "eta", "t", "dykstra_tol", "dykstra_max_sweeps", "cut_cap", "a", "b"}},
      {"common_fixed_point", {"lambda", "eta", "t", "dykstra_tol", "dykstra_max_sweeps", "cut_cap", "a", "b"}},
      {"multi_operator",
       {"lambda", "eta", "t", "dykstra_tol", "dykstra_max_sweeps", "cut_cap", "a", "b", "weights_c", "weights_d",
        "thetas", "phis"}},
  };
  return table.at(algorithm);
}

std::vector<double> list_or_empty(const ConfigFile& cfg, const std::string& key) {
  auto v = cfg.vector(key);
  return v ? v->data() : std::vector<double>{};
}

int positive_int(const ConfigFile& cfg, const std::string& key, int fallback) {
  auto v = cfg.integer(key);
  if (!v) return fallback;
  if (*v < 1 || *v > 2147483647) cfg.fail(key, "expected an integer in [1, 2^31)");
  return static_cast<int>(*v);
}

}  // namespace

RunSpec load_run(const ConfigFile& cfg, const RunOverrides& overrides) {
  RunSpec run;
  auto algorithm = cfg.word("algorithm");
  if (!algorithm) throw ParseError(cfg.file(), 0, "algorithm", "missing 'algorithm'");
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), *algorithm) == names.end())
    cfg.fail("algorithm", "unknown algorithm '" + *algorithm +
                              "' (expected moudafi, averaged_weak, hybrid_strong, multi_operator or common_fixed_point)");
  run.algorithm = *algorithm;

  static const std::set<std::string> common = {"algorithm", "tol", "max_iters", "out"};
  const auto& allowed = keys_for(run.algorithm);
  for (const auto& key : cfg.keys())
    if (!common.count(key) && !allowed.count(key)) {
      bool known = false;
      for (const auto& name : names) known = known || keys_for(name).count(key);
      cfg.fail(key, known ? "does not apply to algorithm " + run.algorithm : "unknown key");
    }

  auto auto_or_number = [&](const std::string& key, bool& is_auto, double& value) {
    auto v = cfg.raw(key);
    if (!v) return;
    if (const auto* w = std::get_if<ConfigFile::Word>(&*v)) {
      if (*w != "auto") cfg.fail(key, "expected a number or 'auto'");
      return;
    }
    is_auto = false;
    value = *cfg.number(key);
  };

  WeakParams& w = run.weak;
  StrongParams& s = run.strong;
  auto_or_number("gamma", run.gamma_auto, w.gamma);
  auto_or_number("lambda", run.lambda_auto, s.lambda_step);
  w.mu = cfg.number("mu").value_or(w.mu);
  w.delta = cfg.number("delta").value_or(w.delta);
  if (auto alpha = cfg.number("alpha")) w.alpha_schedule = constant_schedule(*alpha);
  if (auto form = cfg.word("form")) {
    if (*form == "averaged")
      w.form = UpdateForm::averaged;
    else if (*form == "substituted")
      w.form = UpdateForm::substituted;
    else
      cfg.fail("form", "expected 'averaged' or 'substituted'");
  }
  w.a = s.a = cfg.number("a").value_or(0.5);
  w.b = s.b = cfg.number("b").value_or(0.5);
  s.eta = cfg.number("eta").value_or(s.eta);
  if (auto t = cfg.number("t")) s.t_schedule = constant_schedule(*t);
  s.dykstra_tol = cfg.number("dykstra_tol").value_or(s.dykstra_tol);
  s.dykstra_max_sweeps = positive_int(cfg, "dykstra_max_sweeps", s.dykstra_max_sweeps);
  if (auto cap = cfg.integer("cut_cap")) {
    if (*cap < 0) cfg.fail("cut_cap", "expected an integer >= 0");
    s.cut_cap = static_cast<std::size_t>(*cap);
  }
  const double tol = cfg.number("tol").value_or(1e-8);
  w.tol = s.tol = overrides.tol.value_or(tol);
  const int max_iters = positive_int(cfg, "max_iters", 100000);
  w.max_iters = s.max_iters = overrides.max_iters.value_or(max_iters);

  run.weights_c = list_or_empty(cfg, "weights_c");
  run.weights_d = list_or_empty(cfg, "weights_d");
  run.thetas = list_or_empty(cfg, "thetas");
  run.phis = list_or_empty(cfg, "phis");

  if (auto out = cfg.word("out")) run.out = *out;
  if (overrides.out) run.out = overrides.out;

  cfg.reject_unused();
  return run;
}

}  // namespace splitfix
