#include "splitfix/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>

#include "splitfix/gallery.hpp"
#include "splitfix/problem.hpp"
#include "splitfix/solvers.hpp"
#include "splitfix/verify.hpp"

namespace splitfix {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

LinearOperator operator_of(const ProblemSpec& p) {
  return p.A ? *p.A : LinearOperator::identity(p.Fs.front().dim());
}

void require_single(const ProblemSpec& p, const std::string& algorithm) {
  if (p.Fs.size() != 1 || p.Gs.size() != 1)
    throw ParameterError(algorithm + " takes exactly one F and one G map; numbered maps are for multi_operator");
}

StrongParams strong_params(const RunSpec& run, const LinearOperator& a) {
  StrongParams s = run.strong;
  if (run.lambda_auto) s.lambda_step = strong_step_lambda(a);
  return s;
}

std::vector<double> or_default(const std::vector<double>& given, std::size_t count, double fill) {
  return given.empty() ? std::vector<double>(count, fill) : given;
}

struct TimedRun {
  IterationTrace trace;
  double seconds = 0.0;
};

TimedRun timed_run(const ProblemSpec& problem, const RunSpec& run) {
  const auto start = std::chrono::steady_clock::now();
  TimedRun out{run_configured(problem, run), 0.0};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_csv_file(const IterationTrace& trace, const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write trace file '" + path + "'");
  write_trace_csv(trace, f);
  if (!f) throw Error("failed while writing trace file '" + path + "'");
}

std::string residual_text(const std::vector<double>& values, const char* side) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!out.empty()) out += " ";
    out += std::string("residual_") + side + (values.size() > 1 ? std::to_string(i + 1) : "") + "=" + g17(values[i]);
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

IterationTrace run_configured(const ProblemSpec& p, const RunSpec& run) {
  const LinearOperator a = operator_of(p);

  if (run.algorithm == "moudafi" || run.algorithm == "averaged_weak") {
    require_single(p, run.algorithm);
    SplitProblem problem(p.Fs[0], p.Gs[0], a, p.D, p.reference);
    WeakParams w = run.weak;
    if (run.gamma_auto) w.gamma = weak_step_gamma(a, w.mu);
    return run.algorithm == "moudafi" ? moudafi_solve(problem, w, p.u0) : averaged_weak_solve(problem, w, p.u0);
  }
  if (run.algorithm == "hybrid_strong") {
    require_single(p, run.algorithm);
    SplitProblem problem(p.Fs[0], p.Gs[0], a, p.D, p.reference);
    return hybrid_strong_solve(problem, strong_params(run, a), p.u0);
  }
  if (run.algorithm == "common_fixed_point") {
    require_single(p, run.algorithm);
    if (p.A) throw ParameterError("common_fixed_point uses A = identity; remove A from the problem");
    return common_fixed_point_solve(p.Fs[0], p.Gs[0], p.D, strong_params(run, a), p.u0, p.reference);
  }
  if (run.algorithm == "multi_operator") {
    MultiOperatorSpec spec;
    spec.Fs = p.Fs;
    spec.Gs = p.Gs;
    spec.weights_c = or_default(run.weights_c, p.Fs.size(), 1.0 / static_cast<double>(p.Fs.size()));
    spec.weights_d = or_default(run.weights_d, p.Gs.size(), 1.0 / static_cast<double>(p.Gs.size()));
    spec.inner_thetas = or_default(run.thetas, p.Fs.size(), 0.5);
    spec.inner_phis = or_default(run.phis, p.Gs.size(), 0.5);
    return multi_operator_solve(spec, a, p.D, strong_params(run, a), p.u0, p.reference);
  }
  throw ParameterError("unknown algorithm '" + run.algorithm + "'");
}

FinalResiduals final_residuals(const ProblemSpec& p, const Vector& u) {
  FinalResiduals r;
  const LinearOperator a = operator_of(p);
  const Vector au = a.apply(u);
  for (const auto& f : p.Fs) r.F.push_back(f.residual(u));
  for (const auto& g : p.Gs) r.G.push_back(g.residual(au));
  return r;
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  out << "iter,residual_F,residual_G,dist_to_ref,dist_u0,fejer_ok\n";
  for (const auto& r : trace.records) {
    out << r.p << ',' << g17(r.residual_F) << ',' << g17(r.residual_G) << ','
        << (r.dist_to_ref ? g17(*r.dist_to_ref) : "") << ',' << (r.dist_u0 ? g17(*r.dist_u0) : "") << ','
        << (r.fejer_ok ? (*r.fejer_ok ? "true" : "false") : "") << '\n';
  }
}

int cmd_solve(const std::string& problem_file, const std::string& run_file, const CliOptions& options,
              std::ostream& out, std::ostream& err) {
  try {
    const ProblemSpec problem = load_problem(ConfigFile::load(problem_file), options.seed);
    const RunSpec run = load_run(ConfigFile::load(run_file), options.overrides);
    const TimedRun result = timed_run(problem, run);
    const std::string path = run.out.value_or("trace.csv");
    write_csv_file(result.trace, path);

    const FinalResiduals res = final_residuals(problem, result.trace.solution);
    out << "algorithm=" << run.algorithm << " status=" << (result.trace.converged() ? "converged" : "max_iters")
        << " iterations=" << result.trace.iterations() << " wall_time_s=" << short_g(result.seconds) << '\n'
        << "solution=" << to_string(result.trace.solution) << '\n'
        << residual_text(res.F, "F") << ' ' << residual_text(res.G, "G") << '\n'
        << "trace=" << path << '\n';
    return result.trace.converged() ? kExitConverged : kExitMaxIters;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_compare(const std::string& problem_file, const std::vector<std::string>& run_files, const CliOptions& options,
                std::ostream& out, std::ostream& err) {
  if (run_files.empty()) {
    err << "error: compare needs at least one run file\n";
    return kExitError;
  }
  ProblemSpec problem;
  try {
    problem = load_problem(ConfigFile::load(problem_file), options.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  struct Row {
    std::string algorithm;
    TimedRun result;
    FinalResiduals residuals;
    std::optional<std::string> csv;
  };
  std::vector<std::future<Row>> jobs;
  for (const auto& file : run_files) {
    jobs.push_back(std::async(std::launch::async, [&problem, &options, file] {
      RunOverrides overrides = options.overrides;
      overrides.out.reset();
      RunSpec run = load_run(ConfigFile::load(file), overrides);
      if (options.overrides.out)
        run.out = (std::filesystem::path(*options.overrides.out) / std::filesystem::path(file).stem()).string() + ".csv";
      Row row{run.algorithm, timed_run(problem, run), {}, run.out};
      row.residuals = final_residuals(problem, row.result.trace.solution);
      if (row.csv) write_csv_file(row.result.trace, *row.csv);
      return row;
    }));
  }

  char line[256];
  std::snprintf(line, sizeof line, "%-28s %-20s %-10s %10s %14s %14s %12s\n", "run", "algorithm", "status", "iterations",
                "residual_F", "residual_G", "wall_time_s");
  out << line;
  bool any_error = false, any_unconverged = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string name = std::filesystem::path(run_files[i]).filename().string();
    try {
      const Row row = jobs[i].get();
      const bool ok = row.result.trace.converged();
      any_unconverged = any_unconverged || !ok;
      std::snprintf(line, sizeof line, "%-28s %-20s %-10s %10d %14s %14s %12s\n", name.c_str(), row.algorithm.c_str(),
                    ok ? "converged" : "max_iters", row.result.trace.iterations(),
                    short_g(max_of(row.residuals.F)).c_str(), short_g(max_of(row.residuals.G)).c_str(),
                    short_g(row.result.seconds).c_str());
      out << line;
    } catch (const std::exception& e) {
      any_error = true;
      out << "error: " << name << ": " << e.what() << '\n';
    }
  }
  if (any_error) return kExitError;
  return any_unconverged ? kExitMaxIters : kExitConverged;
}

std::string verify_usage() {
  std::string ids;
  for (const auto& id : gallery_ids()) ids += (ids.empty() ? "" : ", ") + id;
  return "usage: splitfix verify [--scope SCOPE]\n"
         "  SCOPE is one of:\n"
         "    lemmas      averaging, fixed-point, inequality and projection-engine checks\n"
         "    map:<id>    class checks for one gallery map (" + ids + ")\n"
         "    all         lemmas plus every gallery map\n";
}

int cmd_verify(const std::string& scope, std::ostream& out, std::ostream& err) {
  try {
    const auto items = verify_scope(scope);
    if (!items) {
      err << "error: unknown scope '" << scope << "'\n" << verify_usage();
      return kExitError;
    }
    bool all_expected = true;
    for (const auto& item : *items) {
      out << format_item(item) << '\n';
      all_expected = all_expected && item.as_expected();
    }
    return all_expected ? kExitConverged : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace splitfix
