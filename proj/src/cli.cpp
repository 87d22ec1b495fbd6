#include "rklab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "rklab/errors.hpp"
#include "rklab/report.hpp"

namespace rklab {

namespace {

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  RunSpec spec;
  std::string policy = "proportional";
  CLI::App app{"Adaptive Runge-Kutta integration with local extrapolation and per-step "
               "global error diagnostics",
               "rk-error-lab"};
  app.add_option("--problem", spec.problem, "built-in problem")->capture_default_str();
  app.add_option("--pair", spec.pair, "method pair")->capture_default_str();
  app.add_option("--delta", spec.delta, "absolute local error tolerance")
      ->capture_default_str();
  app.add_option("--sigma", spec.sigma, "safety factor in (0, 1]")->capture_default_str();
  app.add_option("--policy", policy, "proportional | reject-only")->capture_default_str();
  app.add_option("--h-init", spec.h_init, "initial stepsize (default: probe step)");
  app.add_option("--x-end", spec.x_end, "override the end of the interval");
  app.add_option("--max-steps", spec.max_steps, "cap on accepted steps");
  app.add_option("--csv", spec.csv_path, "per-step trace CSV");
  app.add_option("--json", spec.json_path, "JSON run summary");
  app.add_option("--figure1", spec.figure1_path, "x, |eps_lower|, |alpha_term| CSV");
  app.add_flag("--quiet", spec.quiet, "suppress the verdict line");
  app.add_flag("--allow-nonstandard-abscissae", spec.allow_nonstandard_abscissae,
               "skip the c = row-sum(a) tableau check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!(spec.delta > 0.0)) throw UsageError("--delta must be positive");
  if (!(spec.sigma > 0.0 && spec.sigma <= 1.0)) throw UsageError("--sigma must lie in (0, 1]");
  if (spec.h_init && !(*spec.h_init > 0.0)) throw UsageError("--h-init must be positive");
  if (spec.max_steps && *spec.max_steps < 1) throw UsageError("--max-steps must be >= 1");
  if (!contains(builtin_problem_names(), spec.problem))
    throw UnknownName("unknown problem '" + spec.problem + "'");
  if (!contains(builtin_pair_names(), spec.pair))
    throw UnknownName("unknown method pair '" + spec.pair + "'");
  spec.policy = parse_policy(policy);
  return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  Trace trace;
  try {
    const MethodPair pair =
        builtin_pair(spec.pair, ValidationOptions{spec.allow_nonstandard_abscissae});
    IVProblem problem = builtin_problem(spec.problem);
    if (spec.x_end) {
      problem.x_end = *spec.x_end;
      problem = validate_problem(std::move(problem));
    }
    ControllerConfig cfg;
    cfg.delta = spec.delta;
    cfg.sigma = spec.sigma;
    cfg.policy = spec.policy;
    cfg.h_init = spec.h_init;
    if (spec.max_steps) cfg.max_steps = *spec.max_steps;
    trace = integrate(pair, problem, cfg);
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnknownName;
  } catch (const UnknownProblem& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnknownName;
  } catch (const Error& e) {
    err << "integration failed: " << e.what() << '\n';
    return kExitIntegrator;
  }

  try {
    if (spec.csv_path) {
      auto file = open_output(*spec.csv_path);
      write_trace_csv(file, trace);
    }
    if (spec.json_path) {
      auto file = open_output(*spec.json_path);
      file << summary_json(trace).dump(2) << '\n';
      if (!file) throw IoError("failed writing '" + *spec.json_path + "'");
    }
    if (spec.figure1_path) {
      auto file = open_output(*spec.figure1_path);
      write_figure1_csv(file, trace);
    }
  } catch (const MissingDiagnostics& e) {
    err << "error: " << e.what() << '\n';
    return kExitIntegrator;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  if (!spec.quiet) {
    const TraceSummary& s = trace.summary;
    if (!s.final_delta_lower) {
      out << "global error unknown: problem '" << spec.problem << "' has no exact solution ("
          << s.accepted << " steps)\n";
    } else if (s.crossing) {
      out << "global error exceeded delta = " << format_double(spec.delta) << " at x = "
          << format_double(s.crossing->x) << " (step " << s.crossing->index << " of "
          << s.accepted << "); final |error|/delta = "
          << format_double(inf_norm(*s.final_delta_lower) / spec.delta) << '\n';
    } else {
      out << "global error stayed within delta = " << format_double(spec.delta) << " over "
          << s.accepted << " steps\n";
    }
  }
  return kExitOk;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    spec = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.text;
    return kExitOk;
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnknownName;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(spec, out, err);
}

}  // namespace rklab
