// asurprise: evaluate resolution schemes, run sweeps and write figure data.
//
// Exit codes: 0 ok, 1 I/O failure, 2 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surprise/surprise.hpp"

namespace {

using namespace surprise;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

struct ModelFlags {
  double k = 3.0;
  double alpha = 1.6;
  double k1 = 2.0;
  double k2 = 2.0;
  std::string modulation = "hyperbolic";
  std::string scaling = "none";

  void attach(CLI::App* app) {
    app->add_option("--k", k, "weight on negative expectation errors (> 1)");
    app->add_option("--alpha", alpha, "kernel convexity exponent (> 1)");
    app->add_option("--k1", k1, "positive-surprise gain");
    app->add_option("--k2", k2, "negative-surprise gain");
    app->add_option("--modulation", modulation, "hyperbolic | exponential");
    app->add_option("--scaling", scaling, "none | full | partial:<gamma> | scale:<s>");
  }

  void apply(SchemeRequest& req) const {
    req.params = ModelParams{k, alpha, k1, k2, parse_modulation(modulation)};
    req.scaling = parse_scaling(scaling);
  }
};

struct SchemeFlags {
  std::string scheme;
  double hi = 1.0, lo = 0.0, p = 0.03, n = 4.0;
  double p_tr = 0.5, k_tr = 10.0, p_pr = 0.7, k2_prob = 2.0;

  void attach(CLI::App* app) {
    app->add_option("--scheme", scheme,
                    "gamble | hazard | timing | dual-a-after | dual-a-before | dual-b | "
                    "tree:<path>")
        ->required();
    app->add_option("--hi", hi, "gamble: winning payoff");
    app->add_option("--lo", lo, "gamble: losing payoff");
    app->add_option("--p", p, "gamble win probability, or per-step hazard");
    app->add_option("--n", n, "number of hazard steps");
    app->add_option("--p-tr", p_tr, "timing: probability of the early reward");
    app->add_option("--k-tr", k_tr, "timing: weight on the timing surprise");
    app->add_option("--p-pr", p_pr, "dual: explicit success probability");
    app->add_option("--k2-prob", k2_prob, "dual: k2 used for the gamble-only utility");
  }

  SchemeRequest request(const ModelFlags& model) const {
    SchemeRequest req;
    req.kind = parse_scheme(scheme, &req.tree_path);
    req.hi = hi;
    req.lo = lo;
    req.p = p;
    req.n = n;
    req.p_tr = p_tr;
    req.k_tr = k_tr;
    req.p_pr = p_pr;
    req.k2_prob = k2_prob;
    model.apply(req);
    return req;
  }
};

int emit(const Table& table, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, table);
    std::cout.flush();
    return std::cout ? kExitOk : kExitIo;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitIo;
  }
  write_csv(out, table);
  out.close();
  if (!out) {
    std::cerr << "error: write failed for " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anticipated-surprise evaluation of risky and delayed options"};
  app.require_subcommand(1);

  ModelFlags eval_model;
  SchemeFlags eval_scheme;
  auto* eval = app.add_subcommand("eval", "evaluate one scheme and print a CSV row");
  eval_scheme.attach(eval);
  eval_model.attach(eval);

  std::string figure_id;
  std::string figure_out;
  FigureOverrides overrides;
  std::string figure_modulation;
  auto* figure = app.add_subcommand("figure", "write the data behind a figure as CSV");
  figure->add_option("id", figure_id,
                     "fig1 | fig3-left | fig3-right | fig5-left | fig5-right | fig7 | "
                     "figA1 | figA2 | figA3")
      ->required();
  figure->add_option("-o,--out", figure_out, "output file (default: stdout)");
  figure->add_option("--k", overrides.k);
  figure->add_option("--alpha", overrides.alpha);
  figure->add_option("--k1", overrides.k1);
  figure->add_option("--k2", overrides.k2);
  figure->add_option("--p", overrides.p);
  figure->add_option("--n", overrides.n);
  figure->add_option("--k2-prob", overrides.k2_prob);
  figure->add_option("--k-exp", overrides.k_exp, "exponential reference rate");
  figure->add_option("--k-hypo", overrides.k_hypo, "hyperbolic reference rate");
  figure->add_option("--modulation", figure_modulation);

  ModelFlags sweep_model;
  SchemeFlags sweep_scheme;
  std::string sweep_target;
  std::optional<double> sweep_start, sweep_stop;
  int sweep_count = 0;
  std::vector<double> sweep_values;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "evaluate a scheme over a parameter grid");
  sweep_scheme.attach(sweep);
  sweep_model.attach(sweep);
  sweep->add_option("--target", sweep_target, "p | n | p_tr | p_pr | K_tr")->required();
  sweep->add_option("--start", sweep_start);
  sweep->add_option("--stop", sweep_stop);
  sweep->add_option("--count", sweep_count);
  sweep->add_option("--values", sweep_values, "explicit grid")->delimiter(',');
  sweep->add_option("-o,--out", sweep_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*eval) {
      return emit(eval_table(eval_scheme.request(eval_model)), "");
    }
    if (*figure) {
      if (!figure_modulation.empty()) overrides.modulation = parse_modulation(figure_modulation);
      return emit(make_figure(parse_figure(figure_id), overrides), figure_out);
    }
    if (*sweep) {
      SweepSpec spec;
      spec.target = parse_sweep_target(sweep_target);
      spec.fixed = sweep_scheme.request(sweep_model);
      if (!sweep_values.empty()) {
        if (sweep_start || sweep_stop || sweep_count) {
          throw ValidationError("use either --values or --start/--stop/--count");
        }
        spec.grid = sweep_values;
      } else {
        if (!sweep_start || !sweep_stop) {
          throw ValidationError("sweep needs --values or --start, --stop and --count");
        }
        spec.grid = linear_grid(*sweep_start, *sweep_stop, sweep_count);
      }
      return emit(run_sweep(spec), sweep_out);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
