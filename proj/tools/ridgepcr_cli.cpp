// Command-line front end: synthetic data, projection, regression,
// convergence traces and scalar polynomial tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ridgepcr/convergence.hpp"
#include "ridgepcr/errors.hpp"
#include "ridgepcr/io.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/projection.hpp"
#include "ridgepcr/regression.hpp"
#include "ridgepcr/sign_poly.hpp"
#include "ridgepcr/synthetic.hpp"

namespace {

using namespace ridgepcr;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct SynthArgs {
  std::size_t n = 120;
  std::size_t d = 80;
  std::size_t rank = 10;
  double gamma = 0.1;
  std::uint64_t seed = 0;
  double noise = kDefaultNoiseLevel;
  std::string prefix;
};

struct SolveArgs {
  std::string matrix;
  std::string vector;
  double lambda = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double delta = 0.1;
  std::optional<std::size_t> q;
  std::uint64_t seed = 0;
  std::string out;
};

struct ConvergenceArgs {
  std::string algo;
  std::string matrix;
  std::string rhs;
  double lambda = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  std::size_t max_iters = 0;
  std::string out;
};

struct PolyArgs {
  std::string kind;
  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::optional<double> eps;
  std::size_t grid = 1001;
  std::string out;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  return out;
}

void run_synth(const SynthArgs& args) {
  const SyntheticProblem p =
      gen_synthetic(args.n, args.d, args.rank, args.gamma, args.seed, args.noise);
  io::save_matrix(args.prefix + "_A.mtx", p.a);
  io::save_vector(args.prefix + "_b.csv", p.b);
  io::save_vector(args.prefix + "_xtrue.csv", p.x_true);
}

void run_project(const SolveArgs& args) {
  const DesignMatrix a = io::load_matrix(args.matrix);
  const Vector y = io::load_vector(args.vector);
  ProjectionConfig cfg;
  cfg.lambda = args.lambda;
  cfg.gamma = args.gamma;
  cfg.eps = args.eps;
  cfg.delta = args.delta;
  cfg.q_override = args.q;
  const MatrixStats stats = compute_stats(a, args.lambda, args.seed);
  io::save_vector(args.out, pc_proj(a, cfg, y, stats));
}

void run_pcr(const SolveArgs& args) {
  const DesignMatrix a = io::load_matrix(args.matrix);
  const Vector b = io::load_vector(args.vector);
  PcrConfig cfg;
  cfg.lambda = args.lambda;
  cfg.gamma = args.gamma;
  cfg.eps = args.eps;
  cfg.delta = args.delta;
  const MatrixStats stats = compute_stats(a, args.lambda, args.seed);
  io::save_vector(args.out, pc_regress(a, cfg, b, stats));
}

void run_convergence_cmd(const ConvergenceArgs& args) {
  ConvergenceRequest request;
  request.algorithm = args.algo == "project" ? ConvergenceTrace::Algorithm::projection
                                             : ConvergenceTrace::Algorithm::regression;
  request.lambda = args.lambda;
  request.gamma = args.gamma;
  request.eps = args.eps;
  request.max_q = args.max_iters;
  const DesignMatrix a = io::load_matrix(args.matrix);
  const Vector rhs = io::load_vector(args.rhs);
  io::save_csv(run_convergence(a, rhs, request), args.out);
}

void run_poly(const PolyArgs& args) {
  if (args.grid < 2) {
    throw DomainError("--grid must be at least 2");
  }
  auto out = open_output(args.out);
  if (args.kind == "pk" || args.kind == "bound") {
    if (!args.k || *args.k == 0) {
      throw DomainError("--k >= 1 is required for --kind " + args.kind);
    }
    const std::size_t k = *args.k;
    if (args.kind == "pk") {
      out << "x,p_k\n";
      for (const double x : uniform_grid(-1.0, 1.0, args.grid)) {
        out << io::format_double(x) << ',' << io::format_double(p_k_eval(x, k)) << '\n';
      }
    } else {
      out << "x,sign_minus_p_k,bound\n";
      for (std::size_t i = 1; i <= args.grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(args.grid);
        out << io::format_double(x) << ',' << io::format_double(1.0 - p_k_eval(x, k)) << ','
            << io::format_double(sign_error_bound(x, k)) << '\n';
      }
    }
    return;
  }
  if (!args.alpha || !args.eps) {
    throw DomainError("--alpha and --eps are required for --kind chebyshev");
  }
  const CompressedSignPoly c = compressed_sign_poly(*args.alpha, *args.eps);
  out << "x,q,p_k\n";
  for (const double x : uniform_grid(-1.0, 1.0, args.grid)) {
    out << io::format_double(x) << ',' << io::format_double(c.poly(x)) << ','
        << io::format_double(p_k_eval(x, c.uncompressed_k)) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal component projection and regression via ridge regression"};
  app.set_version_flag("--version", std::string(RIDGEPCR_VERSION));
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic gapped problem");
  synth_cmd->add_option("--n", synth.n, "Rows (samples)")->required();
  synth_cmd->add_option("--d", synth.d, "Columns (features)")->required();
  synth_cmd->add_option("--rank", synth.rank, "Number of top singular values")->required();
  synth_cmd->add_option("--gamma", synth.gamma, "Spectral gap around lambda = 0.5")->required();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->required();
  synth_cmd->add_option("--noise", synth.noise, "Relative noise level of b");
  synth_cmd->add_option("--out-prefix", synth.prefix, "Output prefix")->required();

  SolveArgs project;
  auto* project_cmd = app.add_subcommand("project", "Principal component projection of a vector");
  project_cmd->add_option("--matrix", project.matrix, "Matrix (.mtx or .csv)")->required();
  project_cmd->add_option("--vector", project.vector, "Vector y (CSV)")->required();
  project_cmd->add_option("--lambda", project.lambda, "Threshold on squared singular values")->required();
  project_cmd->add_option("--gamma", project.gamma, "Gap parameter")->required();
  project_cmd->add_option("--eps", project.eps, "Target accuracy")->required();
  project_cmd->add_option("--delta", project.delta, "Failure probability (unused by CG)");
  project_cmd->add_option("--q", project.q, "Override the number of outer iterations");
  project_cmd->add_option("--seed", project.seed, "Seed of the spectral norm estimate");
  project_cmd->add_option("--out", project.out, "Output vector (CSV)")->required();

  SolveArgs pcr;
  auto* pcr_cmd = app.add_subcommand("pcr", "Principal component regression");
  pcr_cmd->add_option("--matrix", pcr.matrix, "Matrix (.mtx or .csv)")->required();
  pcr_cmd->add_option("--rhs", pcr.vector, "Response b (CSV)")->required();
  pcr_cmd->add_option("--lambda", pcr.lambda, "Threshold on squared singular values")->required();
  pcr_cmd->add_option("--gamma", pcr.gamma, "Gap parameter")->required();
  pcr_cmd->add_option("--eps", pcr.eps, "Target accuracy")->required();
  pcr_cmd->add_option("--delta", pcr.delta, "Failure probability (unused by CG)");
  pcr_cmd->add_option("--seed", pcr.seed, "Seed of the spectral norm estimate");
  pcr_cmd->add_option("--out", pcr.out, "Output vector (CSV)")->required();

  ConvergenceArgs conv;
  auto* conv_cmd = app.add_subcommand("convergence", "Per-iteration error trace against the SVD oracle");
  conv_cmd->add_option("--algo", conv.algo, "project or pcr")
      ->required()
      ->check(CLI::IsMember({"project", "pcr"}));
  conv_cmd->add_option("--matrix", conv.matrix, "Matrix (.mtx or .csv)")->required();
  conv_cmd->add_option("--rhs", conv.rhs, "y (length d) or b (length n)")->required();
  conv_cmd->add_option("--lambda", conv.lambda, "Threshold")->required();
  conv_cmd->add_option("--gamma", conv.gamma, "Gap parameter")->required();
  conv_cmd->add_option("--eps", conv.eps, "Target accuracy")->required();
  conv_cmd->add_option("--max-iters", conv.max_iters, "Iterations to trace")->required();
  conv_cmd->add_option("--out", conv.out, "Output CSV")->required();

  PolyArgs poly;
  auto* poly_cmd = app.add_subcommand("poly", "Tabulate sign polynomials on a grid");
  poly_cmd->add_option("--kind", poly.kind, "pk, bound or chebyshev")
      ->required()
      ->check(CLI::IsMember({"pk", "bound", "chebyshev"}));
  poly_cmd->add_option("--k", poly.k, "Degree parameter of p_k");
  poly_cmd->add_option("--alpha", poly.alpha, "Margin for the compressed polynomial");
  poly_cmd->add_option("--eps", poly.eps, "Accuracy for the compressed polynomial");
  poly_cmd->add_option("--grid", poly.grid, "Grid points");
  poly_cmd->add_option("--out", poly.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) {
      run_synth(synth);
    } else if (project_cmd->parsed()) {
      run_project(project);
    } else if (pcr_cmd->parsed()) {
      run_pcr(pcr);
    } else if (conv_cmd->parsed()) {
      run_convergence_cmd(conv);
    } else if (poly_cmd->parsed()) {
      run_poly(poly);
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const BudgetError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
