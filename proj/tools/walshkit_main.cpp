// walshkit command line: Walsh index functionals, kernels, Lebesgue sweeps,
// transforms, norms and the counterexample construction experiments.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "walshkit/experiments.hpp"
#include "walshkit/io.hpp"
#include "walshkit/norms.hpp"

using namespace walshkit;

namespace {

// Exit codes: 0 ok, 1 usage/runtime error, 2 a checked bound was violated.
constexpr int kExitBoundViolation = 2;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

int emit_report(const ExperimentReport& rep, const std::string& format,
                const std::string& out_path) {
  if (format == "csv")
    write_output(rep.to_csv(), out_path);
  else
    write_output(rep.to_json().dump(2) + "\n", out_path);
  if (rep.violations > 0) {
    std::cerr << "bound violations: " << rep.violations << "\n";
    return kExitBoundViolation;
  }
  return 0;
}

nlohmann::json norm_to_json(const NormValue& nv) {
  nlohmann::json j;
  j["value"] = nv.value;
  if (nv.exact) j["exact"] = nv.exact->to_string();
  return j;
}

struct SpecOptions {
  std::string theorem = "t1b";
  double p = 0.5;
  std::string phi = "one";
  std::string seq = "pow2plus1";
  int level = 16;
  double budget = 1.0;
  std::size_t terms = SIZE_MAX;

  ConstructionSpec to_spec() const {
    ConstructionSpec spec;
    spec.theorem = theorem_from_string(theorem);
    spec.p = p;
    spec.phi = WeightFunction::parse(phi);
    spec.base = IndexSequence::parse(seq, std::uint64_t(1) << level);
    spec.resolution = level;
    spec.budget = budget;
    spec.max_terms = terms;
    return spec;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--theorem", theorem, "t1b | t2b | t4b | t5b");
    cmd->add_option("--p", p, "exponent p");
    cmd->add_option("--phi", phi, "weight: one | log2 | pow:<gamma>");
    cmd->add_option("--seq", seq,
                    "base sequence: pow2plus1 | pow2plushalf | altbits | list:a,b,...");
    cmd->add_option("--level", level, "truncation resolution N");
    cmd->add_option("--budget", budget, "summable-selector budget");
    cmd->add_option("--terms", terms, "maximum number of selected terms");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Paley partial sums: kernels, norms and counterexample martingales"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  auto* cmd_index = app.add_subcommand("index", "binary-expansion functionals of Walsh indices");
  std::vector<std::uint64_t> index_values;
  cmd_index->add_option("n", index_values, "indices")->required();

  auto* cmd_kernel = app.add_subcommand("kernel", "Dirichlet kernel D_n values");
  std::uint64_t kernel_n = 1;
  int kernel_level = -1;
  std::string kernel_route = "formula";
  cmd_kernel->add_option("n", kernel_n, "kernel index")->required();
  cmd_kernel->add_option("--level", kernel_level, "resolution (default |n|+1)");
  cmd_kernel->add_option("--route", kernel_route, "formula | direct")
      ->check(CLI::IsMember({"formula", "direct"}));

  auto* cmd_leb = app.add_subcommand(
      "lebesgue", "Lebesgue constant sweep with the V(n)/8 <= L_S(n) <= V(n) check");
  std::uint64_t leb_max_n = 4096;
  std::size_t leb_sample = 0;
  std::uint64_t leb_seed = 1;
  int leb_max_exp = 20;
  cmd_leb->add_option("--max-n", leb_max_n, "exhaustive upper bound");
  cmd_leb->add_option("--sample", leb_sample, "additional sampled indices above max-n");
  cmd_leb->add_option("--seed", leb_seed, "sample seed");
  cmd_leb->add_option("--max-exponent", leb_max_exp, "samples are < 2^this");

  auto* cmd_fwht = app.add_subcommand("fwht", "Walsh-Hadamard transform of a step-function file");
  std::string fwht_in;
  bool fwht_inverse = false;
  cmd_fwht->add_option("--in", fwht_in, "input JSON file")->required();
  cmd_fwht->add_flag("--inverse", fwht_inverse, "synthesize samples from coefficients");

  auto* cmd_norms = app.add_subcommand("norms", "norms of a step-function file");
  std::string norms_in;
  double norms_p = 1.0;
  std::string norms_ops = "lp,weak,hp";
  cmd_norms->add_option("--in", norms_in, "input JSON file")->required();
  cmd_norms->add_option("--p", norms_p, "exponent");
  cmd_norms->add_option("--ops", norms_ops, "comma list of lp, weak, hp, mod:<n>");

  auto* cmd_construct = app.add_subcommand("construct", "realize a counterexample martingale");
  SpecOptions construct_opts;
  construct_opts.attach(cmd_construct);

  auto* cmd_diverge = app.add_subcommand("diverge", "divergence run for a construction");
  SpecOptions diverge_opts;
  diverge_opts.attach(cmd_diverge);

  auto* cmd_converge = app.add_subcommand("converge", "partial-sum convergence run");
  SpecOptions converge_opts;
  converge_opts.theorem = "";
  converge_opts.p = 1.0;
  converge_opts.seq = "pow2plushalf";
  converge_opts.attach(cmd_converge);
  std::uint64_t converge_seed = 1;
  double converge_decay = 1.0;
  cmd_converge->add_option("--seed", converge_seed, "random martingale seed");
  cmd_converge->add_option("--decay", converge_decay, "block decay rate of the random martingale");

  // Global flags are accepted after the subcommand too.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (*cmd_index) {
      if (format == "csv") {
        std::string text = "n,order,low,gap,variation\n";
        for (std::uint64_t n : index_values) {
          IndexExpansion e = expand(n);
          text += std::to_string(n) + "," + std::to_string(e.order) + "," +
                  std::to_string(e.low) + "," + std::to_string(e.gap) + "," +
                  std::to_string(e.variation) + "\n";
        }
        write_output(text, out_path);
      } else {
        nlohmann::json out = nlohmann::json::array();
        for (std::uint64_t n : index_values) {
          IndexExpansion e = expand(n);
          out.push_back({{"n", n},
                         {"order", e.order},
                         {"low", e.low},
                         {"gap", e.gap},
                         {"variation", e.variation}});
        }
        write_output((out.size() == 1 ? out[0] : out).dump(2) + "\n", out_path);
      }
      return 0;
    }

    if (*cmd_kernel) {
      int level = kernel_level >= 0 ? kernel_level : expand(kernel_n).order + 1;
      StepFunction d = kernel_route == "direct" ? dirichlet_direct(kernel_n, level)
                                                : dirichlet_formula(kernel_n, level);
      if (!out_path.empty() && out_path.ends_with(".json")) {
        save_json_file(out_path, step_to_json(d));
        return 0;
      }
      if (format == "csv") {
        std::string text = "ix,value\n";
        for (std::size_t ix = 0; ix < d.size(); ++ix)
          text += std::to_string(ix) + "," + format_double(d.value(ix)) + "\n";
        write_output(text, out_path);
      } else {
        nlohmann::json out;
        out["n"] = kernel_n;
        out["level"] = level;
        nlohmann::json values = nlohmann::json::array();
        for (std::size_t ix = 0; ix < d.size(); ++ix)
          values.push_back(static_cast<long long>(d.nums()[ix]));
        out["values"] = values;
        write_output(out.dump(2) + "\n", out_path);
      }
      return 0;
    }

    if (*cmd_leb) {
      std::optional<SampleSpec> sample;
      if (leb_sample > 0) sample = SampleSpec{leb_sample, leb_seed, leb_max_exp};
      return emit_report(lebesgue_sweep(leb_max_n, sample), format, out_path);
    }

    if (*cmd_fwht) {
      nlohmann::json j = load_json_file(fwht_in);
      nlohmann::json result = fwht_inverse ? step_to_json(ifwht(coeffs_from_json(j)))
                                           : coeffs_to_json(fwht(step_from_json(j)));
      write_output(result.dump(2) + "\n", out_path);
      return 0;
    }

    if (*cmd_norms) {
      StepFunction f = step_from_json(load_json_file(norms_in));
      nlohmann::json out;
      out["p"] = norms_p;
      std::stringstream ss(norms_ops);
      std::string op;
      while (std::getline(ss, op, ',')) {
        if (op == "lp")
          out["lp"] = norm_to_json(lp_norm(f, norms_p));
        else if (op == "weak")
          out["weak"] = norm_to_json(weak_lp_norm(f, norms_p));
        else if (op == "hp")
          out["hp"] = norm_to_json(hp_norm(f, norms_p));
        else if (op.rfind("mod:", 0) == 0) {
          int n = std::stoi(op.substr(4));
          out[op] = norm_to_json(norms_p >= 1.0 ? modulus_lp(f, n, norms_p)
                                                : modulus_hp(f, n, norms_p));
        } else {
          throw std::runtime_error("unknown norm op: " + op);
        }
      }
      write_output(out.dump(2) + "\n", out_path);
      return 0;
    }

    if (*cmd_construct) {
      RealizedConstruction rc = build(construct_opts.to_spec());
      nlohmann::json out;
      out["spec"] = {{"theorem", construct_opts.theorem}, {"p", construct_opts.p},
                     {"phi", construct_opts.phi},         {"seq", construct_opts.seq},
                     {"level", construct_opts.level},     {"budget", construct_opts.budget}};
      nlohmann::json alphas = nlohmann::json::array();
      nlohmann::json lambdas = nlohmann::json::array();
      for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
        alphas.push_back(rc.alphas[k].value);
        lambdas.push_back(
            {{"ideal", rc.lambdas_ideal[k]}, {"realized", rc.lambdas[k].to_string()}});
      }
      out["alphas"] = alphas;
      out["lambdas"] = lambdas;
      out["lambda_power_sum"] = rc.lambda_power_sum;
      out["F"] = step_to_json(rc.F);
      out["oracle_coeffs"] = coeffs_to_json(rc.oracle_coeffs);
      write_output(out.dump(2) + "\n", out_path);
      return 0;
    }

    if (*cmd_diverge) return emit_report(divergence_run(diverge_opts.to_spec()), format, out_path);

    if (*cmd_converge) {
      if (!converge_opts.theorem.empty())
        return emit_report(convergence_run(converge_opts.to_spec()), format, out_path);
      IndexSequence seq =
          IndexSequence::parse(converge_opts.seq, std::uint64_t(1) << converge_opts.level);
      return emit_report(convergence_run(seq, converge_opts.p, converge_opts.level,
                                         converge_seed, converge_decay),
                         format, out_path);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
