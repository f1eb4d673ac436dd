#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhess/config.hpp"
#include "qhess/experiments.hpp"

namespace {

struct CommonOptions {
  std::string config_file;
  std::string out_dir;
  std::string seed;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_file, "Experiment config file (INI-style)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides experiment.out_dir)");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides experiment.master_seed)");
  cmd->add_option("--set", opts.sets, "Override a config key, e.g. --set model.num_qubits=8")
      ->take_all();
}

qhess::Config resolve(const CommonOptions& opts) {
  qhess::Config config = qhess::Config::load(opts.config_file, opts.sets);
  if (!opts.out_dir.empty()) config.set("experiment.out_dir", opts.out_dir);
  if (!opts.seed.empty()) config.set("experiment.master_seed", opts.seed);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhess: Hessian-based loss-landscape analysis of variational quantum circuits"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-data", "Generate the labeled circle dataset"},
      {"landscape", "Loss grid over two free parameters plus Hessian spectra at marked points"},
      {"spectrum-evolution", "Train a state-preparation circuit with Hessian spectrum snapshots"},
      {"perturb", "Loss curves along Hessian eigenvectors around a converged minimum"},
      {"train-qnn", "Train the reuploading classifier on the circle dataset"},
      {"train-ffnn", "Train the classical feed-forward baseline on the circle dataset"},
      {"compare-optimizers", "GD vs QNG vs Hessian learning rate from shared seeds"},
  };

  std::vector<CommonOptions> opts(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i)
    add_common(app.add_subcommand(commands[i].first, commands[i].second), opts[i]);

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (app.get_subcommand(commands[i].first)->parsed()) {
        const auto files = qhess::run_command(commands[i].first, resolve(opts[i]));
        for (const auto& f : files) std::cout << f.string() << "\n";
        return 0;
      }
    }
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
