#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qhess/config.hpp"

namespace qhess {

/// Experiment subcommands. Each one reads its inputs from the config,
/// writes deterministic CSV artifacts into experiment.out_dir (every file
/// starts with the fully resolved config as '#' comment lines) and returns
/// the list of files written. Config/contract problems surface as
/// std::invalid_argument.
std::vector<std::filesystem::path> cmd_gen_data(const Config& config);
std::vector<std::filesystem::path> cmd_landscape(const Config& config);
std::vector<std::filesystem::path> cmd_spectrum_evolution(const Config& config);
std::vector<std::filesystem::path> cmd_perturb(const Config& config);
std::vector<std::filesystem::path> cmd_train_qnn(const Config& config);
std::vector<std::filesystem::path> cmd_train_ffnn(const Config& config);
std::vector<std::filesystem::path> cmd_compare_optimizers(const Config& config);

/// Dispatch by subcommand name; throws std::invalid_argument for an
/// unknown command.
std::vector<std::filesystem::path> run_command(const std::string& command, const Config& config);

}  // namespace qhess
