#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qhess/config.hpp"
#include "qhess/experiments.hpp"
#include "qhess/io.hpp"

using namespace qhess;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qhess_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Config base_config(const fs::path& out) {
  Config c = Config::defaults();
  c.set("experiment.out_dir", out.string());
  return c;
}

std::vector<std::string> data_rows(const fs::path& file) {
  std::istringstream in(read_file(file));
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

}  // namespace

TEST_CASE("config round trip and key validation") {
  const Config defaults = Config::defaults();
  const std::string text = defaults.serialize();

  Config reparsed = Config::defaults();
  reparsed.parse(text);
  CHECK(reparsed.serialize() == text);

  Config modified = Config::defaults();
  modified.set("model.num_qubits", "8");
  modified.set("optimizer.eta", "0.125");
  Config round = Config::defaults();
  round.parse(modified.serialize());
  CHECK(round.serialize() == modified.serialize());
  CHECK(round.get_int("model.num_qubits") == 8);
  CHECK(round.get_double("optimizer.eta") == 0.125);

  CHECK_THROWS_AS(modified.set("model.typo", "3"), std::invalid_argument);
  CHECK_THROWS_AS(modified.set("no_dot_here"), std::invalid_argument);
  Config bad = Config::defaults();
  CHECK_THROWS_AS(bad.parse("[model]\nnum_qubits = 4\nunknown_key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(bad.parse("stray = 1\n"), std::invalid_argument);
  bad.set("model.num_qubits", "abc");
  CHECK_THROWS_AS(bad.get_int("model.num_qubits"), std::invalid_argument);
}

TEST_CASE("gen-data artifacts and determinism") {
  const fs::path dir = fresh_dir("gen");
  Config c = base_config(dir);
  c.set("dataset.n_points", "50");
  const auto files = cmd_gen_data(c);
  REQUIRE(files.size() == 2);
  const std::string first = read_file(dir / "dataset.csv");
  CHECK(first.rfind("# qhess gen-data\n", 0) == 0);
  CHECK(first.find("# dataset.n_points = 50\n") != std::string::npos);
  CHECK(data_rows(dir / "dataset.csv").size() == 51);  // header + 50 points

  cmd_gen_data(c);  // byte-identical rerun
  CHECK(read_file(dir / "dataset.csv") == first);
}

TEST_CASE("landscape command writes the grid and marked spectra") {
  const fs::path dir = fresh_dir("landscape");
  Config c = base_config(dir);
  c.set("model.kind", "toy");
  c.set("model.num_qubits", "3");
  c.set("target.kind", "zero");
  c.set("landscape.resolution", "11");
  c.set("landscape.marked_points", "0,0");
  const auto files = cmd_landscape(c);
  REQUIRE(files.size() == 2);

  // the exact center row of the grid has loss 0
  bool found_center = false;
  for (const std::string& row : data_rows(dir / "landscape.csv"))
    if (row == "0,0,0") found_center = true;
  CHECK(found_center);

  const std::string marked = read_file(dir / "marked_0.csv");
  CHECK(marked.find("# classification = minimum") != std::string::npos);
  CHECK(marked.find("0,0.5") != std::string::npos);
  CHECK(marked.find("1,0.5") != std::string::npos);

  c.set("landscape.free_j", "0");  // same index twice
  CHECK_THROWS_AS(cmd_landscape(c), std::invalid_argument);
}

TEST_CASE("spectrum-evolution writes a trace and a long-format series") {
  const fs::path dir = fresh_dir("sevo");
  Config c = base_config(dir);
  c.set("model.num_qubits", "3");
  c.set("model.num_layers", "1");
  c.set("optimizer.epochs", "6");
  c.set("optimizer.eta", "0.05");
  c.set("optimizer.snapshot_every", "3");
  cmd_spectrum_evolution(c);

  const auto trace = data_rows(dir / "trace.csv");
  REQUIRE(trace.size() == 8);  // header + epochs 0..6
  double prev = 1e9;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double loss = std::stod(trace[i].substr(trace[i].find(',') + 1));
    CHECK(loss <= prev);  // small-eta GD does not increase the loss here
    prev = loss;
  }
  // snapshots at epochs 0, 3 and the final state: 3 * P rows
  CHECK(data_rows(dir / "spectrum_series.csv").size() == 1 + 3 * 9);
}

TEST_CASE("perturb command emits curves anchored at the base loss") {
  const fs::path dir = fresh_dir("perturb");
  Config c = base_config(dir);
  c.set("model.num_qubits", "3");
  c.set("model.num_layers", "2");
  c.set("optimizer.epochs", "150");
  c.set("optimizer.eta", "0.5");
  c.set("perturb.eps_count", "9");
  cmd_perturb(c);

  for (const char* name : {"perturb_top.csv", "perturb_middle.csv", "perturb_zero.csv"}) {
    const auto rows = data_rows(dir / name);
    REQUIRE(rows.size() == 10);  // header + 9 epsilons
    // the middle row (eps = 0) repeats the base loss in both columns
    const std::string& mid = rows[5];
    const auto c1 = mid.find(',');
    const auto c2 = mid.find(',', c1 + 1);
    CHECK(mid.substr(0, c1) == "0");
    CHECK(mid.substr(c1 + 1, c2 - c1 - 1) == mid.substr(c2 + 1));
  }

  // converged parameters can be fed back in
  Config c2cfg = base_config(fresh_dir("perturb2"));
  c2cfg.set("model.num_qubits", "3");
  c2cfg.set("model.num_layers", "2");
  c2cfg.set("perturb.params_file", (dir / "params.csv").string());
  c2cfg.set("perturb.eps_count", "5");
  const auto files = cmd_perturb(c2cfg);
  CHECK(files.size() == 4);
}

TEST_CASE("train-qnn and train-ffnn share the artifact schema") {
  const fs::path qdir = fresh_dir("qnn");
  Config q = base_config(qdir);
  q.set("model.num_qubits", "2");
  q.set("model.num_layers", "1");
  q.set("dataset.n_points", "30");
  q.set("optimizer.epochs", "3");
  q.set("optimizer.eta", "0.005");
  q.set("grid.resolution", "5");
  const auto qfiles = cmd_train_qnn(q);
  CHECK(qfiles.size() == 8);

  const fs::path fdir = fresh_dir("ffnn");
  Config f = base_config(fdir);
  f.set("model.num_qubits", "2");
  f.set("model.num_layers", "1");
  f.set("dataset.n_points", "30");
  f.set("optimizer.epochs", "50");
  f.set("optimizer.eta", "0.002");
  f.set("grid.resolution", "5");
  const auto ffiles = cmd_train_ffnn(f);
  CHECK(ffiles.size() == 9);  // same set plus report.csv

  for (const char* name : {"spectrum_init.csv", "spectrum_final.csv", "accuracy.csv",
                           "prediction_init.csv", "trace.csv"}) {
    CHECK(data_rows(qdir / name).front() == data_rows(fdir / name).front());  // same schema
  }
  const auto report = data_rows(fdir / "report.csv");
  REQUIRE(report.size() == 4);
  CHECK(report[3].rfind("qnn_over_ffnn_init_radius,", 0) == 0);

  // accuracies are fractions
  for (const auto& row : {data_rows(qdir / "accuracy.csv")[1], data_rows(qdir / "accuracy.csv")[2]}) {
    std::istringstream ss(row);
    std::string phase, tr_s, te_s;
    std::getline(ss, phase, ',');
    std::getline(ss, tr_s, ',');
    std::getline(ss, te_s, ',');
    const double tr = std::stod(tr_s), te = std::stod(te_s);
    CHECK(tr >= 0.0);
    CHECK(tr <= 1.0);
    CHECK(te >= 0.0);
    CHECK(te <= 1.0);
  }
}

TEST_CASE("compare-optimizers shares initializations across methods") {
  const fs::path dir = fresh_dir("compare");
  Config c = base_config(dir);
  c.set("model.num_qubits", "2");
  c.set("model.num_layers", "1");
  c.set("compare.n_seeds", "2");
  c.set("compare.epochs", "4");
  const auto files = cmd_compare_optimizers(c);
  CHECK(files.size() == 2 * 3 + 2);

  for (int seed = 0; seed < 2; ++seed) {
    std::string first_loss;
    for (const char* opt : {"gd", "qng", "hlr"}) {
      const auto rows = data_rows(dir / ("trace_" + std::string(opt) + "_seed" +
                                         std::to_string(seed) + ".csv"));
      REQUIRE(rows.size() >= 2);
      const std::string& r0 = rows[1];
      const auto c1 = r0.find(',');
      const auto c2 = r0.find(',', c1 + 1);
      const std::string loss = r0.substr(c1 + 1, c2 - c1 - 1);
      if (first_loss.empty())
        first_loss = loss;
      else
        CHECK(loss == first_loss);  // identical epoch-0 loss per seed
    }
  }
  const auto summary = data_rows(dir / "summary.csv");
  CHECK(summary.size() == 1 + 5);  // header + epochs 0..4
  CHECK(summary[0] == "epoch,median_loss_gd,median_loss_qng,median_loss_hlr");
}

TEST_CASE("library-level reruns are byte identical across commands") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  for (const fs::path* d : {&dir1, &dir2}) {
    Config c = base_config(*d);
    c.set("model.kind", "toy");
    c.set("model.num_qubits", "2");
    c.set("target.kind", "ghz");
    c.set("landscape.resolution", "7");
    c.set("experiment.out_dir", d->string());
    cmd_landscape(c);
  }
  CHECK(read_file(dir1 / "landscape.csv").substr(read_file(dir1 / "landscape.csv").find("theta1")) ==
        read_file(dir2 / "landscape.csv").substr(read_file(dir2 / "landscape.csv").find("theta1")));
}

TEST_CASE("unknown command is rejected") {
  CHECK_THROWS_AS(run_command("not-a-command", Config::defaults()), std::invalid_argument);
}
