#include "qhess/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "qhess/io.hpp"
#include "qhess/models.hpp"
#include "qhess/optimizers.hpp"
#include "qhess/rng.hpp"
#include "qhess/shift_rules.hpp"
#include "qhess/spectral.hpp"

namespace qhess {

namespace {

namespace fs = std::filesystem;

// master-seed offsets; see rng.hpp
constexpr std::uint64_t kSeedDataset = 1;
constexpr std::uint64_t kSeedCircuitInit = 2;
constexpr std::uint64_t kSeedFfnnInit = 3;
constexpr std::uint64_t kSeedSplit = 4;
constexpr std::uint64_t kSeedCompareBase = 100;

fs::path out_dir(const Config& config) {
  fs::path out = config.get_string("experiment.out_dir");
  fs::create_directories(out);
  return out;
}

Circuit build_model(const Config& config) {
  const std::string kind = config.get_string("model.kind");
  const int n = static_cast<int>(config.get_int("model.num_qubits"));
  const int l = static_cast<int>(config.get_int("model.num_layers"));
  if (kind == "toy") return build_toy(n);
  if (kind == "layered") return build_layered(n, l);
  if (kind == "reuploading") return build_reuploading(n, l);
  throw std::invalid_argument("unknown model.kind: " + kind);
}

std::shared_ptr<const Loss> make_state_loss(const Config& config, int num_qubits) {
  const std::string kind = config.get_string("loss.kind");
  if (kind == "global") {
    const TargetKind target = target_kind_from_string(config.get_string("target.kind"));
    return std::make_shared<GlobalFidelityLoss>(make_target(target, num_qubits));
  }
  if (kind == "local") return std::make_shared<LocalZLoss>();
  throw std::invalid_argument("loss.kind must be global or local here, got: " + kind);
}

OptimizerConfig optimizer_from(const Config& config) {
  OptimizerConfig opt;
  opt.kind = optimizer_kind_from_string(config.get_string("optimizer.kind"));
  opt.eta = config.get_double("optimizer.eta");
  opt.eta_cap = config.get_double("optimizer.eta_cap");
  opt.recompute_every = static_cast<int>(config.get_int("optimizer.recompute_every"));
  opt.lambda_reg = config.get_double("optimizer.lambda_reg");
  opt.epochs = static_cast<int>(config.get_int("optimizer.epochs"));
  opt.stop_loss = config.get_double("optimizer.stop_loss");
  opt.snapshot_every = static_cast<int>(config.get_int("optimizer.snapshot_every"));
  return opt;
}

std::string trace_csv(const TrainingTrace& trace) {
  std::string out = "epoch,loss,grad_norm,learning_rate\n";
  for (const EpochRecord& r : trace.records)
    out += std::to_string(r.epoch) + "," + format_double(r.loss) + "," +
           format_double(r.grad_norm) + "," + format_double(r.learning_rate) + "\n";
  return out;
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::string out = "rank,eigenvalue\n";
  for (std::size_t r = 0; r < spectrum.eigenvalues.size(); ++r)
    out += std::to_string(r) + "," + format_double(spectrum.eigenvalues[r]) + "\n";
  return out;
}

std::string series_csv(const std::vector<SpectrumSnapshot>& snapshots) {
  std::string out = "epoch,rank,eigenvalue\n";
  for (const SpectrumSeriesRow& row : spectrum_series(snapshots))
    out += std::to_string(row.epoch) + "," + std::to_string(row.rank) + "," +
           format_double(row.eigenvalue) + "\n";
  return out;
}

std::string curve_csv(const PerturbationCurve& curve) {
  std::string out = "epsilon,loss,quadratic_model\n";
  for (std::size_t i = 0; i < curve.epsilons.size(); ++i)
    out += format_double(curve.epsilons[i]) + "," + format_double(curve.losses[i]) + "," +
           format_double(curve.quadratic.empty() ? curve.base_loss : curve.quadratic[i]) + "\n";
  return out;
}

std::string grid_csv(const PredictionGrid& grid) {
  std::string out = "x1,x2,expectation_z\n";
  for (int i = 0; i < grid.resolution; ++i)
    for (int j = 0; j < grid.resolution; ++j)
      out += format_double(grid.coord(i)) + "," + format_double(grid.coord(j)) + "," +
             format_double(grid.at(i, j)) + "\n";
  return out;
}

fs::path write(const fs::path& dir, const std::string& name, const Config& config,
               const std::string& command, const std::string& body) {
  const fs::path path = dir / name;
  write_file_atomic(path, config.comment_header(command) + body);
  return path;
}

double accuracy(const Dataset& dataset, const std::function<double(double, double)>& model) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const int pred = model(dataset.points[i][0], dataset.points[i][1]) >= 0.0 ? +1 : -1;
    if (pred == dataset.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct SplitData {
  Dataset train;
  Dataset test;
};

SplitData load_split(const Config& config) {
  const std::uint64_t master = config.get_u64("experiment.master_seed");
  const int n = static_cast<int>(config.get_int("dataset.n_points"));
  const double fraction = config.get_double("dataset.train_fraction");
  const Dataset full = generate_circle_dataset(n, derive_seed(master, kSeedDataset));
  auto [train, test] = train_test_split(full, fraction, derive_seed(master, kSeedSplit));
  return {std::move(train), std::move(test)};
}

}  // namespace

std::vector<fs::path> cmd_gen_data(const Config& config) {
  const fs::path dir = out_dir(config);
  const std::uint64_t master = config.get_u64("experiment.master_seed");
  const int n = static_cast<int>(config.get_int("dataset.n_points"));
  const Dataset d = generate_circle_dataset(n, derive_seed(master, kSeedDataset));

  std::size_t negatives = 0;
  for (int label : d.labels)
    if (label < 0) ++negatives;
  std::string balance = "n,n_negative,n_positive,negative_fraction\n";
  balance += std::to_string(d.size()) + "," + std::to_string(negatives) + "," +
             std::to_string(d.size() - negatives) + "," +
             format_double(static_cast<double>(negatives) / static_cast<double>(d.size())) + "\n";

  return {write(dir, "dataset.csv", config, "gen-data", dataset_to_csv(d)),
          write(dir, "balance.csv", config, "gen-data", balance)};
}

std::vector<fs::path> cmd_landscape(const Config& config) {
  const fs::path dir = out_dir(config);
  const Circuit circuit = build_model(config);
  if (circuit.num_data_slots() != 0)
    throw std::invalid_argument("landscape: data-free circuits only");
  const std::shared_ptr<const Loss> loss = make_state_loss(config, circuit.num_qubits());

  const int p = circuit.num_params();
  const int free_i = static_cast<int>(config.get_int("landscape.free_i"));
  const int free_j = static_cast<int>(config.get_int("landscape.free_j"));
  if (free_i == free_j || free_i < 0 || free_j < 0 || free_i >= p || free_j >= p)
    throw std::invalid_argument("landscape: need exactly two distinct free parameter indices");
  const double fixed = config.get_double("landscape.fixed_value");

  std::vector<double> full(p, fixed);
  const auto reduced_observable = [&](std::span<const double> u) {
    std::vector<double> theta = full;
    theta[free_i] = u[0];
    theta[free_j] = u[1];
    return loss->observable(run_circuit(circuit, theta));
  };

  const double lo = config.get_double("landscape.theta_min");
  const double hi = config.get_double("landscape.theta_max");
  const int res = static_cast<int>(config.get_int("landscape.resolution"));
  if (res < 2 || hi <= lo) throw std::invalid_argument("landscape: bad grid");

  std::string body = "theta1,theta2,loss\n";
  std::vector<double> u(2);
  for (int a = 0; a < res; ++a) {
    u[0] = lo + (hi - lo) * a / (res - 1);
    for (int b = 0; b < res; ++b) {
      u[1] = lo + (hi - lo) * b / (res - 1);
      body += format_double(u[0]) + "," + format_double(u[1]) + "," +
              format_double(loss->value(reduced_observable(u))) + "\n";
    }
  }
  std::vector<fs::path> files{write(dir, "landscape.csv", config, "landscape", body)};

  // Hessian (restricted to the two free parameters) at each marked point
  std::istringstream marks(config.get_string("landscape.marked_points"));
  std::string token;
  int index = 0;
  while (std::getline(marks, token, ';')) {
    const std::size_t comma = token.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("landscape.marked_points: expected 'a,b;c,d;...'");
    u[0] = std::stod(token.substr(0, comma));
    u[1] = std::stod(token.substr(comma + 1));

    const double f0 = reduced_observable(u);
    const double l1 = loss->d1(f0);
    const double l2 = loss->d2(f0);
    std::vector<double> grad_f = shift_gradient(reduced_observable, u);
    Matrix hess = shift_hessian_raw(reduced_observable, u);
    std::vector<double> grad(2);
    for (int i = 0; i < 2; ++i) grad[i] = grad_f[i] * l1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        hess(i, j) = hess(i, j) * l1 + grad_f[i] * grad_f[j] * l2;

    const Spectrum spectrum = eigendecompose(hess);
    const StationaryClass cls = classify_stationary(grad, spectrum);
    std::string mark_body = "# point = " + format_double(u[0]) + "," + format_double(u[1]) + "\n";
    mark_body += "# loss = " + format_double(loss->value(f0)) + "\n";
    mark_body += std::string("# classification = ") + to_string(cls.label) + "\n";
    mark_body += spectrum_csv(spectrum);
    files.push_back(
        write(dir, "marked_" + std::to_string(index) + ".csv", config, "landscape", mark_body));
    ++index;
  }
  return files;
}

std::vector<fs::path> cmd_spectrum_evolution(const Config& config) {
  const fs::path dir = out_dir(config);
  const Circuit circuit = build_model(config);
  if (circuit.num_data_slots() != 0)
    throw std::invalid_argument("spectrum-evolution: data-free circuits only");
  const std::shared_ptr<const Loss> loss = make_state_loss(config, circuit.num_qubits());
  const std::uint64_t master = config.get_u64("experiment.master_seed");

  OptimizerConfig opt = optimizer_from(config);
  if (opt.snapshot_every <= 0) opt.snapshot_every = 1;

  const std::vector<double> init =
      random_circuit_params(circuit.num_params(), derive_seed(master, kSeedCircuitInit));
  const TrainResult result = train(make_circuit_objective(circuit, loss), init, opt);

  return {write(dir, "trace.csv", config, "spectrum-evolution", trace_csv(result.trace)),
          write(dir, "spectrum_series.csv", config, "spectrum-evolution",
                series_csv(result.trace.snapshots))};
}

std::vector<fs::path> cmd_perturb(const Config& config) {
  const fs::path dir = out_dir(config);
  const Circuit circuit = build_model(config);
  if (circuit.num_data_slots() != 0) throw std::invalid_argument("perturb: data-free circuits only");
  const std::shared_ptr<const Loss> loss = make_state_loss(config, circuit.num_qubits());
  const std::uint64_t master = config.get_u64("experiment.master_seed");
  const int p = circuit.num_params();

  std::vector<double> theta;
  const std::string params_file = config.get_string("perturb.params_file");
  if (!params_file.empty()) {
    std::istringstream in(read_file(params_file));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line == "value") continue;
      theta.push_back(std::stod(line));
    }
    if (static_cast<int>(theta.size()) != p)
      throw std::invalid_argument("perturb.params_file: expected " + std::to_string(p) +
                                  " values, got " + std::to_string(theta.size()));
  } else {
    const std::vector<double> init =
        random_circuit_params(p, derive_seed(master, kSeedCircuitInit));
    theta = train(make_circuit_objective(circuit, loss), init, optimizer_from(config)).params;
  }

  const GradHess gh = loss_hessian(circuit, theta, *loss);
  const Spectrum spectrum = eigendecompose(gh.hessian);

  const double eps_max = config.get_double("perturb.eps_max");
  const int eps_count = static_cast<int>(config.get_int("perturb.eps_count"));
  if (eps_count < 2 || eps_max <= 0.0) throw std::invalid_argument("perturb: bad epsilon grid");
  std::vector<double> grid(eps_count);
  for (int k = 0; k < eps_count; ++k)
    grid[k] = -eps_max + 2.0 * eps_max * k / (eps_count - 1);

  int zero_rank = 0;
  for (int r = 1; r < p; ++r)
    if (std::abs(spectrum.eigenvalues[r]) < std::abs(spectrum.eigenvalues[zero_rank]))
      zero_rank = r;
  const std::array<std::pair<const char*, int>, 3> picks{
      std::pair<const char*, int>{"perturb_top.csv", p - 1},
      std::pair<const char*, int>{"perturb_middle.csv", p / 2},
      std::pair<const char*, int>{"perturb_zero.csv", zero_rank}};

  std::string params_body = "value\n";
  for (double v : theta) params_body += format_double(v) + "\n";
  std::vector<fs::path> files{write(dir, "params.csv", config, "perturb", params_body)};

  for (const auto& [name, rank] : picks) {
    const std::vector<double> direction = spectrum.eigenvector(rank);
    const PerturbationCurve curve = perturbation_scan(circuit, theta, *loss, direction, grid,
                                                      spectrum.eigenvalues[rank]);
    std::string body = "# eigenvalue_rank = " + std::to_string(rank) + "\n";
    body += "# eigenvalue = " + format_double(spectrum.eigenvalues[rank]) + "\n";
    body += curve_csv(curve);
    files.push_back(write(dir, name, config, "perturb", body));
  }
  return files;
}

namespace {

// Shared by train-qnn and train-ffnn: identical artifact schema.
std::vector<fs::path> write_training_artifacts(
    const Config& config, const std::string& command, const fs::path& dir,
    const SplitData& data, const std::function<double(double, double)>& init_model,
    const std::function<double(double, double)>& final_model, const Spectrum& init_spectrum,
    const Spectrum& final_spectrum, const TrainingTrace& trace) {
  const int res = static_cast<int>(config.get_int("grid.resolution"));
  std::string acc = "phase,train_accuracy,test_accuracy\n";
  acc += "init," + format_double(accuracy(data.train, init_model)) + "," +
         format_double(accuracy(data.test, init_model)) + "\n";
  acc += "final," + format_double(accuracy(data.train, final_model)) + "," +
         format_double(accuracy(data.test, final_model)) + "\n";

  return {
      write(dir, "train.csv", config, command, dataset_to_csv(data.train)),
      write(dir, "test.csv", config, command, dataset_to_csv(data.test)),
      write(dir, "trace.csv", config, command, trace_csv(trace)),
      write(dir, "prediction_init.csv", config, command, grid_csv(prediction_map(init_model, res))),
      write(dir, "prediction_final.csv", config, command,
            grid_csv(prediction_map(final_model, res))),
      write(dir, "spectrum_init.csv", config, command, spectrum_csv(init_spectrum)),
      write(dir, "spectrum_final.csv", config, command, spectrum_csv(final_spectrum)),
      write(dir, "accuracy.csv", config, command, acc),
  };
}

}  // namespace

std::vector<fs::path> cmd_train_qnn(const Config& config) {
  const fs::path dir = out_dir(config);
  const std::uint64_t master = config.get_u64("experiment.master_seed");
  const int n = static_cast<int>(config.get_int("model.num_qubits"));
  const int l = static_cast<int>(config.get_int("model.num_layers"));
  const int readout = static_cast<int>(config.get_int("loss.readout_qubit"));
  const Circuit circuit = build_reuploading(n, l);
  const SplitData data = load_split(config);

  const std::vector<double> init =
      random_circuit_params(circuit.num_params(), derive_seed(master, kSeedCircuitInit));
  const Objective objective = make_risk_objective(circuit, data.train, readout);

  const Spectrum init_spectrum = eigendecompose(objective.hessian(init).hessian);
  const TrainResult result = train(objective, init, optimizer_from(config));
  const Spectrum final_spectrum = eigendecompose(objective.hessian(result.params).hessian);

  const auto evaluator = [&](std::span<const double> params) {
    return [&circuit, readout, theta = std::vector<double>(params.begin(), params.end())](
               double x1, double x2) {
      const std::array<double, 2> x{x1, x2};
      return expectation_z(run_circuit(circuit, theta, x), readout);
    };
  };
  return write_training_artifacts(config, "train-qnn", dir, data, evaluator(init),
                                  evaluator(result.params), init_spectrum, final_spectrum,
                                  result.trace);
}

std::vector<fs::path> cmd_train_ffnn(const Config& config) {
  const fs::path dir = out_dir(config);
  const std::uint64_t master = config.get_u64("experiment.master_seed");
  const SplitData data = load_split(config);

  const Ffnn init_net = Ffnn::random_init(derive_seed(master, kSeedFfnnInit));
  const Objective objective = make_ffnn_objective(data.train);
  const std::vector<double> init(init_net.parameters().begin(), init_net.parameters().end());

  const Spectrum init_spectrum = eigendecompose(ffnn_hessian(init_net, data.train));
  const TrainResult result = train(objective, init, optimizer_from(config));
  Ffnn final_net;
  final_net.set_parameters(result.params);
  const Spectrum final_spectrum = eigendecompose(ffnn_hessian(final_net, data.train));

  std::vector<fs::path> files = write_training_artifacts(
      config, "train-ffnn", dir, data,
      [&init_net](double x1, double x2) { return init_net.forward(x1, x2); },
      [&final_net](double x1, double x2) { return final_net.forward(x1, x2); }, init_spectrum,
      final_spectrum, result.trace);

  // initial spectral-radius comparison against the QNN at the same dataset
  const int n = static_cast<int>(config.get_int("model.num_qubits"));
  const int l = static_cast<int>(config.get_int("model.num_layers"));
  const int readout = static_cast<int>(config.get_int("loss.readout_qubit"));
  const Circuit circuit = build_reuploading(n, l);
  const std::vector<double> qnn_init =
      random_circuit_params(circuit.num_params(), derive_seed(master, kSeedCircuitInit));
  const Spectrum qnn_spectrum =
      eigendecompose(risk_hessian(circuit, qnn_init, data.train, readout).hessian);

  const auto radius = [](const Spectrum& s) {
    return std::max(std::abs(s.min()), std::abs(s.max()));
  };
  const double r_ffnn = radius(init_spectrum);
  const double r_qnn = radius(qnn_spectrum);
  std::string report = "metric,value\n";
  report += "ffnn_init_spectral_radius," + format_double(r_ffnn) + "\n";
  report += "qnn_init_spectral_radius," + format_double(r_qnn) + "\n";
  report += "qnn_over_ffnn_init_radius," + format_double(r_qnn / r_ffnn) + "\n";
  files.push_back(write(dir, "report.csv", config, "train-ffnn", report));
  return files;
}

std::vector<fs::path> cmd_compare_optimizers(const Config& config) {
  const fs::path dir = out_dir(config);
  const Circuit circuit = build_model(config);
  if (circuit.num_data_slots() != 0)
    throw std::invalid_argument("compare-optimizers: data-free circuits only");
  const std::shared_ptr<const Loss> loss = make_state_loss(config, circuit.num_qubits());
  const Objective objective = make_circuit_objective(circuit, loss);
  const std::uint64_t master = config.get_u64("experiment.master_seed");

  const int n_seeds = static_cast<int>(config.get_int("compare.n_seeds"));
  const int epochs = static_cast<int>(config.get_int("compare.epochs"));
  const double target_loss = config.get_double("compare.target_loss");
  if (n_seeds < 1 || epochs < 1) throw std::invalid_argument("compare: bad n_seeds/epochs");

  OptimizerConfig gd;
  gd.kind = OptimizerKind::Gd;
  gd.eta = config.get_double("compare.gd_eta");
  OptimizerConfig qng;
  qng.kind = OptimizerKind::Qng;
  qng.eta = config.get_double("compare.qng_eta");
  qng.lambda_reg = config.get_double("compare.qng_lambda_reg");
  OptimizerConfig hlr;
  hlr.kind = OptimizerKind::HessianLr;
  hlr.eta_cap = config.get_double("compare.hlr_eta_cap");
  hlr.recompute_every = static_cast<int>(config.get_int("compare.hlr_recompute_every"));
  for (OptimizerConfig* opt : {&gd, &qng, &hlr}) {
    opt->epochs = epochs;
    opt->stop_loss = config.get_double("compare.stop_loss");
  }

  const std::array<std::pair<const char*, OptimizerConfig*>, 3> runs{
      std::pair<const char*, OptimizerConfig*>{"gd", &gd},
      std::pair<const char*, OptimizerConfig*>{"qng", &qng},
      std::pair<const char*, OptimizerConfig*>{"hlr", &hlr}};

  std::vector<fs::path> files;
  std::string reach = "optimizer,seed,epochs_to_target\n";
  // losses[opt][seed][epoch], carried forward past early stops
  std::vector<std::vector<std::vector<double>>> losses(3);

  for (int seed = 0; seed < n_seeds; ++seed) {
    const std::vector<double> init = random_circuit_params(
        circuit.num_params(), derive_seed(master, kSeedCompareBase + seed));
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const TrainResult result = train(objective, init, *runs[r].second);
      files.push_back(write(dir,
                            std::string("trace_") + runs[r].first + "_seed" +
                                std::to_string(seed) + ".csv",
                            config, "compare-optimizers", trace_csv(result.trace)));
      reach += std::string(runs[r].first) + "," + std::to_string(seed) + "," +
               std::to_string(result.trace.epochs_to_loss(target_loss)) + "\n";
      std::vector<double> per_epoch(epochs + 1);
      std::size_t rec = 0;
      double last = result.trace.records.front().loss;
      for (int e = 0; e <= epochs; ++e) {
        if (rec < result.trace.records.size() && result.trace.records[rec].epoch == e)
          last = result.trace.records[rec++].loss;
        per_epoch[e] = last;
      }
      losses[r].push_back(std::move(per_epoch));
    }
  }

  std::string summary = "epoch,median_loss_gd,median_loss_qng,median_loss_hlr\n";
  for (int e = 0; e <= epochs; ++e) {
    summary += std::to_string(e);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::vector<double> at_epoch;
      for (int seed = 0; seed < n_seeds; ++seed) at_epoch.push_back(losses[r][seed][e]);
      summary += "," + format_double(median(std::move(at_epoch)));
    }
    summary += "\n";
  }
  files.push_back(write(dir, "reach.csv", config, "compare-optimizers", reach));
  files.push_back(write(dir, "summary.csv", config, "compare-optimizers", summary));
  return files;
}

std::vector<fs::path> run_command(const std::string& command, const Config& config) {
  if (command == "gen-data") return cmd_gen_data(config);
  if (command == "landscape") return cmd_landscape(config);
  if (command == "spectrum-evolution") return cmd_spectrum_evolution(config);
  if (command == "perturb") return cmd_perturb(config);
  if (command == "train-qnn") return cmd_train_qnn(config);
  if (command == "train-ffnn") return cmd_train_ffnn(config);
  if (command == "compare-optimizers") return cmd_compare_optimizers(config);
  throw std::invalid_argument("unknown command: " + command);
}

}  // namespace qhess
