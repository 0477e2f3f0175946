#include "uqc/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "uqc/preprocess.hpp"

namespace uqc {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
  circuit.validate();
  train.validate();
  if (models.empty()) throw std::invalid_argument("config: no models selected");
  if (shots < 1) throw std::invalid_argument("config: shots must be >= 1");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (max_attempts < 1) throw std::invalid_argument("config: max_attempts must be >= 1");
  if (!(split_ratio > 0.0 && split_ratio < 1.0))
    throw std::invalid_argument("config: split ratio must lie in (0,1)");
  const int level = accept_level < 0 ? circuit.qubits : accept_level;
  ThresholdPolicy{level, max_attempts}.validate(circuit.qubits);
}

json ExperimentConfig::canonical_json() const {
  json models_j = json::array();
  for (ModelKind m : models) models_j.push_back(model_kind_name(m));

  json train_j;
  if (train.is_spsa()) {
    const auto& sp = std::get<SpsaParams>(train.optimizer);
    train_j["optimizer"] = "spsa";
    train_j["spsa"] = {{"a", sp.a},
                       {"c", sp.c},
                       {"stability", sp.stability},
                       {"alpha", sp.alpha},
                       {"gamma", sp.gamma}};
  } else {
    const auto& ap = std::get<AdamParams>(train.optimizer);
    train_j["optimizer"] = "adam";
    train_j["adam"] = {
        {"lr", ap.lr}, {"beta1", ap.beta1}, {"beta2", ap.beta2}, {"eps", ap.eps}};
  }
  train_j["batch_size"] = train.batch_size;
  train_j["max_epochs"] = train.max_epochs;
  train_j["patience"] = train.patience;
  train_j["min_delta"] = train.min_delta;
  train_j["seed"] = train.seed;

  return {{"dataset",
           {{"path", dataset_path},
            {"label_column", label_column},
            {"positive_label", positive_label}}},
          {"qubits", circuit.qubits},
          {"feature_map_layers", circuit.feature_map_layers},
          {"ansatz_layers", circuit.ansatz_layers},
          {"models", models_j},
          {"shots", shots},
          {"policy",
           {{"accept_level", accept_level < 0 ? circuit.qubits : accept_level},
            {"max_attempts", max_attempts}}},
          {"noise", noise ? to_json(*noise) : json(nullptr)},
          {"train", train_j},
          {"runs", runs},
          {"split", {{"ratio", split_ratio}, {"seed", split_seed}}},
          {"seed", seed}};
}

std::string ExperimentConfig::config_hash() const {
  return hex64(fnv1a64(canonical_json().dump()));
}

std::string ExperimentConfig::pipeline_hash() const {
  json j = canonical_json();
  j.erase("noise");
  j.erase("models");
  j.erase("shots");
  j.erase("policy");
  j.erase("runs");
  return hex64(fnv1a64(j.dump()));
}

std::string ExperimentConfig::run_dir() const {
  return (fs::path(out_dir) / pipeline_hash()).string();
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("dataset")) {
    const json& d = j.at("dataset");
    cfg.dataset_path = d.value("path", "");
    cfg.label_column = d.value("label_column", cfg.label_column);
    cfg.positive_label = d.value("positive_label", "");
  }
  cfg.circuit.qubits = j.value("qubits", cfg.circuit.qubits);
  cfg.circuit.feature_map_layers = j.value("feature_map_layers", cfg.circuit.feature_map_layers);
  cfg.circuit.ansatz_layers = j.value("ansatz_layers", cfg.circuit.ansatz_layers);

  if (j.contains("models")) {
    cfg.models.clear();
    for (const auto& m : j.at("models")) cfg.models.push_back(model_kind_from_name(m));
  }
  cfg.shots = j.value("shots", cfg.shots);
  if (j.contains("policy")) {
    const json& p = j.at("policy");
    if (p.contains("accept_level") && !p.at("accept_level").is_null())
      cfg.accept_level = p.at("accept_level").get<int>();
    cfg.max_attempts = p.value("max_attempts", cfg.max_attempts);
  }
  if (j.contains("noise") && !j.at("noise").is_null()) {
    const json& noise = j.at("noise");
    if (noise.is_string()) {
      if (noise.get<std::string>() != "default")
        throw std::invalid_argument("config: noise string must be \"default\"");
      cfg.noise = NoiseSpec::defaults();
    } else {
      cfg.noise = noise_spec_from_json(noise);
    }
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    const std::string opt = t.value("optimizer", "adam");
    if (opt == "adam") {
      AdamParams ap;
      if (t.contains("adam")) {
        const json& a = t.at("adam");
        ap.lr = a.value("lr", ap.lr);
        ap.beta1 = a.value("beta1", ap.beta1);
        ap.beta2 = a.value("beta2", ap.beta2);
        ap.eps = a.value("eps", ap.eps);
      }
      cfg.train.optimizer = ap;
    } else if (opt == "spsa") {
      SpsaParams sp;
      if (t.contains("spsa")) {
        const json& s = t.at("spsa");
        sp.a = s.value("a", sp.a);
        sp.c = s.value("c", sp.c);
        sp.stability = s.value("stability", sp.stability);
        sp.alpha = s.value("alpha", sp.alpha);
        sp.gamma = s.value("gamma", sp.gamma);
      }
      cfg.train.optimizer = sp;
    } else {
      throw std::invalid_argument("config: unknown optimizer '" + opt + "'");
    }
    cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
    cfg.train.max_epochs = t.value("max_epochs", cfg.train.max_epochs);
    cfg.train.patience = t.value("patience", cfg.train.patience);
    cfg.train.min_delta = t.value("min_delta", cfg.train.min_delta);
    cfg.train.seed = t.value("seed", j.value("seed", cfg.seed));
  } else {
    cfg.train.seed = j.value("seed", cfg.seed);
  }
  cfg.runs = j.value("runs", cfg.runs);
  if (j.contains("split")) {
    cfg.split_ratio = j.at("split").value("ratio", cfg.split_ratio);
    cfg.split_seed = j.at("split").value("seed", cfg.split_seed);
  }
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(read_json_file(path));
}

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void manifest_record(const std::string& run_dir, const ExperimentConfig& cfg,
                     const std::string& name, const std::string& content,
                     const std::string& status) {
  const fs::path path = fs::path(run_dir) / "manifest.json";
  json manifest;
  if (fs::exists(path)) {
    manifest = read_json_file(path.string());
  } else {
    manifest = {{"pipeline_hash", cfg.pipeline_hash()},
                {"config", cfg.canonical_json()},
                {"version", "0.1.0"},
                {"files", json::array()}};
  }
  manifest["files"].push_back({{"name", name},
                               {"bytes", content.size()},
                               {"fnv1a64", hex64(fnv1a64(content))},
                               {"written_at", iso_now()},
                               {"status", status}});
  write_text_file(path.string(), manifest.dump(2) + "\n");
}

}  // namespace

std::string write_artifact(const ExperimentConfig& cfg, const std::string& name,
                           const std::string& content) {
  const fs::path dir = cfg.run_dir();
  fs::create_directories(dir);
  fs::path target = dir / name;

  std::string status = "written";
  if (fs::exists(target)) {
    if (read_text_file(target.string()) == content) {
      manifest_record(dir.string(), cfg, name, content, "unchanged");
      return target.string();
    }
    // append-only: never overwrite differing content in place
    const fs::path stem = target.stem();
    const fs::path ext = target.extension();
    int v = 2;
    fs::path candidate;
    do {
      candidate = dir / (stem.string() + ".v" + std::to_string(v) + ext.string());
      ++v;
    } while (fs::exists(candidate));
    target = candidate;
    status = "versioned";
  }
  write_text_file(target.string(), content);
  manifest_record(dir.string(), cfg, target.filename().string(), content, status);
  return target.string();
}

PrepArtifacts run_prep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dataset_path.empty()) throw std::invalid_argument("prep: dataset path missing");

  const Dataset raw = load_csv(cfg.dataset_path, cfg.label_column, cfg.positive_label);
  if (static_cast<std::size_t>(cfg.circuit.qubits) > raw.feature_count())
    throw std::invalid_argument("prep: requested " + std::to_string(cfg.circuit.qubits) +
                                " components from " + std::to_string(raw.feature_count()) +
                                " features");
  const auto [train_raw, test_raw] = split(raw, cfg.split_ratio, cfg.split_seed);
  const PreprocessPlan plan = fit_preprocess(train_raw, cfg.circuit.qubits);

  PrepArtifacts art;
  art.run_dir = cfg.run_dir();
  art.train_rows = train_raw.size();
  art.test_rows = test_raw.size();

  json plan_j = to_json(plan);
  plan_j["config_hash"] = cfg.config_hash();
  plan_j["split_seed"] = cfg.split_seed;
  art.plan_path = write_artifact(cfg, "plan.json", dump_checked(plan_j));
  art.train_path =
      write_artifact(cfg, "train.json", dump_checked(to_json(transform_dataset(plan, train_raw))));
  art.test_path =
      write_artifact(cfg, "test.json", dump_checked(to_json(transform_dataset(plan, test_raw))));
  return art;
}

namespace {

Dataset load_split(const ExperimentConfig& cfg, const char* name) {
  const fs::path path = fs::path(cfg.run_dir()) / name;
  if (!fs::exists(path)) run_prep(cfg);
  return dataset_from_json(read_json_file(path.string()));
}

std::string history_csv(const TrainResult& result) {
  std::ostringstream out;
  out << "epoch,cost,executions\n";
  for (const EpochRecord& r : result.history)
    out << r.epoch << ',' << csv_double(r.cost) << ',' << r.executions << '\n';
  return out.str();
}

}  // namespace

TrainArtifacts run_training(const ExperimentConfig& cfg, ModelKind which) {
  cfg.validate();
  const Dataset train_set = load_split(cfg, "train.json");

  Rng rng(cfg.train.seed);
  TrainArtifacts art;
  const std::string name = model_kind_name(which);

  if (which == ModelKind::M3) {
    TrainConfig tc = cfg.train;
    if (!tc.is_spsa())
      throw std::invalid_argument("train m3: select the SPSA optimizer (sampled loss)");
    const ThresholdPolicy policy{
        cfg.accept_level < 0 ? cfg.circuit.qubits : cfg.accept_level, cfg.max_attempts};
    Rng stream = rng.split(13);
    art.result = train_m3_constrained(train_set, cfg.circuit, tc, policy, stream);
  } else {
    const ModelVariant variant = (which == ModelKind::M1) ? ModelVariant::M1 : ModelVariant::M2;
    Rng stream = rng.split(which == ModelKind::M1 ? 11 : 12);
    art.result = train(train_set, cfg.circuit, cfg.train, variant, stream);
  }

  art.model_path = write_artifact(
      cfg, "model_" + name + ".json",
      dump_checked(model_to_json(art.result.weights, cfg.circuit, name, cfg.train.seed)));
  art.history_path = write_artifact(cfg, "history_" + name + ".csv", history_csv(art.result));
  return art;
}

EvalArtifacts run_evaluation(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset test_set = load_split(cfg, "test.json");
  const std::string suffix = cfg.noise ? "_noisy" : "";

  EvalArtifacts art;
  json report_cells = json::array();
  std::ostringstream decisions;
  decisions << "run,point_id,model,label,shots_used,accepted\n";
  std::ostringstream table;
  table << "model,qubits,noise,avg_executions,acc,pre,rec,f1\n";

  for (ModelKind model : cfg.models) {
    // weight sharing: M3 is evaluated with the M2-trained weights
    const std::string source = (model == ModelKind::M1) ? "m1" : "m2";
    const fs::path model_path = fs::path(cfg.run_dir()) / ("model_" + source + ".json");
    if (!fs::exists(model_path))
      throw std::invalid_argument("eval: missing model file '" + model_path.string() +
                                  "'; run train first");
    const ModelFile mf = model_from_json(read_json_file(model_path.string()));
    if (mf.spec.qubits != cfg.circuit.qubits)
      throw std::invalid_argument("eval: model qubit count does not match config");

    EvalOptions opts;
    opts.model = model;
    opts.shots = cfg.shots;
    opts.policy = ThresholdPolicy{cfg.accept_level, cfg.max_attempts};
    opts.noise = cfg.noise;
    opts.runs = cfg.runs;

    Rng rng(cfg.seed);
    Rng eval_rng = rng.split(100 + static_cast<std::uint64_t>(model) * 2 +
                             (cfg.noise.has_value() ? 1 : 0));
    const MetricsReport report = evaluate(test_set, cfg.circuit, mf.weights, opts, eval_rng);
    art.cells.push_back(report);
    report_cells.push_back(to_json(report));

    for (const DecisionRecord& d : report.decisions)
      decisions << d.run << ',' << d.point_id << ',' << report.model << ','
                << label_name(d.label) << ',' << d.shots_used << ','
                << (d.accepted ? "true" : "false") << '\n';

    table << report.model << ',' << cfg.circuit.qubits << ','
          << (report.noisy ? "YES" : "NO") << ',' << csv_double(report.avg_executions) << ','
          << csv_double(report.mean_scores.accuracy) << ','
          << csv_double(report.mean_scores.precision) << ','
          << csv_double(report.mean_scores.recall) << ',' << csv_double(report.mean_scores.f1)
          << '\n';
  }

  json report_j = {{"config_hash", cfg.config_hash()},
                   {"seed", cfg.seed},
                   {"circuit", to_json(cfg.circuit)},
                   {"test_rows", test_set.size()},
                   {"cells", report_cells}};
  art.report_path = write_artifact(cfg, "report" + suffix + ".json", dump_checked(report_j));
  art.decisions_path = write_artifact(cfg, "decisions" + suffix + ".csv", decisions.str());
  art.table_path = write_artifact(cfg, "table" + suffix + ".csv", table.str());
  return art;
}

std::string theory_sweep_csv(const TheorySweep& sweep) {
  std::ostringstream out;
  out << "N,k,l,delta,eps,T,p_succ,p_avg_noisy,p_u,E_T,stirling_coeff";
  if (sweep.mc_trials > 0) out << ",mc_p_u,mc_p_u_se,mc_shots,mc_shots_se";
  out << '\n';

  Rng rng(sweep.seed);
  std::uint64_t mc_key = 0;
  for (int n : sweep.n_values) {
    if (n < 3 || n % 2 == 0)
      throw std::invalid_argument("theory sweep: N must be odd and >= 3");
    const int k = (n - 1) / 2;
    std::vector<int> levels = sweep.accept_levels;
    if (levels.empty())
      for (int l = k + 1; l <= n; ++l) levels.push_back(l);
    for (int l : levels) {
      if (l < k + 1 || l > n) continue;
      for (double delta : sweep.deltas) {
        for (double eps : sweep.eps_values) {
          for (std::uint64_t shots : sweep.shot_values) {
            const auto [p0, p1] = unambiguous_probs(n, delta, l);
            out << n << ',' << k << ',' << l << ',' << csv_double(delta) << ','
                << csv_double(eps) << ',' << shots << ','
                << csv_double(p_multishot(p_succ_oneshot(delta), shots)) << ','
                << csv_double(p_succ_avg_noisy(n, delta, eps)) << ','
                << csv_double(p_unambiguous(p0, p1)) << ','
                << csv_double(expected_shots(n, l)) << ','
                << csv_double(stirling_coefficient(k));
            if (sweep.mc_trials > 0) {
              Rng stream = rng.split(mc_key++);
              const McUnambiguousResult mc =
                  mc_unambiguous(n, delta, l, eps, sweep.mc_trials, stream);
              out << ',' << csv_double(mc.p_u) << ',' << csv_double(mc.p_u_stderr) << ','
                  << csv_double(mc.mean_shots) << ',' << csv_double(mc.mean_shots_stderr);
            }
            out << '\n';
          }
        }
      }
    }
  }
  return out.str();
}

}  // namespace uqc
