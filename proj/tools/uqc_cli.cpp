// Experiment front-end: prep | train | eval | theory | mc-check.
// Exit codes: 0 success, 2 validation error, 3 numeric failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqc/experiment.hpp"

namespace {

uqc::ExperimentConfig load_cfg(const std::string& config_path, const std::string& seed_override,
                               const std::string& out_override) {
  uqc::ExperimentConfig cfg = uqc::load_config(config_path);
  if (!seed_override.empty()) {
    cfg.seed = std::stoull(seed_override);
    cfg.train.seed = cfg.seed;
  }
  if (!out_override.empty()) cfg.out_dir = out_override;
  return cfg;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    out.push_back(std::stoi(csv.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    out.push_back(std::stod(csv.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unambiguous variational quantum classifier toolkit"};
  app.require_subcommand(1);

  std::string config_path, seed_override, out_override;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    cmd->add_option("--config", config_path, "experiment config JSON")
        ->required(config_required);
    cmd->add_option("--seed", seed_override, "master seed override");
    cmd->add_option("--out", out_override, "output directory override");
  };

  CLI::App* prep = app.add_subcommand("prep", "preprocess a dataset (split, scale, PCA)");
  add_common(prep, true);

  CLI::App* train_cmd = app.add_subcommand("train", "train a model variant");
  add_common(train_cmd, true);
  std::string train_model = "m2";
  std::string train_optimizer;
  train_cmd->add_option("--model", train_model, "m1 | m2 | m3 (default m2)");
  train_cmd->add_option("--optimizer", train_optimizer, "adam | spsa (overrides config)");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate trained models on the test split");
  add_common(eval_cmd, true);

  CLI::App* theory_cmd = app.add_subcommand("theory", "closed-form sweep table");
  std::string n_list = "3,5,7", l_list, delta_list = "0,0.25,0.5,0.75,1", eps_list = "0,0.01",
              shot_list = "1,16,1024", theory_out;
  std::uint64_t mc_trials = 0, theory_seed = 42;
  theory_cmd->add_option("--n", n_list, "odd qubit counts, comma separated");
  theory_cmd->add_option("--l", l_list, "acceptance levels (default: all valid)");
  theory_cmd->add_option("--delta", delta_list, "separation levels");
  theory_cmd->add_option("--eps", eps_list, "depolarizing probabilities");
  theory_cmd->add_option("--shots", shot_list, "shot counts T");
  theory_cmd->add_option("--mc-trials", mc_trials, "append Monte Carlo columns");
  theory_cmd->add_option("--mc-seed", theory_seed, "Monte Carlo seed");
  theory_cmd->add_option("--out-file", theory_out, "write CSV here (default stdout)");

  CLI::App* mc_cmd = app.add_subcommand("mc-check", "Monte Carlo vs closed-form cross-check");
  int mc_n = 5, mc_l = 4;
  double mc_delta = 0.5, mc_eps = 0.0;
  std::uint64_t mc_n_trials = 100000, mc_seed = 42;
  mc_cmd->add_option("--n", mc_n, "odd qubit count");
  mc_cmd->add_option("--l", mc_l, "acceptance level");
  mc_cmd->add_option("--delta", mc_delta, "separation level");
  mc_cmd->add_option("--eps", mc_eps, "depolarizing probability");
  mc_cmd->add_option("--trials", mc_n_trials, "Monte Carlo trials");
  mc_cmd->add_option("--mc-seed", mc_seed, "seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prep->parsed()) {
      const auto cfg = load_cfg(config_path, seed_override, out_override);
      const auto art = uqc::run_prep(cfg);
      std::cout << "prep: " << art.train_rows << " train / " << art.test_rows
                << " test rows -> " << art.run_dir << "\n";
    } else if (train_cmd->parsed()) {
      auto cfg = load_cfg(config_path, seed_override, out_override);
      if (!train_optimizer.empty()) {
        if (train_optimizer == "adam")
          cfg.train.optimizer = uqc::AdamParams{};
        else if (train_optimizer == "spsa")
          cfg.train.optimizer = uqc::SpsaParams{};
        else
          throw std::invalid_argument("unknown optimizer '" + train_optimizer + "'");
      }
      const auto which = uqc::model_kind_from_name(train_model);
      const auto art = uqc::run_training(cfg, which);
      const auto& h = art.result.history;
      std::cout << "train " << train_model << ": " << h.size() << " epochs";
      if (!h.empty()) std::cout << ", final cost " << h.back().cost;
      std::cout << ", executions " << art.result.total_executions << "\n"
                << "model: " << art.model_path << "\nhistory: " << art.history_path << "\n";
      if (art.result.diverged) {
        std::cerr << "training diverged: non-finite cost\n";
        return 3;
      }
    } else if (eval_cmd->parsed()) {
      const auto cfg = load_cfg(config_path, seed_override, out_override);
      const auto art = uqc::run_evaluation(cfg);
      for (const auto& cell : art.cells)
        std::printf("%-3s %-5s acc=%.4f pre=%.4f rec=%.4f f1=%.4f auc=%.4f exec=%.3f\n",
                    cell.model.c_str(), cell.noisy ? "noisy" : "clean",
                    cell.mean_scores.accuracy, cell.mean_scores.precision,
                    cell.mean_scores.recall, cell.mean_scores.f1, cell.mean_roc_auc,
                    cell.avg_executions);
      std::cout << "report: " << art.report_path << "\n";
    } else if (theory_cmd->parsed()) {
      uqc::TheorySweep sweep;
      sweep.n_values = parse_int_list(n_list);
      if (!l_list.empty()) sweep.accept_levels = parse_int_list(l_list);
      sweep.deltas = parse_double_list(delta_list);
      sweep.eps_values = parse_double_list(eps_list);
      sweep.shot_values.clear();
      for (int t : parse_int_list(shot_list)) sweep.shot_values.push_back(t);
      sweep.mc_trials = mc_trials;
      sweep.seed = theory_seed;
      const std::string csv = uqc::theory_sweep_csv(sweep);
      if (theory_out.empty())
        std::cout << csv;
      else {
        uqc::write_text_file(theory_out, csv);
        std::cout << "theory sweep: " << theory_out << "\n";
      }
    } else if (mc_cmd->parsed()) {
      uqc::Rng rng(mc_seed);
      const auto mc = uqc::mc_unambiguous(mc_n, mc_delta, mc_l, mc_eps, mc_n_trials, rng);
      const auto [p0, p1] = uqc::unambiguous_probs(mc_n, mc_delta, mc_l);
      const double want_pu = uqc::p_unambiguous(p0, p1);
      const double want_et = uqc::expected_shots(mc_n, mc_l);
      std::printf("p_u: mc=%.6f +- %.6f, closed form %.6f\n", mc.p_u, mc.p_u_stderr, want_pu);
      std::printf("E(T): mc=%.6f +- %.6f, closed form %.6f\n", mc.mean_shots,
                  mc.mean_shots_stderr, want_et);
      const bool ok = std::abs(mc.p_u - want_pu) <= 3.0 * mc.p_u_stderr + 10.0 * mc_eps * mc_eps &&
                      std::abs(mc.mean_shots - want_et) <=
                          3.0 * mc.mean_shots_stderr + 10.0 * mc_eps * mc_eps;
      std::cout << (ok ? "within 3 sigma\n" : "OUTSIDE 3 sigma\n");
      if (!ok) return 3;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
