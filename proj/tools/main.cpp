#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strength/config.hpp"
#include "strength/datagen.hpp"
#include "strength/elo.hpp"
#include "strength/experiments.hpp"
#include "strength/report.hpp"

using namespace strength;
namespace fs = std::filesystem;

namespace {

// Collects --key value flags and overlays them on the config file.
class Options {
 public:
  explicit Options(CLI::App* cmd) : cmd_(cmd) {
    cmd->add_option("--config", config_path_, "flat key=value config file");
  }

  void bind(const std::string& flag, const std::string& key,
            const std::string& help) {
    storage_.push_back(std::make_unique<std::string>());
    std::string* slot = storage_.back().get();
    keys_.push_back(key);
    cmd_->add_option(flag, *slot, help);
  }

  eval::Config resolve() const {
    eval::Config config = config_path_.empty()
                              ? eval::Config{}
                              : eval::Config::from_file(config_path_);
    for (size_t i = 0; i < keys_.size(); ++i) {
      if (!storage_[i]->empty()) config.set(keys_[i], *storage_[i]);
    }
    return config;
  }

 private:
  CLI::App* cmd_;
  std::string config_path_;
  std::vector<std::string> keys_;
  std::vector<std::unique_ptr<std::string>> storage_;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stoi(item));
  }
  if (values.empty()) throw std::runtime_error("empty integer list: " + text);
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(item);
  }
  return values;
}

game::GameSpec spec_from(const eval::Config& config) {
  return game::make_spec(config.get("game", "hex"), config.get_int("board", 5));
}

scorer::ScorerParams params_from(const eval::Config& config,
                                 const game::GameSpec& spec) {
  const std::string path = config.get("params", "");
  if (!path.empty()) return scorer::load_checkpoint(path);
  // Untrained scorer: uniform priors, zero value and strength everywhere.
  scorer::ScorerSpec s;
  s.input_length = spec.feature_length();
  s.hidden_width = config.get_int("hidden", 64);
  s.hidden_layers = config.get_int("layers", 1);
  s.action_count = spec.action_count();
  s.rank_head_size = config.get_int("rank-head", 0);
  return {s, std::vector<double>(s.param_count(), 0.0)};
}

train::TrainConfig train_config_from(const eval::Config& config) {
  train::TrainConfig tc;
  tc.pairs_per_rank = config.get_int("m", 7);
  tc.learning_rate = config.get_double("lr", 0.01);
  tc.lr_drop_step = config.get_int("lr-drop-step", 0);
  tc.steps = config.require_int("steps");
  tc.include_r_infinity = config.get_bool("infinity", true);
  tc.w_policy = config.get_double("w-policy", 1.0);
  tc.w_value = config.get_double("w-value", 1.0);
  tc.w_strength = config.get_double("w-strength", 1.0);
  tc.w_sl = config.get_double("w-sl", 0.0);
  tc.log_interval = config.get_int("log-interval", 100);
  tc.checkpoint_interval = config.get_int("checkpoint-interval", 0);
  tc.seed = config.get_seed("seed", 1);
  return tc;
}

infer::PredictionConfig prediction_config_from(const eval::Config& config) {
  infer::PredictionConfig pc;
  pc.repeats = config.get_int("repeats", 500);
  pc.tolerance = config.get_int("tolerance", 0);
  pc.filter = infer::parse_filter(config.get("filter", "all"));
  pc.seed = config.get_seed("seed", 1);
  return pc;
}

void finish(const eval::Report& report, const eval::Config& config,
            const std::string& out_dir, const std::string& name,
            std::chrono::steady_clock::time_point started) {
  fs::create_directories(out_dir);
  eval::Report final_report = report;
  final_report.name = name;
  final_report.config_snapshot = config.snapshot();
  const std::string base = (fs::path(out_dir) / (name + ".report")).string();
  final_report.write(base);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  eval::Report::write_meta(base, seconds);
  std::cout << "wrote " << base << ".txt\n";
}

eval::Table curve_table(const infer::AccuracyCurve& curve) {
  eval::Table table;
  table.title = "rank prediction accuracy (95% CI, normal approximation)";
  table.columns = {"games", "rank", "accuracy", "ci_low", "ci_high"};
  for (const auto& cell : curve.cells) {
    table.rows.push_back({std::to_string(cell.games),
                          std::to_string(cell.rank_id),
                          eval::fmt_double(cell.accuracy),
                          eval::fmt_double(cell.ci_low),
                          eval::fmt_double(cell.ci_high)});
  }
  return table;
}

eval::Table curve_mean_table(const infer::AccuracyCurve& curve) {
  eval::Table table;
  table.title = "mean accuracy over ranks";
  table.columns = {"games", "accuracy"};
  for (size_t i = 0; i < curve.game_counts.size(); ++i) {
    table.rows.push_back({std::to_string(curve.game_counts[i]),
                          eval::fmt_double(curve.mean_accuracy[i])});
  }
  return table;
}

int run_gen_data(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto spec = spec_from(config);
  datagen::DatagenConfig dc;
  dc.spec = spec;
  const auto budgets = parse_int_list(config.get("tiers", "512,128,32,8,2"));
  const double temperature = config.get_double("temperature", 0.3);
  for (size_t t = 0; t < budgets.size(); ++t) {
    dc.tiers.push_back({static_cast<int>(t) + 1, budgets[t], temperature});
  }
  dc.train_games = config.get_int("train-games", 300);
  dc.candidate_games = config.get_int("candidate-games", 20);
  dc.query_games = config.get_int("query-games", 60);
  dc.seed = config.get_seed("seed", 1);
  const std::string out_dir = config.get("out", "out/data");

  const auto params = params_from(config, spec);
  datagen::generate_dataset(dc, params, out_dir);

  eval::Report report;
  eval::Table table;
  table.title = "generated games";
  table.columns = {"tier", "simulations", "train", "candidate", "query"};
  for (const auto& tier : dc.tiers) {
    table.rows.push_back({std::to_string(tier.tier),
                          std::to_string(tier.simulations),
                          std::to_string(dc.train_games),
                          std::to_string(dc.candidate_games),
                          std::to_string(dc.query_games)});
  }
  report.add_table(table);
  finish(report, config, out_dir, "gen-data", started);
  return 0;
}

int run_train(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto train_ds = data::load_rank_dataset(config.require("data"));
  const auto tc = train_config_from(config);
  scorer::ScorerSpec sspec;
  sspec.input_length = train_ds.spec.feature_length();
  sspec.hidden_width = config.get_int("hidden", 64);
  sspec.hidden_layers = config.get_int("layers", 1);
  sspec.action_count = train_ds.spec.action_count();
  sspec.rank_head_size = config.get_int("rank-head", 0);

  const std::string out_dir = config.get("out", "out/train");
  fs::create_directories(out_dir);
  const std::string log_path = (fs::path(out_dir) / "train_log.txt").string();
  fs::remove(log_path);  // the log itself is append-only within a run
  const auto result = train::train(
      train_ds, sspec, tc, log_path,
      (fs::path(out_dir) / "scorer.ckpt").string());

  eval::Report report;
  eval::Table table;
  table.title = "training losses (logged steps)";
  table.columns = {"step", "lr", "strength", "policy", "value"};
  for (const auto& row : result.log) {
    table.rows.push_back({std::to_string(row.step),
                          eval::fmt_double(row.learning_rate),
                          eval::fmt_double(row.strength_loss),
                          eval::fmt_double(row.policy_loss),
                          eval::fmt_double(row.value_loss)});
  }
  report.add_table(table);
  if (!result.log.empty()) {
    eval::Table means;
    means.title = "final per-rank mean strength scores";
    means.columns = {"row", "mean_beta"};
    const auto& last = result.log.back();
    for (size_t i = 0; i < last.row_means.size(); ++i) {
      const bool is_inf =
          tc.include_r_infinity && i + 1 == last.row_means.size();
      means.rows.push_back(
          {is_inf ? "inf" : std::to_string(train_ds.rank_ids[i]),
           eval::fmt_double(last.row_means[i])});
    }
    report.add_table(means);
  }
  finish(report, config, out_dir, "train", started);
  return 0;
}

int run_profile(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto candidate = data::load_rank_dataset(config.require("candidate"));
  const auto params = scorer::load_checkpoint(config.require("params"));
  const auto profile = infer::build_profile(params, candidate);
  const std::string out_dir = config.get("out", "out/profile");
  fs::create_directories(out_dir);
  infer::save_profile(profile, (fs::path(out_dir) / "profile.txt").string());

  eval::Report report;
  eval::Table table;
  table.title = "per-rank composite strength scores";
  table.columns = {"rank", "mean_beta", "pairs"};
  for (int i = 0; i < profile.rank_count(); ++i) {
    table.rows.push_back({std::to_string(profile.rank_ids[i]),
                          eval::fmt_double(profile.overall[i]),
                          std::to_string(profile.overall_count[i])});
  }
  report.add_table(table);
  finish(report, config, out_dir, "profile", started);
  return 0;
}

int run_predict(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto params = scorer::load_checkpoint(config.require("params"));
  const auto profile = infer::load_profile(config.require("profile"));
  const auto games = data::read_records(config.require("games"));
  if (games.empty()) throw std::runtime_error("no games to predict");
  const auto filter = infer::parse_filter(config.get("filter", "all"));
  Rng rng(config.get_seed("seed", 1));

  double sum = 0.0;
  int64_t count = 0;
  for (const auto& rec : games) {
    for (const auto& [depth, beta] :
         infer::score_game(params, rec, filter, &rng)) {
      sum += beta;
      ++count;
    }
  }
  const double query_mean = sum / static_cast<double>(count);
  const int predicted = infer::predict_rank(profile, query_mean);

  eval::Report report;
  eval::Table table;
  table.title = "query composite " + eval::fmt_double(query_mean) +
                " -> predicted rank " + std::to_string(predicted);
  table.columns = {"rank", "mean_beta", "abs_distance"};
  for (int i = 0; i < profile.rank_count(); ++i) {
    table.rows.push_back(
        {std::to_string(profile.rank_ids[i]),
         eval::fmt_double(profile.overall[i]),
         eval::fmt_double(std::abs(query_mean - profile.overall[i]))});
  }
  report.add_table(table);
  std::cout << "predicted rank: " << predicted << " (composite "
            << eval::fmt_double(query_mean) << ")\n";
  finish(report, config, config.get("out", "out/predict"), "predict", started);
  return 0;
}

int run_accuracy_curve(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto params = scorer::load_checkpoint(config.require("params"));
  const auto profile = infer::load_profile(config.require("profile"));
  const auto query = data::load_rank_dataset(config.require("query"));
  const auto counts =
      parse_int_list(config.get("game-counts", "1,2,5,10,15,20"));
  const auto pc = prediction_config_from(config);

  const auto curve = infer::accuracy_curve(params, profile, query, counts, pc);
  eval::Report report;
  report.add_table(curve_table(curve));
  report.add_table(curve_mean_table(curve));
  finish(report, config, config.get("out", "out/accuracy"), "accuracy-curve",
         started);
  return 0;
}

int run_play(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto spec = spec_from(config);
  const auto params = params_from(config, spec);
  infer::StrengthProfile profile;
  const infer::StrengthProfile* profile_ptr = nullptr;
  if (config.has("profile")) {
    profile = infer::load_profile(config.require("profile"));
    profile_ptr = &profile;
  }
  const int sims = config.get_int("sims", 800);
  const double c_puct = config.get_double("c-puct", 1.25);
  const double c1 = config.get_double("c1", 1.0);

  auto self = eval::make_agent(config.require("agent"), params, profile_ptr,
                               sims, c_puct, c1);
  auto opponent = eval::make_agent(config.get("opponent", "vanilla"), params,
                                   profile_ptr, sims, c_puct, c1);
  const int games = config.get_int("games", 1);
  const uint64_t seed = config.get_seed("seed", 1);
  const std::string out_dir = config.get("out", "out/play");
  fs::create_directories(out_dir);

  const int opening_plies = config.get_int("opening-moves", 0);
  std::vector<data::GameRecord> records;
  double score = 0.0;
  for (int g = 0; g < games; ++g) {
    const uint64_t game_seed = mix_seed(seed, g);
    std::vector<game::Action> opening;
    if (opening_plies > 0) {
      opening = datagen::random_opening(spec, opening_plies,
                                        mix_seed(seed, 0xb00c + g / 2));
    }
    const auto* prefix = opening_plies > 0 ? &opening : nullptr;
    data::GameRecord rec;
    if (g % 2 == 0) {
      rec = datagen::play_game(*self, *opponent, spec, game_seed,
                               "play-" + std::to_string(g), 0, 0, prefix);
      score += rec.outcome > 0 ? 1.0 : (rec.outcome == 0 ? 0.5 : 0.0);
    } else {
      rec = datagen::play_game(*opponent, *self, spec, game_seed,
                               "play-" + std::to_string(g), 0, 0, prefix);
      score += rec.outcome < 0 ? 1.0 : (rec.outcome == 0 ? 0.5 : 0.0);
    }
    records.push_back(rec);
  }
  data::write_records((fs::path(out_dir) / "games.jsonl").string(), spec,
                      records);

  eval::Report report;
  eval::Table table;
  table.title = "match result";
  table.columns = {"agent", "opponent", "games", "score", "win_rate"};
  table.rows.push_back({self->name(), opponent->name(), std::to_string(games),
                        eval::fmt_double(score, 1),
                        eval::fmt_double(score / games)});
  report.add_table(table);
  finish(report, config, out_dir, "play", started);
  return 0;
}

int run_sweep(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto spec = spec_from(config);
  const auto params = scorer::load_checkpoint(config.require("params"));
  const auto profile = infer::load_profile(config.require("profile"));
  const auto mode = search::parse_mode(config.get("mode", "se"));
  const auto targets = parse_int_list(config.get("targets", "1,2,3,4,5"));
  std::vector<double> sa_z;
  if (mode == search::SearchMode::kSa) {
    sa_z = parse_double_list(config.require("sa-z"));
  }
  const auto result = eval::strength_sweep(
      params, profile, mode, targets, sa_z, config.get_int("baseline-rank", 3),
      spec, config.get_int("games", 200), config.get_int("sims", 800),
      config.get_double("c-puct", 1.25), config.get_double("c1", 1.0),
      config.get_seed("seed", 1), config.get_int("opening-moves", 2),
      config.get("target-mode", "overall") == "per-depth");

  eval::Report report;
  eval::Table table;
  table.title = "win rate vs baseline (95% CI)";
  table.columns = {"target_rank", "games", "win_rate", "ci_low", "ci_high"};
  for (const auto& cell : result.cells) {
    table.rows.push_back({std::to_string(cell.target_rank),
                          std::to_string(cell.games),
                          eval::fmt_double(cell.win_rate),
                          eval::fmt_double(cell.ci_low),
                          eval::fmt_double(cell.ci_high)});
  }
  report.add_table(table);
  eval::Table rho;
  rho.title = "monotonicity";
  rho.columns = {"spearman_rho(rank, win_rate)"};
  rho.rows.push_back({eval::fmt_double(result.spearman)});
  report.add_table(rho);
  finish(report, config, config.get("out", "out/sweep"), "sweep", started);
  return 0;
}

int run_round_robin(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto spec = spec_from(config);
  const auto params = params_from(config, spec);
  infer::StrengthProfile profile;
  const infer::StrengthProfile* profile_ptr = nullptr;
  if (config.has("profile")) {
    profile = infer::load_profile(config.require("profile"));
    profile_ptr = &profile;
  }
  const int sims = config.get_int("sims", 800);
  const double c_puct = config.get_double("c-puct", 1.25);
  const double c1 = config.get_double("c1", 1.0);

  std::vector<std::unique_ptr<agent::Agent>> agents;
  std::vector<agent::Agent*> ptrs;
  for (const auto& text : parse_string_list(config.require("agents"))) {
    agents.push_back(
        eval::make_agent(text, params, profile_ptr, sims, c_puct, c1));
    ptrs.push_back(agents.back().get());
  }
  const auto table =
      eval::round_robin(ptrs, spec, config.get_int("games-per-pair", 50),
                        config.get_seed("seed", 1),
                        config.get_int("opening-moves", 2));
  const std::string out_dir = config.get("out", "out/round-robin");
  fs::create_directories(out_dir);
  eval::save_win_table(table, (fs::path(out_dir) / "wintable.txt").string());

  eval::Report report;
  eval::Table wins;
  wins.title = "round robin wins (row beats column)";
  wins.columns = {"agent"};
  for (const auto& name : table.names) wins.columns.push_back(name);
  for (int i = 0; i < table.size(); ++i) {
    std::vector<std::string> row{table.names[i]};
    for (int j = 0; j < table.size(); ++j) {
      row.push_back(i == j ? "-" : eval::fmt_double(table.wins[i][j], 1));
    }
    wins.rows.push_back(row);
  }
  report.add_table(wins);
  finish(report, config, out_dir, "round-robin", started);
  return 0;
}

int run_elo(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto table = eval::load_win_table(config.require("table"));
  const auto ratings = eval::fit_elo(table);
  const std::string out_dir = config.get("out", "out/elo");
  fs::create_directories(out_dir);

  eval::Report report;
  eval::Table elo;
  elo.title = ratings.clipped
                  ? "elo ratings (mean 1500; degenerate agents clamped)"
                  : "elo ratings (mean 1500)";
  elo.columns = {"agent", "rating"};
  for (int i = 0; i < table.size(); ++i) {
    elo.rows.push_back(
        {table.names[i], eval::fmt_double(ratings.rating[i], 2)});
  }
  report.add_table(elo);
  {
    std::ofstream out((fs::path(out_dir) / "ratings.txt").string());
    for (int i = 0; i < table.size(); ++i) {
      out << table.names[i] << " " << eval::fmt_double(ratings.rating[i], 2)
          << "\n";
    }
  }
  finish(report, config, out_dir, "elo", started);
  return 0;
}

int run_move_acc(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto params = scorer::load_checkpoint(config.require("params"));
  const auto profile = infer::load_profile(config.require("profile"));
  const auto query = data::load_rank_dataset(config.require("query"));
  const auto mode = search::parse_mode(config.get("mode", "se"));
  const auto ranks = parse_int_list(config.get("ranks", "1,2,3,4,5"));
  std::vector<double> sa_z;
  if (mode == search::SearchMode::kSa) {
    sa_z = parse_double_list(config.require("sa-z"));
    if (sa_z.size() != ranks.size()) {
      throw std::runtime_error("sa-z needs one value per rank");
    }
  }
  const int games_per_rank = config.get_int("games-per-rank", 5);
  const int sims = config.get_int("sims", 800);
  const uint64_t seed = config.get_seed("seed", 1);

  eval::Report report;
  eval::Table table;
  table.title = "move prediction accuracy (" + search::mode_name(mode) + ")";
  table.columns = {"rank", "positions", "accuracy", "ci_low", "ci_high"};
  for (size_t t = 0; t < ranks.size(); ++t) {
    const int idx = query.index_of(ranks[t]);
    const auto& pool = query.records[idx];
    std::vector<data::GameRecord> games(
        pool.begin(),
        pool.begin() + std::min<size_t>(games_per_rank, pool.size()));
    const auto acc = eval::move_prediction_accuracy(
        params, &profile, mode, ranks[t], games, sims,
        config.get_double("c-puct", 1.25), config.get_double("c1", 1.0),
        mode == search::SearchMode::kSa ? sa_z[t] : 0.0,
        config.get_double("sa-filter", 0.1), mix_seed(seed, ranks[t]));
    table.rows.push_back(
        {std::to_string(acc.rank), std::to_string(acc.positions),
         eval::fmt_double(acc.accuracy), eval::fmt_double(acc.ci_low),
         eval::fmt_double(acc.ci_high)});
  }
  report.add_table(table);
  finish(report, config, config.get("out", "out/move-acc"), "move-acc",
         started);
  return 0;
}

int run_limited_rank(const eval::Config& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto train_ds = data::load_rank_dataset(config.require("data"));
  const auto candidate = data::load_rank_dataset(config.require("candidate"));
  const auto query = data::load_rank_dataset(config.require("query"));
  const auto kept = parse_int_list(config.require("kept"));

  scorer::ScorerSpec sspec;
  sspec.input_length = train_ds.spec.feature_length();
  sspec.hidden_width = config.get_int("hidden", 64);
  sspec.hidden_layers = config.get_int("layers", 1);
  sspec.action_count = train_ds.spec.action_count();
  const auto tc = train_config_from(config);
  const auto counts = parse_int_list(config.get("game-counts", "1,5,20"));
  const auto pc = prediction_config_from(config);

  const auto result = eval::limited_rank_experiment(
      train_ds, candidate, query, kept, sspec, tc, counts, pc);

  eval::Report report;
  eval::Table betas;
  betas.title = "full-candidate strength scores after limited-rank training";
  betas.columns = {"rank", "mean_beta"};
  for (int i = 0; i < result.profile.rank_count(); ++i) {
    betas.rows.push_back({std::to_string(result.profile.rank_ids[i]),
                          eval::fmt_double(result.profile.overall[i])});
  }
  report.add_table(betas);
  eval::Table ordering;
  ordering.title = "ordering";
  ordering.columns = {"betas_strictly_descending"};
  ordering.rows.push_back({result.betas_strictly_descending ? "yes" : "no"});
  report.add_table(ordering);
  report.add_table(curve_table(result.curve));
  report.add_table(curve_mean_table(result.curve));
  finish(report, config, config.get("out", "out/limited-rank"), "limited-rank",
         started);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "strengthkit: strength estimation and strength-targeted tree search "
      "for small board games"};
  app.require_subcommand(1);

  struct Sub {
    std::unique_ptr<Options> options;
    std::function<int(const eval::Config&)> run;
    CLI::App* cmd;
  };
  std::vector<Sub> subs;

  auto add_cmd = [&](const char* name, const char* help,
                     std::function<int(const eval::Config&)> fn,
                     const std::vector<std::array<const char*, 3>>& opts) {
    CLI::App* cmd = app.add_subcommand(name, help);
    auto options = std::make_unique<Options>(cmd);
    for (const auto& opt : opts) {
      options->bind(opt[0], opt[1], opt[2]);
    }
    subs.push_back({std::move(options), std::move(fn), cmd});
  };

  add_cmd("gen-data", "generate tiered self-play datasets", run_gen_data,
          {{"--game", "game", "hex or tictactoe"},
           {"--board", "board", "hex board size"},
           {"--tiers", "tiers", "simulation budgets, strongest first"},
           {"--temperature", "temperature", "visit-count softmax temperature"},
           {"--train-games", "train-games", "training games per tier"},
           {"--candidate-games", "candidate-games", "candidate games per tier"},
           {"--query-games", "query-games", "query games per tier"},
           {"--params", "params", "scorer checkpoint for the agents"},
           {"--seed", "seed", "base seed"},
           {"--out", "out", "output directory"}});
  add_cmd("train", "train the strength estimator", run_train,
          {{"--data", "data", "train split directory"},
           {"--steps", "steps", "training steps"},
           {"--m", "m", "state-action pairs per rank"},
           {"--lr", "lr", "initial learning rate"},
           {"--lr-drop-step", "lr-drop-step", "step after which lr halves"},
           {"--hidden", "hidden", "hidden width"},
           {"--layers", "layers", "hidden layers (1 or 2)"},
           {"--rank-head", "rank-head", "rank classification head size"},
           {"--infinity", "infinity", "include the infinity rank"},
           {"--w-policy", "w-policy", "policy loss weight"},
           {"--w-value", "w-value", "value loss weight"},
           {"--w-strength", "w-strength", "strength loss weight"},
           {"--w-sl", "w-sl", "rank classification loss weight"},
           {"--log-interval", "log-interval", "steps between log rows"},
           {"--checkpoint-interval", "checkpoint-interval",
            "steps between checkpoints"},
           {"--seed", "seed", "init/sampling seed"},
           {"--out", "out", "output directory"}});
  add_cmd("profile", "build per-rank strength profiles", run_profile,
          {{"--params", "params", "scorer checkpoint"},
           {"--candidate", "candidate", "candidate split directory"},
           {"--out", "out", "output directory"}});
  add_cmd("predict", "predict the rank of a set of games", run_predict,
          {{"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file"},
           {"--games", "games", "query record file (.jsonl)"},
           {"--filter", "filter", "all | first:K | last:K | one-per-game"},
           {"--seed", "seed", "seed (one-per-game filter)"},
           {"--out", "out", "output directory"}});
  add_cmd("accuracy-curve", "accuracy vs number of observed games",
          run_accuracy_curve,
          {{"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file"},
           {"--query", "query", "query split directory"},
           {"--game-counts", "game-counts", "comma-separated N values"},
           {"--repeats", "repeats", "resamples per N"},
           {"--tolerance", "tolerance", "0 or 1 ranks"},
           {"--filter", "filter", "move-range filter"},
           {"--seed", "seed", "resampling seed"},
           {"--out", "out", "output directory"}});
  add_cmd("play", "play matches with a configured agent", run_play,
          {{"--game", "game", "hex or tictactoe"},
           {"--board", "board", "hex board size"},
           {"--agent", "agent",
            "agent spec (se:2, sa:0.5, vanilla, tier:1:512)"},
           {"--opponent", "opponent", "opponent agent spec"},
           {"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file (se agents)"},
           {"--games", "games", "number of games"},
           {"--sims", "sims", "simulations per move"},
           {"--c-puct", "c-puct", "exploration constant"},
           {"--c1", "c1", "strength-difference weight"},
           {"--opening-moves", "opening-moves", "random opening plies per game pair"},
           {"--seed", "seed", "match seed"},
           {"--out", "out", "output directory"}});
  add_cmd("sweep", "win rate of strength-targeted agents vs a baseline",
          run_sweep,
          {{"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file"},
           {"--mode", "mode", "se or sa"},
           {"--targets", "targets", "target ranks"},
           {"--baseline-rank", "baseline-rank", "baseline SE rank"},
           {"--games", "games", "games per cell"},
           {"--sims", "sims", "simulations per move"},
           {"--c-puct", "c-puct", "exploration constant"},
           {"--c1", "c1", "strength-difference weight"},
           {"--sa-z", "sa-z", "z per target (sa mode)"},
           {"--target-mode", "target-mode", "overall or per-depth targets"},
           {"--opening-moves", "opening-moves", "random opening plies per game pair"},
           {"--seed", "seed", "seed"},
           {"--game", "game", "game kind"},
           {"--board", "board", "board size"},
           {"--out", "out", "output directory"}});
  add_cmd("round-robin", "round-robin tournament over agent specs",
          run_round_robin,
          {{"--agents", "agents", "comma-separated agent specs"},
           {"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file (se agents)"},
           {"--games-per-pair", "games-per-pair", "games per pair"},
           {"--opening-moves", "opening-moves", "random opening plies per game pair"},
           {"--sims", "sims", "default simulations"},
           {"--c-puct", "c-puct", "exploration constant"},
           {"--c1", "c1", "strength-difference weight"},
           {"--seed", "seed", "tournament seed"},
           {"--game", "game", "game kind"},
           {"--board", "board", "board size"},
           {"--out", "out", "output directory"}});
  add_cmd("elo", "fit elo ratings to a win table", run_elo,
          {{"--table", "table", "win table file from round-robin"},
           {"--out", "out", "output directory"}});
  add_cmd("move-acc", "move prediction accuracy against recorded games",
          run_move_acc,
          {{"--params", "params", "scorer checkpoint"},
           {"--profile", "profile", "profile file"},
           {"--query", "query", "held-out split directory"},
           {"--mode", "mode", "vanilla, se, or sa"},
           {"--ranks", "ranks", "ranks to evaluate"},
           {"--sa-z", "sa-z", "z per rank (sa mode)"},
           {"--sa-filter", "sa-filter", "sa filter ratio R"},
           {"--games-per-rank", "games-per-rank", "sampled games per rank"},
           {"--sims", "sims", "simulations per move"},
           {"--c-puct", "c-puct", "exploration constant"},
           {"--c1", "c1", "strength-difference weight"},
           {"--seed", "seed", "seed"},
           {"--out", "out", "output directory"}});
  add_cmd("limited-rank", "retrain on a tier subset, predict across all",
          run_limited_rank,
          {{"--data", "data", "train split directory"},
           {"--candidate", "candidate", "candidate split directory"},
           {"--query", "query", "query split directory"},
           {"--kept", "kept", "tiers kept for training"},
           {"--steps", "steps", "training steps"},
           {"--m", "m", "pairs per rank"},
           {"--lr", "lr", "learning rate"},
           {"--hidden", "hidden", "hidden width"},
           {"--layers", "layers", "hidden layers"},
           {"--infinity", "infinity", "include the infinity rank"},
           {"--game-counts", "game-counts", "curve N values"},
           {"--repeats", "repeats", "resamples per N"},
           {"--tolerance", "tolerance", "prediction tolerance"},
           {"--seed", "seed", "seed"},
           {"--out", "out", "output directory"}});

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& sub : subs) {
      if (sub.cmd->parsed()) {
        return sub.run(sub.options->resolve());
      }
    }
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
