#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "strength/datagen.hpp"
#include "test_util.hpp"

using namespace strength;

namespace {

scorer::ScorerParams zero_params(const game::GameSpec& spec) {
  scorer::ScorerSpec s;
  s.input_length = spec.feature_length();
  s.hidden_width = 8;
  s.hidden_layers = 1;
  s.action_count = spec.action_count();
  return {s, std::vector<double>(s.param_count(), 0.0)};
}

}  // namespace

TEST_CASE("tier config validation") {
  datagen::DatagenConfig config;
  config.spec = game::make_spec("hex", 5);
  config.tiers = {{1, 64, 0.3}, {2, 16, 0.3}, {3, 4, 0.3}};
  CHECK_NOTHROW(config.validate());

  config.tiers = {{1, 16, 0.3}, {2, 16, 0.3}};  // equal budgets, equal temps
  CHECK_THROWS(config.validate());

  config.tiers = {{1, 16, 0.2}, {2, 16, 0.5}};  // temps increase instead
  CHECK_NOTHROW(config.validate());

  config.tiers = {{1, 16, 0.3}};
  CHECK_THROWS(config.validate());
}

TEST_CASE("budget-1 agents play from the priors") {
  const auto spec = game::make_spec("hex", 4);
  const auto params = zero_params(spec);  // uniform priors
  const auto agent = datagen::make_tier_agent({9, 1, 0.3}, params, 1);
  agent->reseed(77);
  const auto state = game::initial_state(spec);

  // Uniform priors: decisions spread over the whole board.
  std::set<game::Action> seen;
  for (int i = 0; i < 200; ++i) seen.insert(agent->act(state));
  CHECK(seen.size() > 8);
}

TEST_CASE("temperature zero plays argmax visits") {
  const auto spec = game::make_spec("tictactoe", 3);
  const auto params = zero_params(spec);
  auto state = game::initial_state(spec);
  for (const int move : {0, 3, 1, 4}) state = game::apply(state, move);

  // Winning move 2 gets the most visits; temperature 0 must always take it.
  const auto agent = datagen::make_tier_agent({1, 300, 0.0}, params, 5);
  for (int i = 0; i < 5; ++i) {
    agent->reseed(i);
    CHECK(agent->act(state) == 2);
  }
}

TEST_CASE("play_game determinism and replay consistency") {
  const auto spec = game::make_spec("hex", 5);
  const auto params = zero_params(spec);
  auto a = datagen::make_tier_agent({1, 24, 0.3}, params, 0);
  auto b = datagen::make_tier_agent({2, 6, 0.3}, params, 0);

  const auto rec1 = datagen::play_game(*a, *b, spec, 999, "g0", 1, 2);
  const auto rec2 = datagen::play_game(*a, *b, spec, 999, "g0", 1, 2);
  CHECK(rec1.moves == rec2.moves);
  CHECK(rec1.outcome == rec2.outcome);
  data::validate_replay(rec1);
  CHECK(rec1.first_label == 1);
  CHECK(rec1.second_label == 2);

  const auto rec3 = datagen::play_game(*a, *b, spec, 1000, "g1", 1, 2);
  CHECK(rec1.moves != rec3.moves);  // overwhelmingly likely
}

TEST_CASE("generate_dataset: counts, splits, replayability") {
  const auto spec = game::make_spec("hex", 4);
  const auto params = zero_params(spec);
  datagen::DatagenConfig config;
  config.spec = spec;
  config.tiers = {{1, 24, 0.3}, {2, 6, 0.3}, {3, 2, 0.3}};
  config.train_games = 4;
  config.candidate_games = 2;
  config.query_games = 2;
  config.seed = 31;

  const std::string dir = test_util::temp_dir("datagen_out");
  std::filesystem::remove_all(dir);
  const auto summary = datagen::generate_dataset(config, params, dir);
  CHECK(summary.total_games == 3 * 8);
  CHECK(summary.files.size() == 9);

  std::set<std::string> ids;
  int replayed = 0;
  for (const auto& file : summary.files) {
    for (const auto& rec : data::read_records(file)) {
      data::validate_replay(rec);
      CHECK(ids.insert(rec.id).second);  // splits are disjoint
      CHECK(rec.first_label == rec.second_label);
      ++replayed;
    }
  }
  CHECK(replayed == 24);

  const auto train_ds = data::load_rank_dataset(dir + "/train");
  CHECK(train_ds.rank_count() == 3);
  for (int r = 0; r < 3; ++r) CHECK(train_ds.records[r].size() == 4);

  // Reruns reproduce the same bytes.
  const std::string dir2 = test_util::temp_dir("datagen_out2");
  std::filesystem::remove_all(dir2);
  datagen::generate_dataset(config, params, dir2);
  for (const char* split : {"train", "candidate", "query"}) {
    for (int tier = 1; tier <= 3; ++tier) {
      const auto path = [&](const std::string& base) {
        return base + "/" + split + "/tier_" + std::to_string(tier) + ".jsonl";
      };
      std::ifstream f1(path(dir)), f2(path(dir2));
      const std::string s1((std::istreambuf_iterator<char>(f1)),
                           std::istreambuf_iterator<char>());
      const std::string s2((std::istreambuf_iterator<char>(f2)),
                           std::istreambuf_iterator<char>());
      CHECK(s1 == s2);
    }
  }
}

TEST_CASE("higher budgets beat lower budgets") {
  const auto spec = game::make_spec("hex", 5);
  const auto params = zero_params(spec);
  // Desk-scale stand-ins for the acceptance tiers; 40 games is enough to see
  // a lopsided score between budgets 96 and 2.
  auto strong = datagen::make_tier_agent({1, 96, 0.3}, params, 0);
  auto weak = datagen::make_tier_agent({5, 2, 0.3}, params, 0);

  int strong_wins = 0;
  const int games = 40;
  for (int g = 0; g < games; ++g) {
    const uint64_t seed = mix_seed(4242, g);
    data::GameRecord rec;
    if (g % 2 == 0) {
      rec = datagen::play_game(*strong, *weak, spec, seed, "m", 1, 5);
      if (rec.outcome > 0) ++strong_wins;
    } else {
      rec = datagen::play_game(*weak, *strong, spec, seed, "m", 5, 1);
      if (rec.outcome < 0) ++strong_wins;
    }
  }
  CHECK(strong_wins >= games * 7 / 10);
}
