#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "strength/profile.hpp"
#include "test_util.hpp"

using namespace strength;

namespace {

scorer::ScorerSpec scorer_for(const game::GameSpec& spec, int rank_head = 0) {
  scorer::ScorerSpec s;
  s.input_length = spec.feature_length();
  s.hidden_width = 10;
  s.hidden_layers = 1;
  s.action_count = spec.action_count();
  s.rank_head_size = rank_head;
  return s;
}

// All-zero weights with a chosen strength-head bias: beta is constant.
scorer::ScorerParams constant_beta_params(const scorer::ScorerSpec& spec,
                                          double beta) {
  scorer::ScorerParams params{spec,
                              std::vector<double>(spec.param_count(), 0.0)};
  const size_t bb_index =
      spec.param_count() - 1 -
      (spec.rank_head_size > 0
           ? spec.rank_head_size * spec.hidden_width + spec.rank_head_size
           : 0);
  params.values[bb_index] = beta;
  return params;
}

}  // namespace

TEST_CASE("score_game lengths and filters") {
  const auto spec = game::make_spec("hex", 5);
  const auto rec = test_util::random_record(spec, 42, 1, "g");
  const auto params = scorer::init_params(scorer_for(spec), 7);

  const auto all = infer::score_game(params, rec, {infer::FilterKind::kAll, 0});
  CHECK(all.size() == rec.moves.size());
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].first == static_cast<int>(i));
  }

  const auto first5 =
      infer::score_game(params, rec, {infer::FilterKind::kFirstK, 5});
  REQUIRE(first5.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(first5[i].first == i);
  for (int i = 0; i < 5; ++i) CHECK(first5[i].second == all[i].second);

  const auto last3 =
      infer::score_game(params, rec, {infer::FilterKind::kLastK, 3});
  REQUIRE(last3.size() == 3);
  CHECK(last3.back().first == static_cast<int>(rec.moves.size()) - 1);

  Rng rng(5);
  const auto one =
      infer::score_game(params, rec, {infer::FilterKind::kOnePerGame, 0}, &rng);
  CHECK(one.size() == 1);
  CHECK_THROWS(
      infer::score_game(params, rec, {infer::FilterKind::kOnePerGame, 0}));

  const auto zero = constant_beta_params(scorer_for(spec), 0.0);
  for (const auto& [depth, beta] :
       infer::score_game(zero, rec, {infer::FilterKind::kAll, 0})) {
    CHECK(beta == 0.0);
  }

  CHECK(infer::parse_filter("all").kind == infer::FilterKind::kAll);
  CHECK(infer::parse_filter("first:50").k == 50);
  CHECK(infer::parse_filter("last:7").kind == infer::FilterKind::kLastK);
  CHECK(infer::parse_filter("one-per-game").kind ==
        infer::FilterKind::kOnePerGame);
  CHECK_THROWS(infer::parse_filter("middle:3"));
}

TEST_CASE("build_profile constants and aggregate identities") {
  const auto spec = game::make_spec("hex", 4);
  const auto ds = test_util::random_dataset(spec, {1}, 4, 9);
  const auto params = constant_beta_params(scorer_for(spec), 0.75);
  const auto profile = infer::build_profile(params, ds);

  CHECK(profile.rank_count() == 1);
  CHECK(profile.overall[0] == doctest::Approx(0.75).epsilon(1e-12));
  for (int d = 0; d < profile.depth_cutoff; ++d) {
    if (profile.per_depth_count[0][d] > 0) {
      CHECK(profile.per_depth[0][d] == doctest::Approx(0.75).epsilon(1e-12));
    }
  }

  // Overall equals the count-weighted mean of the per-depth means.
  const auto rnd_params = scorer::init_params(scorer_for(spec), 3);
  const auto ds3 = test_util::random_dataset(spec, {1, 2, 3}, 5, 10);
  const auto prof = infer::build_profile(rnd_params, ds3);
  for (int r = 0; r < prof.rank_count(); ++r) {
    double weighted = 0.0;
    int64_t total = 0;
    for (int d = 0; d < prof.depth_cutoff; ++d) {
      weighted += prof.per_depth[r][d] * prof.per_depth_count[r][d];
      total += prof.per_depth_count[r][d];
    }
    CHECK(total == prof.overall_count[r]);
    CHECK(prof.overall[r] ==
          doctest::Approx(weighted / total).epsilon(1e-9));
  }
}

TEST_CASE("profile of a union is the count-weighted merge") {
  const auto spec = game::make_spec("hex", 4);
  const auto params = scorer::init_params(scorer_for(spec), 21);

  std::vector<data::GameRecord> half_a, half_b;
  for (int g = 0; g < 6; ++g) {
    auto rec = test_util::random_record(spec, 400 + g, 1, "a" + std::to_string(g));
    (g < 3 ? half_a : half_b).push_back(rec);
  }
  std::vector<data::GameRecord> all = half_a;
  all.insert(all.end(), half_b.begin(), half_b.end());

  const auto prof_a =
      infer::build_profile(params, data::make_rank_dataset(spec, half_a));
  const auto prof_b =
      infer::build_profile(params, data::make_rank_dataset(spec, half_b));
  const auto prof_all =
      infer::build_profile(params, data::make_rank_dataset(spec, all));

  const double merged =
      (prof_a.overall[0] * prof_a.overall_count[0] +
       prof_b.overall[0] * prof_b.overall_count[0]) /
      (prof_a.overall_count[0] + prof_b.overall_count[0]);
  CHECK(prof_all.overall[0] == doctest::Approx(merged).epsilon(1e-12));
}

TEST_CASE("predict_rank nearest and tie rules") {
  infer::StrengthProfile profile;
  profile.rank_ids = {1, 2, 3};
  profile.overall = {1.0, -1.0, -3.0};
  profile.overall_count = {10, 10, 10};
  profile.depth_cutoff = 0;

  CHECK(infer::predict_rank(profile, 0.8) == 1);
  CHECK(infer::predict_rank(profile, 0.0) == 1);    // midway tie -> stronger
  CHECK(infer::predict_rank(profile, -3.0) == 3);   // exact match
  CHECK(infer::predict_rank(profile, -2.0) == 2);   // midway tie -> stronger
  CHECK(infer::predict_rank(profile, -100.0) == 3);

  // Shifting profile and query together leaves the choice unchanged.
  for (const double query : {0.8, -0.4, -2.7}) {
    const int base = infer::predict_rank(profile, query);
    infer::StrengthProfile shifted = profile;
    for (double& v : shifted.overall) v += 5.5;
    CHECK(infer::predict_rank(shifted, query + 5.5) == base);
  }
}

TEST_CASE("per-depth targets fall back to the overall mean") {
  infer::StrengthProfile profile;
  profile.rank_ids = {1, 2};
  profile.overall = {0.5, -0.5};
  profile.overall_count = {4, 4};
  profile.depth_cutoff = 3;
  profile.per_depth = {{0.9, 0.0, 0.7}, {-0.9, -0.7, 0.0}};
  profile.per_depth_count = {{2, 0, 2}, {2, 2, 0}};

  CHECK(profile.target_score(1, 0) == 0.9);
  CHECK(profile.target_score(1, 1) == 0.5);   // zero samples at depth 1
  CHECK(profile.target_score(1, 5) == 0.5);   // beyond the cutoff
  CHECK(profile.target_score(2, 1) == -0.7);
  CHECK(profile.target_score(2, 2) == -0.5);
  CHECK_THROWS(profile.target_score(9, 0));
}

TEST_CASE("accuracy curve: self-consistency, tolerance, reproducibility") {
  const auto spec = game::make_spec("hex", 4);
  const auto candidate = test_util::random_dataset(spec, {1, 2, 3}, 5, 33);
  const auto params = scorer::init_params(scorer_for(spec), 11);
  const auto profile = infer::build_profile(params, candidate);

  // Distinct means almost surely; require it for the self-test.
  REQUIRE(profile.overall[0] != profile.overall[1]);
  REQUIRE(profile.overall[1] != profile.overall[2]);

  infer::PredictionConfig config;
  config.repeats = 40;
  config.tolerance = 0;
  config.seed = 77;

  // Query == candidate with N = all games: composite equals the profile mean.
  const auto self_curve =
      infer::accuracy_curve(params, profile, candidate, {5}, config);
  for (const auto& cell : self_curve.cells) {
    CHECK(cell.accuracy == 1.0);
  }

  const auto query = test_util::random_dataset(spec, {1, 2, 3}, 6, 44);
  const auto strict =
      infer::accuracy_curve(params, profile, query, {1, 3}, config);
  infer::PredictionConfig loose = config;
  loose.tolerance = 1;
  const auto tolerant =
      infer::accuracy_curve(params, profile, query, {1, 3}, loose);
  for (size_t i = 0; i < strict.cells.size(); ++i) {
    CHECK(tolerant.cells[i].accuracy >= strict.cells[i].accuracy);
  }

  const auto again =
      infer::accuracy_curve(params, profile, query, {1, 3}, config);
  for (size_t i = 0; i < strict.cells.size(); ++i) {
    CHECK(again.cells[i].accuracy == strict.cells[i].accuracy);
  }

  CHECK_THROWS(infer::accuracy_curve(params, profile, query, {100}, config));
}

TEST_CASE("profile save/load round trip") {
  const auto spec = game::make_spec("hex", 4);
  const auto ds = test_util::random_dataset(spec, {1, 2}, 4, 50);
  const auto params = scorer::init_params(scorer_for(spec), 2);
  const auto profile = infer::build_profile(params, ds);

  const std::string path =
      (std::filesystem::temp_directory_path() / "profile_test.txt").string();
  infer::save_profile(profile, path);
  const auto loaded = infer::load_profile(path);
  CHECK(loaded.rank_ids == profile.rank_ids);
  CHECK(loaded.depth_cutoff == profile.depth_cutoff);
  CHECK(loaded.overall == profile.overall);  // exact via %.17g
  CHECK(loaded.per_depth == profile.per_depth);
  CHECK(loaded.per_depth_count == profile.per_depth_count);
}

TEST_CASE("sl sum and vote aggregation") {
  const auto spec = game::make_spec("tictactoe", 3);

  // Hand-built scorer: H=1, trunk reads only the to-move flag, so the rank
  // probabilities alternate between [.6,.4] (first to move) and [.4,.6].
  scorer::ScorerSpec sspec;
  sspec.input_length = spec.feature_length();
  sspec.hidden_width = 1;
  sspec.hidden_layers = 1;
  sspec.action_count = spec.action_count();
  sspec.rank_head_size = 2;
  scorer::ScorerParams params{sspec,
                              std::vector<double>(sspec.param_count(), 0.0)};
  const double d = std::log(0.6 / 0.4);
  const size_t w1 = 0;                         // H x I
  const size_t to_move_col = 2 * spec.action_count();
  params.values[w1 + to_move_col] = 1.0;       // h = tanh(flag)
  const size_t wc = sspec.param_count() - (2 * 1 + 2);
  params.values[wc + 0] = 2.0 * d / std::tanh(1.0);  // class-1 weight
  params.values[wc + 1] = 0.0;
  params.values[wc + 2] = -d;  // class-1 bias
  params.values[wc + 3] = 0.0;

  const auto rec = test_util::random_record(spec, 8, 1, "g");
  REQUIRE(rec.moves.size() >= 2);

  // Sanity: position 0 (first to move) favors class 1, position 1 class 2.
  {
    const auto states = data::replay_states(rec);
    const auto out0 = scorer::forward(
        params, game::encode_features(
                    spec, game::StateActionPair(states[0], rec.moves[0], 1)));
    const auto probs0 = scorer::softmax(out0.rank_logits);
    CHECK(probs0[0] == doctest::Approx(0.6).epsilon(1e-9));
    const auto out1 = scorer::forward(
        params, game::encode_features(
                    spec, game::StateActionPair(states[1], rec.moves[1], 1)));
    const auto probs1 = scorer::softmax(out1.rank_logits);
    CHECK(probs1[0] == doctest::Approx(0.4).epsilon(1e-9));
  }

  const std::vector<data::GameRecord> games{rec};

  // Single position: sum and vote agree.
  const infer::MoveFilter one_pos{infer::FilterKind::kFirstK, 1};
  CHECK(infer::sl_predict_sum(params, games, one_pos) ==
        infer::sl_predict_vote(params, games, one_pos));

  // Two positions with [.6,.4] then [.4,.6]: both aggregations tie, and the
  // tie goes to the stronger rank.
  const infer::MoveFilter two_pos{infer::FilterKind::kFirstK, 2};
  CHECK(infer::sl_predict_sum(params, games, two_pos) == 1);
  CHECK(infer::sl_predict_vote(params, games, two_pos) == 1);

  // Constant classifier: every position votes the biased class.
  scorer::ScorerParams biased{sspec,
                              std::vector<double>(sspec.param_count(), 0.0)};
  biased.values[sspec.param_count() - 1] = 3.0;  // class-2 bias
  CHECK(infer::sl_predict_sum(biased, games, {infer::FilterKind::kAll, 0}) == 2);
  CHECK(infer::sl_predict_vote(biased, games, {infer::FilterKind::kAll, 0}) == 2);

  // No rank head: error.
  const auto plain = scorer::init_params(scorer_for(spec, 0), 1);
  CHECK_THROWS(infer::sl_predict_sum(plain, games, two_pos));
}
