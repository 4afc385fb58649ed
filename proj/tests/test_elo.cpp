#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "strength/elo.hpp"
#include "strength/rng.hpp"

using namespace strength;

namespace {

eval::WinTable table_from(const std::vector<std::vector<double>>& wins,
                          double games) {
  eval::WinTable table;
  table.games_per_pair = games;
  table.wins = wins;
  for (size_t i = 0; i < wins.size(); ++i) {
    table.names.push_back("a" + std::to_string(i));
  }
  return table;
}

}  // namespace

TEST_CASE("win table validation") {
  auto ok = table_from({{0, 6}, {4, 0}}, 10);
  CHECK_NOTHROW(ok.validate());
  auto bad = table_from({{0, 6}, {5, 0}}, 10);
  CHECK_THROWS(bad.validate());
  auto tiny = table_from({{0}}, 10);
  CHECK_THROWS(tiny.validate());
}

TEST_CASE("even match gives equal ratings at 1500") {
  const auto ratings = eval::fit_elo(table_from({{0, 50}, {50, 0}}, 100));
  CHECK(ratings.rating[0] == doctest::Approx(1500.0).epsilon(1e-9));
  CHECK(ratings.rating[1] == doctest::Approx(1500.0).epsilon(1e-9));
}

TEST_CASE("75/25 gives the closed-form logistic gap") {
  const auto ratings = eval::fit_elo(table_from({{0, 75}, {25, 0}}, 100));
  const double gap = ratings.rating[0] - ratings.rating[1];
  CHECK(gap == doctest::Approx(400.0 * std::log10(3.0)).epsilon(1e-6));
  CHECK(std::abs(gap - 190.848502) < 0.5);
  CHECK(ratings.rating[0] + ratings.rating[1] ==
        doctest::Approx(3000.0).epsilon(1e-9));
}

TEST_CASE("transitive logistic data is recovered within one Elo") {
  const std::vector<double> truth{1600.0, 1500.0, 1400.0};
  const double g = 100000.0;  // exact expected scores, no sampling noise
  std::vector<std::vector<double>> wins(3, std::vector<double>(3, 0.0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) wins[i][j] = g * eval::elo_expected_score(truth[i], truth[j]);
    }
  }
  const auto ratings = eval::fit_elo(table_from(wins, g));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double fitted_gap = ratings.rating[i] - ratings.rating[j];
      CHECK(std::abs(fitted_gap - (truth[i] - truth[j])) < 1.0);
    }
  }
}

TEST_CASE("degenerate all-win agents are clamped") {
  const auto ratings = eval::fit_elo(table_from({{0, 100}, {0, 0}}, 100));
  CHECK(ratings.clipped);
  CHECK(ratings.rating[0] - ratings.rating[1] <= 2000.0 + 1e-6);
  double mean = (ratings.rating[0] + ratings.rating[1]) / 2;
  CHECK(mean == doctest::Approx(1500.0).epsilon(1e-9));
}

TEST_CASE("win table file round trip") {
  const auto table = table_from({{0, 7.5}, {2.5, 0}}, 10);
  const auto path =
      (std::filesystem::temp_directory_path() / "wintable_test.txt").string();
  eval::save_win_table(table, path);
  const auto loaded = eval::load_win_table(path);
  CHECK(loaded.names == table.names);
  CHECK(loaded.games_per_pair == table.games_per_pair);
  CHECK(loaded.wins == table.wins);
  CHECK_THROWS(eval::load_win_table("/nonexistent/table.txt"));
}
