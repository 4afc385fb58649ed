#pragma once

#include <string>
#include <vector>

namespace strength::eval {

struct WinTable {
  std::vector<std::string> names;  // whitespace-free identifiers
  double games_per_pair = 0.0;     // G
  std::vector<std::vector<double>> wins;  // wins[i][j], draws count 0.5 each

  int size() const { return static_cast<int>(names.size()); }
  // wins[i][j] + wins[j][i] == G for every i != j.
  void validate() const;
};

struct EloRatings {
  std::vector<double> rating;  // mean fixed at 1500
  bool clipped = false;        // a degenerate agent hit the +-1000 clamp
  int iterations = 0;
};

// Least-squares fit of logistic expected scores to observed win rates:
// minimizes sum_{i<j} (E_ij - w_ij/G)^2 with E_ij = 1/(1+10^((R_j-R_i)/400)),
// by gradient descent with backtracking, converged when no rating moves more
// than 1e-6. Ratings are re-centered to mean 1500; runaway ratings from
// all-win/all-loss agents are clamped to +-1000 around the mean.
EloRatings fit_elo(const WinTable& table);

double elo_expected_score(double rating_a, double rating_b);

void save_win_table(const WinTable& table, const std::string& path);
WinTable load_win_table(const std::string& path);

}  // namespace strength::eval
