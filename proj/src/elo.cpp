#include "strength/elo.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace strength::eval {

namespace {

constexpr const char* kTableMagic = "strengthkit-wintable";
constexpr int kTableVersion = 1;
constexpr double kLn10Over400 = 2.302585092994046 / 400.0;
constexpr double kEloClip = 1000.0;

// Squared error in natural units u = R * ln10/400.
double loss_at(const std::vector<double>& u,
               const std::vector<std::vector<double>>& p) {
  const size_t n = u.size();
  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double e = 1.0 / (1.0 + std::exp(u[j] - u[i]));
      loss += (e - p[i][j]) * (e - p[i][j]);
    }
  }
  return loss;
}

}  // namespace

void WinTable::validate() const {
  const int n = size();
  if (n < 2) throw std::invalid_argument("win table needs >= 2 agents");
  if (static_cast<int>(wins.size()) != n) {
    throw std::invalid_argument("win matrix row count mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(wins[i].size()) != n) {
      throw std::invalid_argument("win matrix column count mismatch");
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double total = wins[i][j] + wins[j][i];
      if (std::abs(total - games_per_pair) > 1e-9) {
        throw std::invalid_argument("wins[i][j] + wins[j][i] != games_per_pair");
      }
    }
  }
}

double elo_expected_score(double rating_a, double rating_b) {
  return 1.0 / (1.0 + std::pow(10.0, (rating_b - rating_a) / 400.0));
}

EloRatings fit_elo(const WinTable& table) {
  table.validate();
  const int n = table.size();
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) p[i][j] = table.wins[i][j] / table.games_per_pair;
    }
  }

  std::vector<double> u(n, 0.0);
  double step = 1.0;
  double loss = loss_at(u, p);
  const double tol_u = 1e-6 * kLn10Over400;
  int iter = 0;
  const int max_iter = 200000;

  for (; iter < max_iter; ++iter) {
    std::vector<double> grad(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double e = 1.0 / (1.0 + std::exp(u[j] - u[i]));
        const double g = 2.0 * (e - p[i][j]) * e * (1.0 - e);
        grad[i] += g;
        grad[j] -= g;
      }
    }

    std::vector<double> next(n);
    double next_loss = 0.0;
    double max_change = 0.0;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      max_change = 0.0;
      for (int i = 0; i < n; ++i) {
        next[i] = u[i] - step * grad[i];
        max_change = std::max(max_change, std::abs(next[i] - u[i]));
      }
      next_loss = loss_at(next, p);
      if (next_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    u.swap(next);
    loss = next_loss;
    step *= 1.2;
    if (max_change < tol_u) break;
  }

  double mean = 0.0;
  for (const double v : u) mean += v;
  mean /= n;

  EloRatings out;
  out.iterations = iter;
  out.rating.resize(n);
  for (int i = 0; i < n; ++i) {
    double r = (u[i] - mean) / kLn10Over400;
    if (r > kEloClip) {
      r = kEloClip;
      out.clipped = true;
    } else if (r < -kEloClip) {
      r = -kEloClip;
      out.clipped = true;
    }
    out.rating[i] = 1500.0 + r;
  }
  if (out.clipped) {
    // Re-fix the mean after clamping.
    double m = 0.0;
    for (const double r : out.rating) m += r;
    m = m / n - 1500.0;
    for (double& r : out.rating) r -= m;
  }
  return out;
}

void save_win_table(const WinTable& table, const std::string& path) {
  table.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s v%d agents=%d games_per_pair=%.17g\n",
                kTableMagic, kTableVersion, table.size(),
                table.games_per_pair);
  out << buf;
  for (int i = 0; i < table.size(); ++i) {
    out << (i ? " " : "") << table.names[i];
  }
  out << "\n";
  for (int i = 0; i < table.size(); ++i) {
    for (int j = 0; j < table.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%s%.17g", j ? " " : "",
                    table.wins[i][j]);
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

WinTable load_win_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("missing win table header: " + path);
  }
  char magic[64];
  int version = 0, agents = 0;
  double games = 0.0;
  if (std::sscanf(header.c_str(), "%63s v%d agents=%d games_per_pair=%lf",
                  magic, &version, &agents, &games) != 4 ||
      std::strcmp(magic, kTableMagic) != 0) {
    throw std::runtime_error("not a win table: " + path);
  }
  if (version != kTableVersion) {
    throw std::runtime_error("unsupported win table version");
  }
  WinTable table;
  table.games_per_pair = games;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("win table missing names: " + path);
  }
  std::istringstream names(line);
  std::string name;
  while (names >> name) table.names.push_back(name);
  if (static_cast<int>(table.names.size()) != agents) {
    throw std::runtime_error("win table name count mismatch");
  }
  table.wins.assign(agents, std::vector<double>(agents, 0.0));
  for (int i = 0; i < agents; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("win table truncated: " + path);
    }
    std::istringstream row(line);
    for (int j = 0; j < agents; ++j) {
      if (!(row >> table.wins[i][j])) {
        throw std::runtime_error("bad win table row: " + line);
      }
    }
  }
  table.validate();
  return table;
}

}  // namespace strength::eval
