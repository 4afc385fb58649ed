#pragma once

#include <memory>
#include <string>

#include "strength/game.hpp"
#include "strength/mcts.hpp"
#include "strength/rng.hpp"
#include "strength/scorer.hpp"

namespace strength::agent {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual game::Action act(const game::GameState& state) = 0;
  virtual void reseed(uint64_t seed) = 0;
  virtual std::string name() const = 0;
};

// Vanilla search at a fixed simulation budget; the move is sampled from a
// softmax over root visit counts at the given temperature. Temperature 0
// plays argmax visits; with no visited children (budget 1) the move is
// sampled from the root priors instead.
class TierAgent : public Agent {
 public:
  TierAgent(int tier, int simulations, double temperature,
            const scorer::ScorerParams& params, uint64_t seed);

  game::Action act(const game::GameState& state) override;
  void reseed(uint64_t seed) override { rng_ = Rng(seed); }
  std::string name() const override;

 private:
  int tier_;
  double temperature_;
  const scorer::ScorerParams& params_;
  search::SearchConfig config_;
  Rng rng_;
};

// Plays with a fixed search configuration; vanilla/SE decide by max visits,
// SA samples its decision. Reseeding re-keys only the stochastic decision.
class SearchAgent : public Agent {
 public:
  SearchAgent(std::string name, const scorer::ScorerParams& params,
              search::SearchConfig config, uint64_t seed);

  game::Action act(const game::GameState& state) override;
  void reseed(uint64_t seed) override { rng_ = Rng(seed); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  const scorer::ScorerParams& params_;
  search::SearchConfig config_;
  Rng rng_;
};

}  // namespace strength::agent
