#include "strength/records.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace strength::data {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormatTag = "strengthkit-games";
constexpr int kFormatVersion = 1;

ordered_json spec_to_json(const game::GameSpec& spec) {
  ordered_json j;
  j["kind"] = game::kind_name(spec.kind);
  j["board"] = spec.board_size;
  return j;
}

game::GameSpec spec_from_json(const ordered_json& j) {
  return game::make_spec(j.at("kind").get<std::string>(),
                         j.at("board").get<int>());
}

}  // namespace

void write_records(const std::string& path, const game::GameSpec& spec,
                   const std::vector<GameRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  ordered_json header;
  header["format"] = kFormatTag;
  header["version"] = kFormatVersion;
  header["game"] = spec_to_json(spec);
  out << header.dump() << "\n";
  for (const GameRecord& rec : records) {
    ordered_json j;
    j["id"] = rec.id;
    j["game"] = spec_to_json(rec.spec);
    j["side_labels"] = {rec.first_label, rec.second_label};
    j["moves"] = rec.moves;
    j["outcome"] = rec.outcome;
    j["seed"] = rec.seed;
    out << j.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<GameRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("missing header line: " + path);
  }
  const ordered_json header = ordered_json::parse(line);
  if (header.at("format").get<std::string>() != kFormatTag) {
    throw std::runtime_error("not a game record file: " + path);
  }
  if (header.at("version").get<int>() != kFormatVersion) {
    throw std::runtime_error("unsupported game record version in " + path);
  }
  std::vector<GameRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const ordered_json j = ordered_json::parse(line);
    GameRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.spec = spec_from_json(j.at("game"));
    const auto& labels = j.at("side_labels");
    rec.first_label = labels.at(0).get<int>();
    rec.second_label = labels.at(1).get<int>();
    rec.moves = j.at("moves").get<std::vector<int>>();
    rec.outcome = j.at("outcome").get<int>();
    rec.seed = j.at("seed").get<uint64_t>();
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<game::GameState> replay_states(const GameRecord& record) {
  std::vector<game::GameState> states;
  states.reserve(record.moves.size());
  game::GameState state = game::initial_state(record.spec);
  for (const game::Action move : record.moves) {
    if (!game::is_legal(state, move)) {
      throw std::runtime_error("record " + record.id + ": illegal move " +
                               std::to_string(move) + " at depth " +
                               std::to_string(state.move_count));
    }
    states.push_back(state);
    state = game::apply(state, move);
  }
  const auto outcome = game::terminal_value(state);
  if (!outcome.has_value()) {
    throw std::runtime_error("record " + record.id +
                             ": move list does not reach a terminal state");
  }
  if (*outcome != record.outcome) {
    throw std::runtime_error("record " + record.id +
                             ": stored outcome does not match replay");
  }
  return states;
}

void validate_replay(const GameRecord& record) { replay_states(record); }

int RankDataset::index_of(int rank_id) const {
  for (int i = 0; i < rank_count(); ++i) {
    if (rank_ids[i] == rank_id) return i;
  }
  throw std::invalid_argument("rank " + std::to_string(rank_id) +
                              " not present in dataset");
}

RankDataset make_rank_dataset(const game::GameSpec& spec,
                              const std::vector<GameRecord>& records) {
  std::map<int, std::vector<GameRecord>> grouped;
  for (const GameRecord& rec : records) {
    if (rec.first_label != rec.second_label) {
      throw std::runtime_error(
          "record " + rec.id +
          ": training records must carry one rank label on both sides");
    }
    grouped[rec.first_label].push_back(rec);
  }
  RankDataset ds;
  ds.spec = spec;
  for (auto& [rank, recs] : grouped) {
    ds.rank_ids.push_back(rank);
    std::vector<game::StateActionPair> pairs;
    std::vector<int> outcomes;
    for (const GameRecord& rec : recs) {
      std::vector<game::GameState> states = replay_states(rec);
      for (size_t i = 0; i < rec.moves.size(); ++i) {
        pairs.emplace_back(std::move(states[i]), rec.moves[i], rank);
        outcomes.push_back(rec.outcome);
      }
    }
    ds.pairs.push_back(std::move(pairs));
    ds.pair_outcomes.push_back(std::move(outcomes));
    ds.records.push_back(std::move(recs));
  }
  return ds;
}

RankDataset load_rank_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".jsonl") {
      files.push_back(entry.path().string());
    }
  }
  if (files.empty()) {
    throw std::runtime_error("no .jsonl record files in " + dir);
  }
  std::sort(files.begin(), files.end());
  std::vector<GameRecord> all;
  for (const std::string& f : files) {
    std::vector<GameRecord> recs = read_records(f);
    all.insert(all.end(), std::make_move_iterator(recs.begin()),
               std::make_move_iterator(recs.end()));
  }
  const game::GameSpec spec = all.front().spec;
  return make_rank_dataset(spec, all);
}

RankDataset filter_ranks(const RankDataset& dataset,
                         const std::vector<int>& kept) {
  RankDataset out;
  out.spec = dataset.spec;
  for (int i = 0; i < dataset.rank_count(); ++i) {
    if (std::find(kept.begin(), kept.end(), dataset.rank_ids[i]) ==
        kept.end()) {
      continue;
    }
    out.rank_ids.push_back(dataset.rank_ids[i]);
    out.records.push_back(dataset.records[i]);
    out.pairs.push_back(dataset.pairs[i]);
    out.pair_outcomes.push_back(dataset.pair_outcomes[i]);
  }
  return out;
}

}  // namespace strength::data
