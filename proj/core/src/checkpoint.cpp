#include "quadland/checkpoint.hpp"

#include <array>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace quadland {

namespace {

using nlohmann::json;

json layer_json(const MlpParams& params, Head head, int layer) {
  const auto w = params.weight(head, layer);
  const auto b = params.bias(head, layer);
  return {{"rows", w.rows()},
          {"cols", w.cols()},
          {"weight", std::vector<double>(w.data(), w.data() + w.size())},
          {"bias", std::vector<double>(b.data(), b.data() + b.size())}};
}

void read_layer(const json& j, MlpParams& params, Head head, int layer,
                const std::string& where) {
  auto w = params.weight(head, layer);
  auto b = params.bias(head, layer);
  if (j.at("rows").get<Eigen::Index>() != w.rows() ||
      j.at("cols").get<Eigen::Index>() != w.cols()) {
    throw CheckpointError(where + ": layer shape does not match network dimensions");
  }
  const auto weights = j.at("weight").get<std::vector<double>>();
  const auto biases = j.at("bias").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(weights.size()) != w.size() ||
      static_cast<Eigen::Index>(biases.size()) != b.size()) {
    throw CheckpointError(where + ": parameter count does not match layer shape");
  }
  std::copy(weights.begin(), weights.end(), w.data());
  std::copy(biases.begin(), biases.end(), b.data());
}

std::vector<std::string> to_strings(std::span<const std::string_view> names) {
  return {names.begin(), names.end()};
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path,
                     const PolicyCheckpoint& checkpoint) {
  const MlpParams& p = checkpoint.params;
  json doc;
  doc["format"] = "quadland-policy";
  doc["version"] = kCheckpointVersion;
  doc["task"] = std::string(task_name(checkpoint.task));
  doc["iteration"] = checkpoint.iteration;
  doc["timesteps"] = checkpoint.timesteps;
  doc["observation_space"] = {
      {"size", p.obs_dim()},
      {"names", to_strings(observation_names(checkpoint.task))}};
  doc["action_space"] = {{"size", p.act_dim()},
                         {"low", -1.0},
                         {"high", 1.0},
                         {"names", to_strings(action_names(checkpoint.task))}};
  doc["hidden"] = p.hidden();
  for (Head head : {Head::kActor, Head::kCritic}) {
    json layers = json::array();
    for (int layer = 0; layer < kNumLayers; ++layer) {
      layers.push_back(layer_json(p, head, layer));
    }
    doc[head == Head::kActor ? "actor" : "critic"] = std::move(layers);
  }
  const auto log_std = p.log_std();
  doc["log_std"] = std::vector<double>(log_std.data(), log_std.data() + log_std.size());

  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
}

PolicyCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  const std::string where = path.string();
  try {
    const json doc = json::parse(in);
    if (doc.at("format").get<std::string>() != "quadland-policy") {
      throw CheckpointError(where + ": not a quadland policy checkpoint");
    }
    if (doc.at("version").get<int>() != kCheckpointVersion) {
      throw CheckpointError(where + ": unsupported checkpoint version " +
                            std::to_string(doc.at("version").get<int>()));
    }
    const auto task = parse_task(doc.at("task").get<std::string>());
    if (!task) throw CheckpointError(where + ": unknown task");

    PolicyCheckpoint cp;
    cp.task = *task;
    cp.iteration = doc.value("iteration", std::int64_t{0});
    cp.timesteps = doc.value("timesteps", std::int64_t{0});
    cp.params = MlpParams(doc.at("observation_space").at("size").get<int>(),
                          doc.at("action_space").at("size").get<int>(),
                          doc.at("hidden").get<int>());
    for (Head head : {Head::kActor, Head::kCritic}) {
      const json& layers = doc.at(head == Head::kActor ? "actor" : "critic");
      if (layers.size() != kNumLayers) {
        throw CheckpointError(where + ": expected three layers per network");
      }
      for (int layer = 0; layer < kNumLayers; ++layer) {
        read_layer(layers.at(layer), cp.params, head, layer, where);
      }
    }
    const auto log_std = doc.at("log_std").get<std::vector<double>>();
    if (static_cast<int>(log_std.size()) != cp.params.act_dim()) {
      throw CheckpointError(where + ": log_std size does not match action size");
    }
    std::copy(log_std.begin(), log_std.end(), cp.params.log_std().data());
    if (!cp.params.values().allFinite()) {
      throw CheckpointError(where + ": non-finite parameter");
    }
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(where + ": malformed checkpoint: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(where + ": " + e.what());
  }
}

void require_task(const PolicyCheckpoint& checkpoint, Task task) {
  const auto expected_obs = static_cast<int>(observation_names(task).size());
  const auto expected_act = static_cast<int>(action_names(task).size());
  if (checkpoint.task != task || checkpoint.params.obs_dim() != expected_obs ||
      checkpoint.params.act_dim() != expected_act) {
    throw CheckpointError("checkpoint is for task " +
                          std::string(task_name(checkpoint.task)) + " (" +
                          std::to_string(checkpoint.params.obs_dim()) + " obs, " +
                          std::to_string(checkpoint.params.act_dim()) +
                          " actions), expected " + std::string(task_name(task)));
  }
}

}  // namespace quadland
