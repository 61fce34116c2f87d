/*
 * Copyright 2026 The Catalyst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "catalyst/cli/config_file.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <variant>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "catalyst/common/errors.h"

namespace catalyst {
namespace {

using nlohmann::json;

// Typed access to one JSON object; Finish() rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {}

  absl::Status CheckObject() const {
    if (!object_.is_object()) {
      return ConfigError(absl::StrCat("field \"", path_, "\": expected an object"));
    }
    return absl::OkStatus();
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : absl::StrCat(path_, ".", key);
  }

  const json* Find(const std::string& key) {
    known_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  absl::Status Number(const std::string& key, double* out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_number()) return TypeError(key, "a number");
    *out = v->get<double>();
    if (!std::isfinite(*out)) return TypeError(key, "a finite number");
    return absl::OkStatus();
  }

  template <typename Int>
  absl::Status Integer(const std::string& key, Int* out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_number_integer()) return TypeError(key, "an integer");
    if (std::is_unsigned_v<Int> && v->is_number_unsigned()) {
      *out = static_cast<Int>(v->get<uint64_t>());
      return absl::OkStatus();
    }
    const int64_t value = v->get<int64_t>();
    if (value < static_cast<int64_t>(std::numeric_limits<Int>::min()) ||
        (value > 0 && static_cast<uint64_t>(value) >
                          static_cast<uint64_t>(std::numeric_limits<Int>::max()))) {
      return TypeError(key, "an integer in range");
    }
    *out = static_cast<Int>(value);
    return absl::OkStatus();
  }

  absl::Status Bool(const std::string& key, bool* out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_boolean()) return TypeError(key, "true or false");
    *out = v->get<bool>();
    return absl::OkStatus();
  }

  absl::Status String(const std::string& key, std::string* out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_string()) return TypeError(key, "a string");
    *out = v->get<std::string>();
    return absl::OkStatus();
  }

  absl::Status IntList(const std::string& key, std::vector<int>* out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_array()) return TypeError(key, "a list of integers");
    out->clear();
    for (const json& item : *v) {
      if (!item.is_number_integer()) return TypeError(key, "a list of integers");
      const int64_t value = item.get<int64_t>();
      if (value < std::numeric_limits<int>::min() ||
          value > std::numeric_limits<int>::max()) {
        return TypeError(key, "a list of integers in range");
      }
      out->push_back(static_cast<int>(value));
    }
    return absl::OkStatus();
  }

  absl::Status Invalid(const std::string& key, const std::string& message) const {
    return ConfigError(absl::StrCat("field \"", Path(key), "\": ", message));
  }

  absl::Status Finish() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : object_.items()) {
      if (!known_.contains(key)) unknown.push_back(absl::StrCat("\"", Path(key), "\""));
    }
    if (unknown.empty()) return absl::OkStatus();
    return ConfigError(absl::StrCat("unknown key ", absl::StrJoin(unknown, ", ")));
  }

 private:
  absl::Status TypeError(const std::string& key, const std::string& expected) const {
    return Invalid(key, absl::StrCat("expected ", expected));
  }

  const json& object_;
  std::string path_;
  std::set<std::string> known_;
};

absl::Status ParseSeeds(ObjectReader& parent, Seeds* seeds) {
  const json* v = parent.Find("seeds");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("seeds"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  CATALYST_RETURN_IF_ERROR(r.Integer("data", &seeds->data));
  CATALYST_RETURN_IF_ERROR(r.Integer("timing", &seeds->timing));
  CATALYST_RETURN_IF_ERROR(r.Integer("training", &seeds->training));
  CATALYST_RETURN_IF_ERROR(r.Integer("noise", &seeds->noise));
  return r.Finish();
}

absl::Status ParsePartition(ObjectReader& parent, PartitionMode* mode) {
  const json* v = parent.Find("partition");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("partition"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  std::string name = "shards";
  CATALYST_RETURN_IF_ERROR(r.String("mode", &name));
  ShardsMode shards;
  DirichletMode dirichlet;
  CATALYST_RETURN_IF_ERROR(r.Integer("shards_per_client", &shards.shards_per_client));
  CATALYST_RETURN_IF_ERROR(r.Number("beta", &dirichlet.beta));
  if (name == "iid") {
    *mode = IidMode{};
  } else if (name == "shards") {
    if (shards.shards_per_client < 1) {
      return r.Invalid("shards_per_client", "must be >= 1");
    }
    *mode = shards;
  } else if (name == "dirichlet") {
    if (!(dirichlet.beta > 0.0)) return r.Invalid("beta", "must be > 0");
    *mode = dirichlet;
  } else {
    return r.Invalid("mode", "expected \"iid\", \"shards\" or \"dirichlet\"");
  }
  return r.Finish();
}

absl::Status ParseDataset(ObjectReader& parent, DatasetSpec* d) {
  const json* v = parent.Find("dataset");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("dataset"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  std::string source = d->source == DataSource::kMnist ? "mnist" : "synthetic";
  CATALYST_RETURN_IF_ERROR(r.String("source", &source));
  if (source == "mnist") {
    d->source = DataSource::kMnist;
  } else if (source == "synthetic") {
    d->source = DataSource::kSynthetic;
  } else {
    return r.Invalid("source", "expected \"synthetic\" or \"mnist\"");
  }
  CATALYST_RETURN_IF_ERROR(r.Integer("num_classes", &d->num_classes));
  CATALYST_RETURN_IF_ERROR(r.Integer("dim", &d->dim));
  CATALYST_RETURN_IF_ERROR(r.Integer("num_examples", &d->num_examples));
  CATALYST_RETURN_IF_ERROR(r.Number("separation", &d->separation));
  CATALYST_RETURN_IF_ERROR(r.Number("test_fraction", &d->test_fraction));
  CATALYST_RETURN_IF_ERROR(r.String("mnist_dir", &d->mnist_dir));
  CATALYST_RETURN_IF_ERROR(r.Integer("train_limit", &d->train_limit));
  CATALYST_RETURN_IF_ERROR(r.Integer("test_limit", &d->test_limit));
  CATALYST_RETURN_IF_ERROR(ParsePartition(r, &d->partition));
  if (const json* e = r.Find("exclusive")) {
    ObjectReader x(*e, r.Path("exclusive"));
    CATALYST_RETURN_IF_ERROR(x.CheckObject());
    CATALYST_RETURN_IF_ERROR(x.IntList("clients", &d->exclusive.clients));
    CATALYST_RETURN_IF_ERROR(x.IntList("labels", &d->exclusive.labels));
    CATALYST_RETURN_IF_ERROR(x.Finish());
  }
  return r.Finish();
}

absl::Status ParseTraining(ObjectReader& parent, TrainingSpec* t) {
  const json* v = parent.Find("training");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("training"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  std::string model = t->model == ModelKind::kMlp ? "mlp" : "logistic";
  CATALYST_RETURN_IF_ERROR(r.String("model", &model));
  if (model == "logistic") {
    t->model = ModelKind::kLogistic;
  } else if (model == "mlp") {
    t->model = ModelKind::kMlp;
  } else {
    return r.Invalid("model", "expected \"logistic\" or \"mlp\"");
  }
  CATALYST_RETURN_IF_ERROR(r.Integer("hidden_dim", &t->hidden_dim));
  CATALYST_RETURN_IF_ERROR(r.Number("lr", &t->lr));
  CATALYST_RETURN_IF_ERROR(r.Integer("local_epochs", &t->local_epochs));
  CATALYST_RETURN_IF_ERROR(r.Integer("local_steps", &t->local_steps));
  CATALYST_RETURN_IF_ERROR(r.Integer("batch_size", &t->batch_size));
  return r.Finish();
}

absl::Status ParseServerParams(ObjectReader& parent, ServerSpec* s) {
  const json* v = parent.Find("server_params");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("server_params"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  CATALYST_RETURN_IF_ERROR(r.Integer("f", &s->f));
  CATALYST_RETURN_IF_ERROR(r.Integer("window", &s->window));
  CATALYST_RETURN_IF_ERROR(r.Number("alpha", &s->alpha));
  CATALYST_RETURN_IF_ERROR(r.Number("eta", &s->eta));
  CATALYST_RETURN_IF_ERROR(r.Integer("trigger", &s->trigger_override));
  CATALYST_RETURN_IF_ERROR(r.Bool("rehabilitate", &s->rehabilitate));
  std::string correction =
      s->late_correction == LateCorrection::kDescent ? "descent" : "subtract";
  CATALYST_RETURN_IF_ERROR(r.String("late_correction", &correction));
  if (correction == "descent") {
    s->late_correction = LateCorrection::kDescent;
  } else if (correction == "subtract") {
    s->late_correction = LateCorrection::kSubtract;
  } else {
    return r.Invalid("late_correction", "expected \"descent\" or \"subtract\"");
  }
  if (const json* n = r.Find("noise")) {
    ObjectReader x(*n, r.Path("noise"));
    CATALYST_RETURN_IF_ERROR(x.CheckObject());
    CATALYST_RETURN_IF_ERROR(x.Bool("enabled", &s->noise.enabled));
    CATALYST_RETURN_IF_ERROR(x.Number("epsilon", &s->noise.epsilon));
    CATALYST_RETURN_IF_ERROR(x.Number("delta", &s->noise.delta));
    CATALYST_RETURN_IF_ERROR(x.Finish());
    if (s->noise.enabled && (x.Find("epsilon") == nullptr ||
                             x.Find("delta") == nullptr)) {
      return x.Invalid("enabled", "noise needs explicit epsilon and delta");
    }
  }
  CATALYST_RETURN_IF_ERROR(r.Number("mix_alpha", &s->mix_alpha));
  CATALYST_RETURN_IF_ERROR(r.Number("kardam_gamma", &s->kardam_gamma));
  CATALYST_RETURN_IF_ERROR(r.Number("kardam_lr", &s->kardam_lr));
  CATALYST_RETURN_IF_ERROR(r.Integer("kardam_history", &s->kardam_history));
  return r.Finish();
}

absl::Status ParseAttack(ObjectReader& parent, const DatasetSpec& dataset,
                         AttackSpec* a) {
  const json* v = parent.Find("attack");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("attack"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  std::string kind = AttackKindName(a->kind);
  CATALYST_RETURN_IF_ERROR(r.String("kind", &kind));
  bool matched = false;
  for (AttackKind k : {AttackKind::kNone, AttackKind::kRandomPerturbation,
                       AttackKind::kGradientInversion, AttackKind::kBackdoor}) {
    if (AttackKindName(k) == kind) {
      a->kind = k;
      matched = true;
    }
  }
  if (!matched) {
    return r.Invalid("kind",
                     "expected \"none\", \"random_perturbation\", "
                     "\"gradient_inversion\" or \"backdoor\"");
  }
  const bool has_ids = r.Find("byzantine_ids") != nullptr;
  CATALYST_RETURN_IF_ERROR(r.IntList("byzantine_ids", &a->byzantine_ids));
  if (r.Find("num_byzantine") != nullptr) {
    if (has_ids) {
      return r.Invalid("num_byzantine", "give either byzantine_ids or num_byzantine");
    }
    int k = 0;
    CATALYST_RETURN_IF_ERROR(r.Integer("num_byzantine", &k));
    if (k < 0) return r.Invalid("num_byzantine", "must be >= 0");
    a->byzantine_ids.clear();
    for (int c = 0; c < k; ++c) a->byzantine_ids.push_back(c);
  }
  CATALYST_RETURN_IF_ERROR(r.Number("sigma", &a->sigma));
  CATALYST_RETURN_IF_ERROR(r.Number("scale", &a->scale));
  CATALYST_RETURN_IF_ERROR(r.Number("poison_fraction", &a->poison_fraction));
  std::string timing = TimingPolicyName(a->timing);
  CATALYST_RETURN_IF_ERROR(r.String("timing", &timing));
  matched = false;
  for (TimingPolicy p : {TimingPolicy::kNatural, TimingPolicy::kJustBeforeHonest,
                         TimingPolicy::kJustAfterHonest}) {
    if (TimingPolicyName(p) == timing) {
      a->timing = p;
      matched = true;
    }
  }
  if (!matched) {
    return r.Invalid("timing",
                     "expected \"natural\", \"just_before_honest\" or "
                     "\"just_after_honest\"");
  }
  // Default trigger: 3x3 block of 1.0 in the top-left corner, target 0.
  int size = 3;
  size_t width = dataset.source == DataSource::kMnist ? 28 : 3;
  double value = 1.0;
  int target = 0;
  std::vector<int> indices;
  if (const json* t = r.Find("trigger")) {
    ObjectReader x(*t, r.Path("trigger"));
    CATALYST_RETURN_IF_ERROR(x.CheckObject());
    CATALYST_RETURN_IF_ERROR(x.Integer("size", &size));
    CATALYST_RETURN_IF_ERROR(x.Integer("image_width", &width));
    CATALYST_RETURN_IF_ERROR(x.Number("value", &value));
    CATALYST_RETURN_IF_ERROR(x.Integer("target_label", &target));
    CATALYST_RETURN_IF_ERROR(x.IntList("indices", &indices));
    CATALYST_RETURN_IF_ERROR(x.Finish());
    if (size < 1) return x.Invalid("size", "must be >= 1");
    if (width < static_cast<size_t>(size)) {
      return x.Invalid("image_width", "must be >= size");
    }
  }
  a->trigger = CornerTrigger(width, static_cast<size_t>(size), value, target);
  if (!indices.empty()) {
    a->trigger.indices.clear();
    for (int i : indices) {
      if (i < 0) return r.Invalid("trigger", "indices must be >= 0");
      a->trigger.indices.push_back(static_cast<size_t>(i));
    }
  }
  return r.Finish();
}

absl::Status ParseProfile(ObjectReader& parent, ClientProfile* p) {
  const json* v = parent.Find("profile");
  if (v == nullptr) return absl::OkStatus();
  ObjectReader r(*v, parent.Path("profile"));
  CATALYST_RETURN_IF_ERROR(r.CheckObject());
  CATALYST_RETURN_IF_ERROR(r.Number("compute_mean", &p->compute_mean));
  CATALYST_RETURN_IF_ERROR(r.Number("compute_std", &p->compute_std));
  return r.Finish();
}

}  // namespace

absl::StatusOr<RunConfig> ParseRunConfig(const json& root) {
  RunConfig config;
  ObjectReader r(root, "");
  if (!root.is_object()) return ConfigError("configuration must be a JSON object");
  std::string server = ServerKindName(config.server);
  CATALYST_RETURN_IF_ERROR(r.String("server", &server));
  auto kind = ParseServerKind(server);
  if (!kind.ok()) return r.Invalid("server", std::string(kind.status().message()));
  config.server = *kind;
  CATALYST_RETURN_IF_ERROR(r.Integer("num_clients", &config.num_clients));
  CATALYST_RETURN_IF_ERROR(r.Number("duration", &config.duration));
  CATALYST_RETURN_IF_ERROR(r.Number("eval_period", &config.eval_period));
  CATALYST_RETURN_IF_ERROR(r.IntList("slow_clients", &config.slow_clients));
  CATALYST_RETURN_IF_ERROR(r.Number("slow_factor", &config.slow_factor));
  CATALYST_RETURN_IF_ERROR(ParseSeeds(r, &config.seeds));
  CATALYST_RETURN_IF_ERROR(ParseDataset(r, &config.dataset));
  CATALYST_RETURN_IF_ERROR(ParseTraining(r, &config.training));
  CATALYST_RETURN_IF_ERROR(ParseServerParams(r, &config.server_params));
  CATALYST_RETURN_IF_ERROR(ParseAttack(r, config.dataset, &config.attack));
  CATALYST_RETURN_IF_ERROR(ParseProfile(r, &config.profile));
  CATALYST_RETURN_IF_ERROR(r.Finish());
  CATALYST_RETURN_IF_ERROR(ValidateRunConfig(config));
  return config;
}

absl::StatusOr<RunConfig> ParseRunConfigText(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    return ConfigError(absl::StrCat("malformed JSON: ", e.what()));
  }
  return ParseRunConfig(root);
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return ConfigError(absl::StrCat("cannot read config file ", path));
  std::stringstream buffer;
  buffer << file.rdbuf();
  auto config = ParseRunConfigText(buffer.str());
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path, ": ", config.status().message()));
  }
  return config;
}

nlohmann::ordered_json RunConfigToJson(const RunConfig& c) {
  using oj = nlohmann::ordered_json;
  oj j;
  j["server"] = ServerKindName(c.server);
  j["num_clients"] = c.num_clients;
  j["duration"] = c.duration;
  j["eval_period"] = c.eval_period;
  j["slow_clients"] = c.slow_clients;
  j["slow_factor"] = c.slow_factor;
  j["seeds"] = {{"data", c.seeds.data},
                {"timing", c.seeds.timing},
                {"training", c.seeds.training},
                {"noise", c.seeds.noise}};

  const DatasetSpec& d = c.dataset;
  oj partition;
  if (std::holds_alternative<IidMode>(d.partition)) {
    partition["mode"] = "iid";
  } else if (const auto* s = std::get_if<ShardsMode>(&d.partition)) {
    partition["mode"] = "shards";
    partition["shards_per_client"] = s->shards_per_client;
  } else {
    partition["mode"] = "dirichlet";
    partition["beta"] = std::get<DirichletMode>(d.partition).beta;
  }
  oj dataset;
  dataset["source"] = d.source == DataSource::kMnist ? "mnist" : "synthetic";
  dataset["num_classes"] = d.num_classes;
  dataset["dim"] = d.dim;
  dataset["num_examples"] = d.num_examples;
  dataset["separation"] = d.separation;
  dataset["test_fraction"] = d.test_fraction;
  dataset["mnist_dir"] = d.mnist_dir;
  dataset["train_limit"] = d.train_limit;
  dataset["test_limit"] = d.test_limit;
  dataset["partition"] = partition;
  dataset["exclusive"] = {{"clients", d.exclusive.clients},
                          {"labels", d.exclusive.labels}};
  j["dataset"] = dataset;

  const TrainingSpec& t = c.training;
  j["training"] = {{"model", t.model == ModelKind::kMlp ? "mlp" : "logistic"},
                   {"hidden_dim", t.hidden_dim},
                   {"lr", t.lr},
                   {"local_epochs", t.local_epochs},
                   {"local_steps", t.local_steps},
                   {"batch_size", t.batch_size}};

  const ServerSpec& s = c.server_params;
  oj server;
  server["f"] = s.f;
  server["window"] = s.window;
  server["alpha"] = s.alpha;
  server["eta"] = s.eta;
  server["trigger"] = s.trigger_override;
  server["rehabilitate"] = s.rehabilitate;
  server["late_correction"] =
      s.late_correction == LateCorrection::kDescent ? "descent" : "subtract";
  server["noise"] = {{"enabled", s.noise.enabled},
                     {"epsilon", s.noise.epsilon},
                     {"delta", s.noise.delta}};
  server["mix_alpha"] = s.mix_alpha;
  server["kardam_gamma"] = s.kardam_gamma;
  server["kardam_lr"] = s.kardam_lr;
  server["kardam_history"] = s.kardam_history;
  j["server_params"] = server;

  const AttackSpec& a = c.attack;
  oj attack;
  attack["kind"] = AttackKindName(a.kind);
  attack["byzantine_ids"] = a.byzantine_ids;
  attack["sigma"] = a.sigma;
  attack["scale"] = a.scale;
  attack["poison_fraction"] = a.poison_fraction;
  attack["timing"] = TimingPolicyName(a.timing);
  std::vector<size_t> indices = a.trigger.indices;
  attack["trigger"] = {{"indices", indices},
                       {"value", a.trigger.value},
                       {"target_label", a.trigger.target_label}};
  j["attack"] = attack;
  j["profile"] = {{"compute_mean", c.profile.compute_mean},
                  {"compute_std", c.profile.compute_std}};
  return j;
}

}  // namespace catalyst
