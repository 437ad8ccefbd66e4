#include "decoy/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace decoy {

LabelSet::LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw ParameterError("label set needs at least 2 labels, got " +
                         std::to_string(labels_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : labels_) {
    if (!seen.insert(name).second) {
      throw ParameterError("duplicate label name: " + name);
    }
  }
}

LabelSet LabelSet::numbered(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back("label" + std::to_string(i));
  }
  return LabelSet(std::move(names));
}

std::size_t LabelSet::index_of(const std::string& name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) {
    throw ParameterError("unknown label name: " + name);
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

DecisionDistribution::DecisionDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw DimensionError("decision distribution must not be empty");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p)) {
      throw NumericError("decision distribution entry is not finite");
    }
    if (p < 0.0 || p > 1.0) {
      throw NumericError("decision distribution entry out of [0,1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw NumericError("decision distribution sums to " + std::to_string(sum) +
                       ", expected 1 within " + std::to_string(kSumTolerance));
  }
}

DecisionDistribution normalize(std::span<const double> raw_scores, std::size_t label_count) {
  if (raw_scores.size() != label_count) {
    throw DimensionError("normalize: got " + std::to_string(raw_scores.size()) +
                         " scores for " + std::to_string(label_count) + " labels");
  }
  double max_score = -std::numeric_limits<double>::infinity();
  for (double s : raw_scores) {
    if (!std::isfinite(s)) {
      throw NumericError("normalize: non-finite raw score");
    }
    max_score = std::max(max_score, s);
  }
  // Shift by the max so exp never overflows.
  std::vector<double> probs(raw_scores.size());
  double denom = 0.0;
  for (std::size_t i = 0; i < raw_scores.size(); ++i) {
    probs[i] = std::exp(raw_scores[i] - max_score);
    denom += probs[i];
  }
  for (double& p : probs) {
    p /= denom;
  }
  return DecisionDistribution(std::move(probs));
}

std::size_t argmax_index(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

std::size_t argmax_label(const DecisionDistribution& d) {
  return argmax_index(d.probs());
}

WirePayload WirePayload::from_text(std::string t) {
  WirePayload p;
  p.kind = Kind::kText;
  p.text = std::move(t);
  return p;
}

WirePayload WirePayload::from_vectors(std::vector<std::vector<double>> v) {
  WirePayload p;
  p.kind = Kind::kEncoded;
  p.vectors = std::move(v);
  return p;
}

json WirePayload::to_json() const {
  json j;
  if (kind == Kind::kText) {
    j["kind"] = "text";
    j["data"] = text;
  } else {
    j["kind"] = "encoded";
    j["data"] = vectors;
  }
  return j;
}

WirePayload WirePayload::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "text") {
    return from_text(j.at("data").get<std::string>());
  }
  if (kind == "encoded") {
    return from_vectors(j.at("data").get<std::vector<std::vector<double>>>());
  }
  throw ProtocolError("unknown payload kind: " + kind);
}

json RequestRecord::wire_json() const {
  // Only the nonce and the payload cross the trust boundary.
  return json{{"request_id", request_id}, {"payload", payload.to_json()}};
}

std::string make_request_nonce(Rng& rng) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t hi = rng();
  std::uint64_t lo = rng();
  std::string out(32, '0');
  for (int i = 15; i >= 0; --i, hi >>= 4) out[static_cast<std::size_t>(i)] = kHex[hi & 0xF];
  for (int i = 31; i >= 16; --i, lo >>= 4) out[static_cast<std::size_t>(i)] = kHex[lo & 0xF];
  return out;
}

CorrelationLedger::CorrelationLedger(const CorrelationLedger& other) {
  std::lock_guard lock(other.mutex_);
  entries_ = other.entries_;
}

CorrelationLedger& CorrelationLedger::operator=(const CorrelationLedger& other) {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    entries_ = other.entries_;
  }
  return *this;
}

void CorrelationLedger::record_couple(const std::string& instance_id, RequestCouple couple) {
  std::lock_guard lock(mutex_);
  entries_[instance_id].push_back(std::move(couple));
}

bool CorrelationLedger::has_instance(const std::string& instance_id) const {
  std::lock_guard lock(mutex_);
  return entries_.count(instance_id) > 0;
}

json to_json(const LabelSet& labels) {
  return json{{"labels", labels.names()}};
}

json to_json(const DecisionDistribution& d) {
  return json{{"probs", d.probs()}};
}

json to_json(const Instance& x) {
  json j{{"id", x.id}, {"text", x.text}};
  if (x.gold_label) {
    j["gold_label"] = *x.gold_label;
  }
  return j;
}

json to_json(const Obfuscator& b) {
  return json{{"id", b.id},
              {"text", b.text},
              {"predicted_label", b.predicted_label},
              {"confidence", b.confidence}};
}

LabelSet label_set_from_json(const json& j) {
  return LabelSet(j.at("labels").get<std::vector<std::string>>());
}

DecisionDistribution distribution_from_json(const json& j) {
  return DecisionDistribution(j.at("probs").get<std::vector<double>>());
}

Instance instance_from_json(const json& j) {
  Instance x;
  x.id = j.at("id").get<std::string>();
  x.text = j.at("text").get<std::string>();
  if (j.contains("gold_label") && !j.at("gold_label").is_null()) {
    x.gold_label = j.at("gold_label").get<std::size_t>();
  }
  return x;
}

Obfuscator obfuscator_from_json(const json& j) {
  Obfuscator b;
  b.id = j.at("id").get<std::string>();
  b.text = j.at("text").get<std::string>();
  b.predicted_label = j.at("predicted_label").get<std::size_t>();
  b.confidence = j.at("confidence").get<double>();
  return b;
}

}  // namespace decoy
