#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoy/errors.hpp"
#include "decoy/rng.hpp"

namespace decoy {

using json = nlohmann::json;

/// Ordered, duplicate-free set of class labels. Index space is 0..size()-1.
class LabelSet {
 public:
  explicit LabelSet(std::vector<std::string> labels);

  /// Convenience constructor: "label0", "label1", ...
  static LabelSet numbered(std::size_t count);

  std::size_t size() const { return labels_.size(); }
  const std::string& name(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& names() const { return labels_; }
  std::size_t index_of(const std::string& name) const;

  bool operator==(const LabelSet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Probability vector over a label set. Validated on construction: every
/// entry in [0,1] and the entries sum to 1 within kSumTolerance.
class DecisionDistribution {
 public:
  static constexpr double kSumTolerance = 1e-6;

  explicit DecisionDistribution(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_.at(i); }

  bool operator==(const DecisionDistribution& other) const { return probs_ == other.probs_; }

 private:
  std::vector<double> probs_;
};

/// Overflow-safe softmax of raw scores. label_count is the expected length.
DecisionDistribution normalize(std::span<const double> raw_scores, std::size_t label_count);

/// Index of the maximum probability; ties broken by lowest index.
std::size_t argmax_label(const DecisionDistribution& d);
std::size_t argmax_index(std::span<const double> values);

/// One real input to protect. gold_label is evaluation-only and never
/// participates in the protocol.
struct Instance {
  std::string id;
  std::string text;
  std::optional<std::size_t> gold_label;
};

/// A dummy sentence with a confident model prediction; the raw material of
/// instance obfuscation.
struct Obfuscator {
  std::string id;
  std::string text;
  std::size_t predicted_label = 0;
  double confidence = 0.0;
};

/// What a request payload carries on the wire.
struct WirePayload {
  enum class Kind { kText, kEncoded };

  Kind kind = Kind::kText;
  std::string text;                           // kind == kText
  std::vector<std::vector<double>> vectors;   // kind == kEncoded

  static WirePayload from_text(std::string t);
  static WirePayload from_vectors(std::vector<std::vector<double>> v);

  json to_json() const;
  static WirePayload from_json(const json& j);
};

enum class RequestRole { kObfuscatedPair, kBareObfuscator };

/// One scheduled classification request. role and owner_instance are
/// client-private bookkeeping and must never reach the wire; wire_json()
/// is the only serialization a transport may use.
struct RequestRecord {
  std::string request_id;  // 128-bit random nonce, 32 lowercase hex chars
  WirePayload payload;
  RequestRole role = RequestRole::kObfuscatedPair;
  std::optional<std::string> owner_instance;

  json wire_json() const;
};

/// Fresh 128-bit nonce as 32 hex characters.
std::string make_request_nonce(Rng& rng);

/// One (obfuscated-pair, bare-obfuscator) request-id couple.
struct RequestCouple {
  std::string pair_id;
  std::string bare_id;
};

/// Client-private map from instance id to its request couples. This is the
/// secret that makes decision resolution trivial for the owner and
/// combinatorially hard for everyone else; it never leaves the client.
///
/// Insertion may happen concurrently during scheduling/dispatch; reads are
/// only valid after that phase completes.
class CorrelationLedger {
 public:
  CorrelationLedger() = default;
  CorrelationLedger(const CorrelationLedger& other);
  CorrelationLedger& operator=(const CorrelationLedger& other);

  void record_couple(const std::string& instance_id, RequestCouple couple);

  const std::map<std::string, std::vector<RequestCouple>>& entries() const { return entries_; }
  bool has_instance(const std::string& instance_id) const;
  std::size_t instance_count() const { return entries_.size(); }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<RequestCouple>> entries_;
};

json to_json(const LabelSet& labels);
json to_json(const DecisionDistribution& d);
json to_json(const Instance& x);
json to_json(const Obfuscator& b);

LabelSet label_set_from_json(const json& j);
DecisionDistribution distribution_from_json(const json& j);
Instance instance_from_json(const json& j);
Obfuscator obfuscator_from_json(const json& j);

}  // namespace decoy
