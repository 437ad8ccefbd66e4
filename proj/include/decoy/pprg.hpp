#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "decoy/core.hpp"
#include "decoy/rng.hpp"

namespace decoy {

/// Token used to join an obfuscator block with the real instance. It is a
/// reserved surface symbol: the tokenizer strips it, so it never carries
/// score mass or counts toward sequence length.
inline constexpr std::string_view kSequenceSeparator = "[SEP]";

/// Whitespace tokenization with the reserved separator stripped.
std::vector<std::string> tokenize(std::string_view text);

/// Per-token vector sequence; the form in which inputs leave the client
/// when representation privacy is enabled.
struct EncodedRepresentation {
  std::vector<std::vector<double>> vectors;

  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  std::size_t token_count() const { return vectors.size(); }

  /// Throws DimensionError/NumericError if rows disagree in dimension or
  /// contain non-finite entries.
  void validate() const;
};

/// Noise parameters: per token, displacement r·p with p uniform on the unit
/// hypersphere and r ~ Gamma(shape = dim, scale = 1/eta), so E[r] = dim/eta.
struct PerturbationParams {
  double eta = 100.0;
  std::size_t dim = 64;
  std::uint64_t seed = 0;
};

/// Deterministic keyed token embedding: every token maps to a unit-norm
/// pseudo-random direction, stable under the same key.
class TokenEmbedder {
 public:
  TokenEmbedder(std::uint64_t key, std::size_t dim);

  std::vector<double> embed(std::string_view token) const;
  EncodedRepresentation embed_tokens(std::string_view text) const;

  std::uint64_t key() const { return key_; }
  std::size_t dim() const { return dim_; }

 private:
  std::uint64_t key_;
  std::size_t dim_;
};

/// Free-function form of the embedding op.
EncodedRepresentation embed_tokens(std::string_view text, std::size_t dim,
                                   std::uint64_t key = 0);

/// Draws a point uniformly on the unit hypersphere (normalized Gaussian).
std::vector<double> sample_unit_sphere(std::size_t dim, Rng& rng);

/// Adds fresh r·p noise to every token vector, drawing from rng.
EncodedRepresentation perturb(const EncodedRepresentation& rep,
                              const PerturbationParams& params, Rng& rng);

/// Privacy-preserving representation generation. Implementations must be
/// irreversible and produce distinct output on every call for the same
/// input; encode() may be called concurrently.
class Pprg {
 public:
  virtual ~Pprg() = default;
  virtual EncodedRepresentation encode(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

/// Default generator: keyed embedding followed by hypersphere-Gamma noise.
/// Every call derives an independent randomness stream, so identical inputs
/// never produce identical representations.
class DefaultPprg : public Pprg {
 public:
  DefaultPprg(std::uint64_t embedding_key, PerturbationParams params);

  EncodedRepresentation encode(std::string_view text) override;
  std::string name() const override { return "default"; }

 private:
  TokenEmbedder embedder_;
  PerturbationParams params_;
  std::atomic<std::uint64_t> calls_{0};
};

/// Pass-through generator for ablation: embedding only, no noise.
class IdentityPprg : public Pprg {
 public:
  IdentityPprg(std::uint64_t embedding_key, std::size_t dim);

  EncodedRepresentation encode(std::string_view text) override;
  std::string name() const override { return "identity"; }

 private:
  TokenEmbedder embedder_;
};

using PprgFactory =
    std::function<std::unique_ptr<Pprg>(std::uint64_t embedding_key, PerturbationParams)>;

/// Registry hook for external generator plug-ins selected via
/// mode == "external:<name>".
void register_pprg(const std::string& name, PprgFactory factory);

/// Builds a generator from a pprg.mode string: "default", "identity", or
/// "external:<name>".
std::unique_ptr<Pprg> make_pprg(const std::string& mode, std::uint64_t embedding_key,
                                const PerturbationParams& params);

json to_json(const EncodedRepresentation& rep);
EncodedRepresentation representation_from_json(const json& j);

}  // namespace decoy
