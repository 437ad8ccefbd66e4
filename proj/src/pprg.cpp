#include "decoy/pprg.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>

namespace decoy {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) {
      std::string_view tok = text.substr(start, i - start);
      if (tok != kSequenceSeparator) {
        tokens.emplace_back(tok);
      }
    }
  }
  return tokens;
}

void EncodedRepresentation::validate() const {
  if (vectors.empty()) {
    throw DimensionError("encoded representation has no tokens");
  }
  const std::size_t d = vectors.front().size();
  if (d == 0) {
    throw DimensionError("encoded representation has zero dimension");
  }
  for (const auto& v : vectors) {
    if (v.size() != d) {
      throw DimensionError("encoded representation rows disagree in dimension");
    }
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw NumericError("encoded representation entry is not finite");
      }
    }
  }
}

TokenEmbedder::TokenEmbedder(std::uint64_t key, std::size_t dim) : key_(key), dim_(dim) {
  if (dim_ == 0) {
    throw ParameterError("embedding dimension must be >= 1");
  }
}

std::vector<double> TokenEmbedder::embed(std::string_view token) const {
  std::uint64_t state = key_ ^ fnv1a64(token);
  splitmix64(state);
  Rng rng{splitmix64(state)};
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim_);
  double norm_sq = 0.0;
  for (double& x : v) {
    x = normal(rng);
    norm_sq += x * x;
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) {
    x *= inv_norm;
  }
  return v;
}

EncodedRepresentation TokenEmbedder::embed_tokens(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw InputError("cannot embed empty token stream");
  }
  EncodedRepresentation rep;
  rep.vectors.reserve(tokens.size());
  for (const auto& tok : tokens) {
    rep.vectors.push_back(embed(tok));
  }
  return rep;
}

EncodedRepresentation embed_tokens(std::string_view text, std::size_t dim, std::uint64_t key) {
  return TokenEmbedder(key, dim).embed_tokens(text);
}

std::vector<double> sample_unit_sphere(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> p(dim);
  double norm_sq = 0.0;
  for (double& x : p) {
    x = normal(rng);
    norm_sq += x * x;
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& x : p) {
    x *= inv_norm;
  }
  return p;
}

EncodedRepresentation perturb(const EncodedRepresentation& rep,
                              const PerturbationParams& params, Rng& rng) {
  if (params.eta <= 0.0) {
    throw ParameterError("perturbation eta must be positive, got " +
                         std::to_string(params.eta));
  }
  rep.validate();
  const std::size_t d = rep.dim();
  std::gamma_distribution<double> gamma(static_cast<double>(d), 1.0 / params.eta);
  EncodedRepresentation out;
  out.vectors.reserve(rep.vectors.size());
  for (const auto& v : rep.vectors) {
    const double r = gamma(rng);
    const auto p = sample_unit_sphere(d, rng);
    std::vector<double> noisy(d);
    for (std::size_t i = 0; i < d; ++i) {
      noisy[i] = v[i] + r * p[i];
    }
    out.vectors.push_back(std::move(noisy));
  }
  return out;
}

DefaultPprg::DefaultPprg(std::uint64_t embedding_key, PerturbationParams params)
    : embedder_(embedding_key, params.dim), params_(params) {
  if (params_.eta <= 0.0) {
    throw ParameterError("perturbation eta must be positive");
  }
}

EncodedRepresentation DefaultPprg::encode(std::string_view text) {
  // Each call gets its own derived stream so concurrent encodes never
  // correlate and identical inputs never repeat.
  const std::uint64_t call = calls_.fetch_add(1, std::memory_order_relaxed);
  std::uint64_t state = params_.seed ^ (0x9e3779b97f4a7c15ULL * (call + 1));
  Rng rng{splitmix64(state)};
  return perturb(embedder_.embed_tokens(text), params_, rng);
}

IdentityPprg::IdentityPprg(std::uint64_t embedding_key, std::size_t dim)
    : embedder_(embedding_key, dim) {}

EncodedRepresentation IdentityPprg::encode(std::string_view text) {
  return embedder_.embed_tokens(text);
}

namespace {

std::map<std::string, PprgFactory>& pprg_registry() {
  static std::map<std::string, PprgFactory> registry;
  return registry;
}

std::mutex& pprg_registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void register_pprg(const std::string& name, PprgFactory factory) {
  std::lock_guard lock(pprg_registry_mutex());
  pprg_registry()[name] = std::move(factory);
}

std::unique_ptr<Pprg> make_pprg(const std::string& mode, std::uint64_t embedding_key,
                                const PerturbationParams& params) {
  if (mode == "default") {
    return std::make_unique<DefaultPprg>(embedding_key, params);
  }
  if (mode == "identity") {
    return std::make_unique<IdentityPprg>(embedding_key, params.dim);
  }
  constexpr std::string_view kExternalPrefix = "external:";
  if (mode.rfind(kExternalPrefix, 0) == 0) {
    const std::string name = mode.substr(kExternalPrefix.size());
    std::lock_guard lock(pprg_registry_mutex());
    auto it = pprg_registry().find(name);
    if (it == pprg_registry().end()) {
      throw ParameterError("no external pprg registered under name: " + name);
    }
    return it->second(embedding_key, params);
  }
  throw ParameterError("unknown pprg mode: " + mode);
}

json to_json(const EncodedRepresentation& rep) {
  return json(rep.vectors);
}

EncodedRepresentation representation_from_json(const json& j) {
  EncodedRepresentation rep;
  rep.vectors = j.get<std::vector<std::vector<double>>>();
  rep.validate();
  return rep;
}

}  // namespace decoy
