#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace decoy {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector's length does not match the expected dimension or label count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable numeric input.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter value (out-of-range eta, zero baseline, r < 2mn, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Empty or otherwise unusable model input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A label has no qualifying obfuscator in the pool.
class PoolCoverageError : public Error {
 public:
  using Error::Error;
};

/// The pool is too shallow for without-replacement group sampling.
class PoolDepthError : public Error {
 public:
  PoolDepthError(std::size_t label, std::size_t required, std::size_t available)
      : Error("pool depth for label " + std::to_string(label) + ": required " +
              std::to_string(required) + ", available " + std::to_string(available)),
        label(label),
        required(required),
        available(available) {}

  std::size_t label;
  std::size_t required;
  std::size_t available;
};

/// Couple count does not match the balance premise (a multiple of |C|).
class BalanceError : public Error {
 public:
  using Error::Error;
};

/// Two scheduled instances collided in the correlation ledger.
class LedgerConflictError : public Error {
 public:
  using Error::Error;
};

/// Responses are missing for some scheduled request ids.
class IncompleteBatchError : public Error {
 public:
  IncompleteBatchError(std::string message, std::vector<std::string> missing)
      : Error(std::move(message)), missing_request_ids(std::move(missing)) {}

  std::vector<std::string> missing_request_ids;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Network-level failure that survived the retry budget.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// The remote service violated the wire schema or distribution invariants.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A response's request id does not match the request that produced it.
class CorrelationError : public Error {
 public:
  using Error::Error;
};

/// Requested facility is disabled (e.g. adversary logging).
class UnavailableError : public Error {
 public:
  using Error::Error;
};

}  // namespace decoy
