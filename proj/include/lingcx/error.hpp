// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lingcx {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ingest
class MalformedInput : public Error { using Error::Error; };
class MissingBody : public Error { using Error::Error; };
class IoFailure : public Error { using Error::Error; };

/// A persisted line failed schema validation. `line()` is 1-based.
class CorruptRecord : public Error {
 public:
  CorruptRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// nlp / metrics
class EmptyCorpus : public Error { using Error::Error; };
class EmptyDocument : public Error { using Error::Error; };

// ethnicity
class InvalidDistribution : public Error { using Error::Error; };
class UnknownEthnicity : public Error { using Error::Error; };
class LookupUnavailable : public Error { using Error::Error; };

// stats
class EmptySample : public Error { using Error::Error; };
class NonFiniteValue : public Error { using Error::Error; };
class EmptyGroup : public Error { using Error::Error; };

// cli
class ConfigError : public Error { using Error::Error; };
class StageContractViolation : public Error { using Error::Error; };

}  // namespace lingcx
