#pragma once

#include <stdexcept>
#include <string>

namespace threatstream {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record, file line, or timestamp.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on a function argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Every term of an interval was pruned by the document-frequency limits.
class EmptyVocabularyError : public Error {
 public:
  using Error::Error;
};

/// Remote recognizer answered with something that is not the agreed schema.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Remote recognizer could not be reached.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Detected events and ground truth cannot be reconciled.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace threatstream
