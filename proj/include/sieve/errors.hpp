#pragma once

#include <stdexcept>
#include <string>

namespace sieve {

/// Base class for all pipeline errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// corpus
class MalformedLine : public Error { using Error::Error; };
class SchemaViolation : public Error { using Error::Error; };
class IoFailure : public Error { using Error::Error; };
class EmptyCorpus : public Error { using Error::Error; };
class LabelOverlap : public Error { using Error::Error; };
class InvalidWindow : public Error { using Error::Error; };

// learners
class SingleClassInput : public Error { using Error::Error; };
class DimensionMismatch : public Error { using Error::Error; };
class EmptyNode : public Error { using Error::Error; };

// metrics
class LengthMismatch : public Error { using Error::Error; };

// tasks
class EmptyClass : public Error { using Error::Error; };

// evaluation
class TooFewInstances : public Error { using Error::Error; };
class EmptyGrid : public Error { using Error::Error; };
class EmptySlice : public Error { using Error::Error; };

// synth
class InvalidSpec : public Error { using Error::Error; };

// cli
class UsageError : public Error { using Error::Error; };

}  // namespace sieve
