#pragma once

#include <stdexcept>
#include <string>

namespace radiomark {

/// Broad failure category; the CLI maps each to a distinct exit code.
enum class ErrorKind { config, io, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

// Volume loading.
struct UnknownFormatError : IoError {
    using IoError::IoError;
};
struct UnsupportedDatatypeError : IoError {
    using IoError::IoError;
};
struct PayloadSizeError : IoError {
    using IoError::IoError;
};

// Geometry and preprocessing.
struct DimsError : ConfigError {
    using ConfigError::ConfigError;
};
struct EmptyMaskError : ConfigError {
    using ConfigError::ConfigError;
};

/// Every direction/neighbourhood of a texture family produced an empty matrix.
struct DegenerateMatrixError : NumericError {
    using NumericError::NumericError;
};

// Model fitting and evaluation.
struct SingleClassError : NumericError {
    using NumericError::NumericError;
};
struct NonFiniteInputError : NumericError {
    using NumericError::NumericError;
};
struct FoldError : NumericError {
    using NumericError::NumericError;
};
struct MissingFeatureError : ConfigError {
    using ConfigError::ConfigError;
};
struct CohortTooSmallError : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace radiomark
