#pragma once

#include <stdexcept>
#include <string>

namespace memfuzzy {

/// Device constants or other physical parameters outside their domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector/matrix/universe shapes that do not line up.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A fuzzy number with no mass: the model was queried in a region no
/// training sample ever reached.
class EmptyOutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed experiment config, model file or CLI input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace memfuzzy
