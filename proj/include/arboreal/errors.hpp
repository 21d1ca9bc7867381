#pragma once

#include <stdexcept>
#include <string>

namespace arboreal {

// Structural violation in an edge list or tree file.
class InvalidTree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured size cap (vertices, chain-space dimension, LP basis) was hit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arboreal
