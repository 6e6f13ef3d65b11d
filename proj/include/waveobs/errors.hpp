#pragma once

#include <stdexcept>
#include <string>

namespace waveobs {

/// Raised when the observation graph is disconnected at the requested level.
class GocViolation : public std::runtime_error {
public:
    explicit GocViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the HUM conjugate-gradient solve stagnates.
class IllConditionedHum : public std::runtime_error {
public:
    IllConditionedHum()
        : std::runtime_error(
              "ill-conditioned HUM system - domain may violate GOC or level too coarse") {}
};

/// Raised when power iteration collapses to the zero vector.
class DegenerateIterate : public std::runtime_error {
public:
    DegenerateIterate() : std::runtime_error("initial datum orthogonal to dominant eigenspace") {}
};

}  // namespace waveobs
