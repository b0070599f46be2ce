#pragma once

#include <stdexcept>
#include <string>

namespace waitlaw {

// Rational point: the digit stream / orbit ended (absorbed) and cannot supply
// what was asked for.
class termination_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The lazy sample's bit budget would be exceeded. Never a silent fallback.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A waiting-time query needs visits beyond the computed horizon; the caller
// must extend the stream or orbit and retry.
class horizon_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The float orbit engine's forward error bound straddles a decision boundary.
class precision_degraded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace waitlaw
