#pragma once

#include <stdexcept>
#include <string>

namespace p2pmarket {

enum class ErrorCode {
    invalid_argument,     // bad parameter or domain violation
    capacity_exceeded,    // volume at or beyond ISP capacity
    no_sign_change,       // root bracket without a sign change
    max_iterations,       // iterative solver did not converge
    no_equilibrium_root,  // no root of the equilibrium condition in range
    second_order_failed,  // equilibrium candidate fails the curvature test
    negative_price,       // recovered price is negative
    negative_surplus,     // bargaining surplus below zero
    inconsistent_pairs,   // profit pairs do not sum to the same total
    traffic_mismatch,     // traffic matrices inconsistent with stated volume
    background_mismatch,  // per-ISP background traffic fails the balance check
    negative_free_riding, // an ISP reports negative free-riding volume
    weight_sum,           // distribution weights do not sum to one
    zero_volume,          // weight denominator is zero
    dimension_mismatch,   // matrix/vector sizes disagree
    non_finite,           // evaluation produced NaN or infinity
    scenario,             // scenario file missing/invalid
};

/// Engine-wide exception carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

} // namespace p2pmarket
