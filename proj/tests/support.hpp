#pragma once

// Shared fixtures: the reference scenario every worked number uses, and
// an Approx that supports an absolute margin alongside the relative
// epsilon.

#include <cmath>
#include <ostream>

#include "p2pmarket/baseline.hpp"
#include "p2pmarket/cooperation.hpp"
#include "p2pmarket/states.hpp"

namespace testsupport {

class Approx {
public:
    explicit Approx(double value) : value_(value) {}
    Approx& epsilon(double rel) {
        rel_ = rel;
        return *this;
    }
    Approx& margin(double abs) {
        abs_ = abs;
        return *this;
    }

    friend bool operator==(double lhs, const Approx& rhs) {
        double tol = std::max(
            rhs.abs_, rhs.rel_ * (1.0 + std::max(std::abs(lhs),
                                                 std::abs(rhs.value_))));
        return std::abs(lhs - rhs.value_) <= tol;
    }
    friend bool operator==(const Approx& lhs, double rhs) { return rhs == lhs; }
    friend std::ostream& operator<<(std::ostream& os, const Approx& a) {
        return os << "Approx(" << a.value_ << ", margin " << a.abs_
                  << ", epsilon " << a.rel_ << ")";
    }

private:
    double value_;
    double rel_ = 1.192e-5;  // doctest's default relative tolerance
    double abs_ = 0.0;
};

inline p2pmarket::MarketParameters reference_params() {
    return {0.75, 0.25, 100.0};
}

inline p2pmarket::FunctionFamily reference_family() {
    return p2pmarket::FunctionFamily::reference(100.0);
}

inline p2pmarket::BaselineEquilibrium reference_baseline() {
    return p2pmarket::solve_state0_unique(reference_params(), reference_family());
}

inline p2pmarket::P2PContext reference_context(double alpha = 0.6,
                                               double beta = 0.3) {
    return {reference_params(), reference_family(), reference_baseline(),
            p2pmarket::TrafficProfile(alpha, beta)};
}

// Closed-form stationarity condition of the reference scenario,
// independent of the family/baseline code paths:
//   o + phi1 + phi2 = 8/(v+1) - (35/3) v/(v+1)^2 - 100/(100-v)^2
inline double reference_stationarity(double v) {
    double u = v + 1.0;
    double r = 100.0 - v;
    return 8.0 / u - (35.0 / 3.0) * v / (u * u) - 100.0 / (r * r);
}

// Test-local bisection oracle for the reference equilibrium volume.
inline double reference_root_oracle() {
    double lo = 1.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (reference_stationarity(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace testsupport
