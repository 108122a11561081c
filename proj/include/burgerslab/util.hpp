#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace burgerslab {

inline constexpr const char* kVersion = "0.1.0";

// Integer power by repeated squaring.  Used everywhere a monomial is
// evaluated: the multiplication chain commutes exactly with scaling the
// argument by a power of two, which the scaling-equivariance guarantees
// depend on (std::pow does not have that property).
inline double ipow(double x, long long e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double acc = 1.0;
    double base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Neumaier-compensated accumulator: one running sum plus a carry for the
// low-order bits lost at each add.  Deterministic for a fixed visit order.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }
    void reset() { sum_ = 0.0; carry_ = 0.0; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// Shortest round-trip decimal form, used for every numeric field written to
// CSV so that reruns are byte-comparable.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Error taxonomy.  ConfigError -> CLI exit 2, SolverError -> CLI exit 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CflViolation : SolverError {
    using SolverError::SolverError;
};
struct BoundaryContact : SolverError {
    using SolverError::SolverError;
};

}  // namespace burgerslab
