#pragma once

#include <cstddef>
#include <string>

#include "mnv/algebra/rational_fn.hpp"

namespace mnv {

/// Outcome of one exact certificate.
struct VerificationReport {
    std::string check;
    bool passed = false;
    unsigned degree = 0;     ///< max numerator total degree examined
    std::size_t terms = 0;   ///< peak numerator term count
    double millis = 0.0;
    std::string failure;     ///< error kind on failure, e.g. "ResidualNonzero"
    std::string detail;      ///< witness or audit trail

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Tracks the largest numerator seen while assembling a certificate.
class Telemetry {
public:
    const RationalFn& observe(const RationalFn& f) {
        degree_ = std::max(degree_, f.num().degree());
        peak_terms_ = std::max(peak_terms_, f.num().size());
        return f;
    }
    unsigned degree() const noexcept { return degree_; }
    std::size_t peak_terms() const noexcept { return peak_terms_; }

private:
    unsigned degree_ = 0;
    std::size_t peak_terms_ = 0;
};

}  // namespace mnv
