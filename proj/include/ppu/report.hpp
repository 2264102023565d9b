#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ppu {

/// Outcome of one sampled property check.
///
/// pass holds exactly when no failure was recorded and max_error stays within
/// tolerance. A check with fewer than `min_conclusive` non-vacuous samples is
/// additionally flagged inconclusive; ok() requires both.
struct CheckReport {
    std::string check;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_error = 0.0;
    std::size_t vacuous = 0;
    bool pass = false;
    bool inconclusive = false;
    std::size_t failure_count = 0;
    std::vector<nlohmann::json> failures;

    /// Residual-type observation; a failure is logged when it exceeds tolerance
    /// (or is not finite).
    void observe(double residual, const nlohmann::json& payload);

    /// Boolean observation (exact agreement required).
    void expect(bool holds, const nlohmann::json& payload);

    void skip_vacuous() { ++vacuous; }

    std::size_t non_vacuous() const { return samples - vacuous; }

    /// Computes pass/inconclusive. Call once after all samples.
    void finish(std::size_t min_conclusive = 20);

    bool ok() const { return pass && !inconclusive; }
};

/// Failure payloads kept per report; further failures are only counted.
inline constexpr std::size_t kMaxFailurePayloads = 8;

}  // namespace ppu
