#include "ppu/report.hpp"

#include <cmath>

namespace ppu {

void CheckReport::observe(double residual, const nlohmann::json& payload) {
    if (std::isfinite(residual) && residual <= tolerance) {
        if (residual > max_error) max_error = residual;
        return;
    }
    if (!std::isfinite(residual) || residual > max_error) max_error = residual;
    ++failure_count;
    if (failures.size() < kMaxFailurePayloads) failures.push_back(payload);
}

void CheckReport::expect(bool holds, const nlohmann::json& payload) {
    if (holds) return;
    ++failure_count;
    if (failures.size() < kMaxFailurePayloads) failures.push_back(payload);
}

void CheckReport::finish(std::size_t min_conclusive) {
    pass = failure_count == 0 && std::isfinite(max_error) && max_error <= tolerance;
    inconclusive = non_vacuous() < min_conclusive;
}

}  // namespace ppu
