#include "redundancy/scaling.hpp"

#include <cmath>
#include <string>

#include "numeric_util.hpp"
#include "redundancy/errors.hpp"

namespace redundancy {

std::string_view to_string(ScalingModel model) {
    switch (model) {
        case ScalingModel::Server: return "server";
        case ScalingModel::Data: return "data";
        case ScalingModel::Additive: return "additive";
    }
    return "?";
}

ScalingModel parse_scaling(std::string_view text) {
    if (text == "server") return ScalingModel::Server;
    if (text == "data") return ScalingModel::Data;
    if (text == "additive") return ScalingModel::Additive;
    throw InvalidArgument("unknown scaling '" + std::string(text) +
                          "' (expected server|data|additive)");
}

bool requires_shift(const ServiceDistribution& dist, ScalingModel scaling) noexcept {
    return scaling == ScalingModel::Data && !std::holds_alternative<ShiftedExp>(dist);
}

void validate_shift(const ServiceDistribution& dist, ScalingModel scaling,
                    std::optional<double> shift) {
    const bool needed = requires_shift(dist, scaling);
    if (needed && !shift)
        throw InvalidArgument("data-dependent scaling of " + std::string(family_name(dist)) +
                              " requires a shift");
    if (!needed && shift)
        throw InvalidArgument("a shift is only valid with data-dependent scaling of pareto or bimodal");
    if (shift && (!std::isfinite(*shift) || *shift < 0.0))
        throw InvalidArgument("shift must be finite and >= 0");
}

TaskModel::TaskModel(ServiceDistribution dist, ScalingModel scaling, std::optional<double> shift,
                     int s)
    : dist_(dist), scaling_(scaling), shift_(shift), s_(s) {
    if (s < 1) throw InvalidArgument("task size s must be >= 1");
    validate_shift(dist_, scaling_, shift_);
}

ServiceModel::ServiceModel(ServiceDistribution dist_, ScalingModel scaling_,
                           std::optional<double> shift_)
    : dist(dist_), scaling(scaling_), shift(shift_) {
    validate_shift(dist, scaling, shift);
}

double TaskModel::mean() const {
    const double s = s_;
    const double ex = redundancy::mean(dist_);
    switch (scaling_) {
        case ScalingModel::Server:
            if (const auto* se = std::get_if<ShiftedExp>(&dist_)) return se->delta + s * se->w;
            return s * ex;
        case ScalingModel::Data:
            if (const auto* se = std::get_if<ShiftedExp>(&dist_)) return s * se->delta + se->w;
            return s * *shift_ + ex;
        case ScalingModel::Additive:
            return s * ex;
    }
    return ex;
}

double sample_task_time(const TaskModel& task, RandomStream& rng) {
    const ServiceDistribution& dist = task.dist();
    const double s = task.size();
    switch (task.scaling()) {
        case ScalingModel::Server:
            if (const auto* se = std::get_if<ShiftedExp>(&dist))
                return se->delta - s * se->w * std::log(rng.uniform());
            return s * sample(dist, rng);
        case ScalingModel::Data:
            if (const auto* se = std::get_if<ShiftedExp>(&dist))
                return s * se->delta - se->w * std::log(rng.uniform());
            return s * *task.shift() + sample(dist, rng);
        case ScalingModel::Additive: {
            double total = 0.0;
            for (int i = 0; i < task.size(); ++i) total += sample(dist, rng);
            return total;
        }
    }
    return 0.0;
}

}  // namespace redundancy
