#pragma once

#include <optional>
#include <string_view>

#include "redundancy/distributions.hpp"
#include "redundancy/random.hpp"

namespace redundancy {

/// How the service time of a task of s computing units relates to the
/// single-unit service time X.
///   Server:   Y = delta + s*X' for ShiftedExp (X' the exponential part), Y = s*X otherwise
///   Data:     Y = s*delta + X' for ShiftedExp, Y = s*shift + X otherwise
///   Additive: Y = X_1 + ... + X_s, i.i.d.
enum class ScalingModel { Server, Data, Additive };

std::string_view to_string(ScalingModel model);

/// Accepts "server", "data", "additive".
ScalingModel parse_scaling(std::string_view text);

/// A single worker's task: distribution, scaling, optional data shift and size s.
/// `shift` is required exactly when scaling is Data and the distribution has no
/// intrinsic minimum (Pareto, BiModal); it is rejected in every other case.
class TaskModel {
public:
    TaskModel(ServiceDistribution dist, ScalingModel scaling, std::optional<double> shift, int s);

    const ServiceDistribution& dist() const noexcept { return dist_; }
    ScalingModel scaling() const noexcept { return scaling_; }
    std::optional<double> shift() const noexcept { return shift_; }
    int size() const noexcept { return s_; }

    /// Closed-form E[Y]. Throws MomentDoesNotExist when E[X] is infinite.
    double mean() const;

private:
    ServiceDistribution dist_;
    ScalingModel scaling_;
    std::optional<double> shift_;
    int s_;
};

/// Whether `shift` must be supplied for this combination.
bool requires_shift(const ServiceDistribution& dist, ScalingModel scaling) noexcept;

/// Throws InvalidArgument if `shift` is present/absent against requires_shift.
void validate_shift(const ServiceDistribution& dist, ScalingModel scaling,
                    std::optional<double> shift);

/// Distribution + scaling (+ shift): everything about a worker except its task size.
struct ServiceModel {
    ServiceDistribution dist;
    ScalingModel scaling;
    std::optional<double> shift;

    ServiceModel(ServiceDistribution dist, ScalingModel scaling, std::optional<double> shift = {});

    TaskModel task(int s) const { return TaskModel(dist, scaling, shift, s); }
};

/// One realization of Y. Additive consumes exactly s uniforms, the others one.
double sample_task_time(const TaskModel& task, RandomStream& rng);

}  // namespace redundancy
