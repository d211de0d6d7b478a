#pragma once

#include <cstddef>
#include <vector>

namespace adbsde {

/// Uniform discretization of the extended horizon [t0 - l, T + u].
///
/// Index 0 is the start of the delay segment, index `t0_index()` is the start
/// of the solve window and `T_index()` its end. The advance segment
/// (T, T + u] follows. Spans l, u and T - t0 are exact multiples of dt.
class TimeGrid {
public:
    TimeGrid() = default;

    [[nodiscard]] double t_start() const { return t0_ - delay_steps_ * dt_; }
    [[nodiscard]] double t0() const { return t0_; }
    [[nodiscard]] double T() const { return T_; }
    [[nodiscard]] double l() const { return delay_steps_ * dt_; }
    [[nodiscard]] double u() const { return advance_steps_ * dt_; }
    [[nodiscard]] double dt() const { return dt_; }

    [[nodiscard]] int delay_steps() const { return delay_steps_; }
    [[nodiscard]] int advance_steps() const { return advance_steps_; }
    [[nodiscard]] int window_steps() const { return window_steps_; }

    [[nodiscard]] int t0_index() const { return delay_steps_; }
    [[nodiscard]] int T_index() const { return delay_steps_ + window_steps_; }
    [[nodiscard]] int last_index() const { return T_index() + advance_steps_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(last_index() + 1); }

    /// Time of grid point k. Exact at t0 (the solve-window anchor).
    [[nodiscard]] double time_of(int k) const { return t0_ + (k - delay_steps_) * dt_; }

    /// Index of a grid-aligned time; throws if t is off-grid or out of range.
    [[nodiscard]] int index_of(double t) const;

    /// Signed step count of a grid-aligned duration; throws if misaligned.
    [[nodiscard]] int steps_of(double duration, const char* what = "duration") const;

    [[nodiscard]] bool contains(int k) const { return k >= 0 && k <= last_index(); }

    friend TimeGrid make_grid(double t0, double T, double l, double u, double dt);

private:
    double t0_ = 0.0;
    double T_ = 1.0;
    double dt_ = 1.0;
    int delay_steps_ = 0;
    int advance_steps_ = 0;
    int window_steps_ = 1;
};

/// Builds the grid covering [t0 - l, T + u] with step dt.
TimeGrid make_grid(double t0, double T, double l, double u, double dt);

/// Discrete probability measure on signed step offsets.
struct LagMeasure {
    std::vector<int> offsets;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return offsets.size(); }
    [[nodiscard]] int min_offset() const;
    [[nodiscard]] int max_offset() const;
    [[nodiscard]] bool is_probability(double tol = 1e-12) const;
};

/// Interval lag measure together with the interval length it was normalized by.
struct ScaledLag {
    LagMeasure measure;
    double scale = 1.0;
};

/// Dirac measure at a lag in [-l, u].
LagMeasure point_mass(double offset_time, const TimeGrid& grid);

/// Trapezoidal discretization of the uniform law on [a, b] within [-l, u].
/// The measure is normalized; `scale` carries b - a.
ScaledLag uniform_lag(double a, double b, const TimeGrid& grid);

/// Mixture sum_i w_i * m_i, merging equal offsets.
LagMeasure mix(const std::vector<LagMeasure>& parts, const std::vector<double>& mix_weights);

/// Checks a measure's offsets lie inside [-delay_steps, advance_steps].
void validate_lag(const LagMeasure& m, const TimeGrid& grid);

}  // namespace adbsde
