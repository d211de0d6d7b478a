#include "adbsde/timegrid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace adbsde {

namespace {

constexpr double kAlignTol = 1e-9;

int aligned_steps(double span, double dt, const std::string& what) {
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > kAlignTol * std::max(1.0, std::abs(ratio))) {
        throw std::invalid_argument(what + " = " + std::to_string(span) +
                                    " is not an integer multiple of dt = " + std::to_string(dt));
    }
    return static_cast<int>(rounded);
}

}  // namespace

TimeGrid make_grid(double t0, double T, double l, double u, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be positive, got " + std::to_string(dt));
    }
    if (!(T > t0)) {
        throw std::invalid_argument("T must exceed t0");
    }
    if (l < 0.0 || u < 0.0) {
        throw std::invalid_argument("delay span l and advance span u must be non-negative");
    }
    TimeGrid g;
    g.t0_ = t0;
    g.T_ = T;
    g.dt_ = dt;
    g.delay_steps_ = aligned_steps(l, dt, "delay span l");
    g.advance_steps_ = aligned_steps(u, dt, "advance span u");
    g.window_steps_ = aligned_steps(T - t0, dt, "window span T - t0");
    return g;
}

int TimeGrid::steps_of(double duration, const char* what) const {
    return aligned_steps(duration, dt_, what);
}

int TimeGrid::index_of(double t) const {
    const int k = aligned_steps(t - t_start(), dt_, "time offset");
    if (!contains(k)) {
        throw std::out_of_range("time " + std::to_string(t) + " lies outside the grid");
    }
    return k;
}

int LagMeasure::min_offset() const {
    return offsets.empty() ? 0 : *std::min_element(offsets.begin(), offsets.end());
}

int LagMeasure::max_offset() const {
    return offsets.empty() ? 0 : *std::max_element(offsets.begin(), offsets.end());
}

bool LagMeasure::is_probability(double tol) const {
    if (offsets.size() != weights.size() || offsets.empty()) return false;
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; })) return false;
    return std::abs(std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0) <= tol;
}

void validate_lag(const LagMeasure& m, const TimeGrid& grid) {
    if (!m.is_probability()) {
        throw std::invalid_argument("lag weights must be non-negative and sum to 1");
    }
    if (m.min_offset() < -grid.delay_steps() || m.max_offset() > grid.advance_steps()) {
        throw std::invalid_argument("lag offset outside [-l, u]");
    }
}

LagMeasure point_mass(double offset_time, const TimeGrid& grid) {
    LagMeasure m{{grid.steps_of(offset_time, "lag")}, {1.0}};
    validate_lag(m, grid);
    return m;
}

ScaledLag uniform_lag(double a, double b, const TimeGrid& grid) {
    const int ia = grid.steps_of(a, "lower lag bound");
    const int ib = grid.steps_of(b, "upper lag bound");
    if (ib <= ia) {
        throw std::invalid_argument("uniform lag needs a < b");
    }
    const int n = ib - ia;
    LagMeasure m;
    for (int k = ia; k <= ib; ++k) {
        m.offsets.push_back(k);
        const double w = (k == ia || k == ib) ? 0.5 : 1.0;
        m.weights.push_back(w / n);
    }
    validate_lag(m, grid);
    return {std::move(m), (ib - ia) * grid.dt()};
}

LagMeasure mix(const std::vector<LagMeasure>& parts, const std::vector<double>& mix_weights) {
    if (parts.size() != mix_weights.size() || parts.empty()) {
        throw std::invalid_argument("mix needs one weight per measure");
    }
    std::map<int, double> acc;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts[i].size(); ++j) {
            acc[parts[i].offsets[j]] += mix_weights[i] * parts[i].weights[j];
        }
    }
    LagMeasure out;
    for (const auto& [off, w] : acc) {
        out.offsets.push_back(off);
        out.weights.push_back(w);
    }
    return out;
}

}  // namespace adbsde
