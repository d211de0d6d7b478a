#pragma once

#include "adbsde/engine.hpp"
#include "adbsde/timegrid.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adbsde {

/// Deterministic function of (time, Brownian value); used for coefficient
/// processes, terminal/initial data and closed-form references.
using ScalarField = std::function<double(double t, double b)>;

enum class CoefficientKind { generator, drift, diffusion };
enum class Target { y, z, x };
enum class Wrap { raw, cond_exp, abs_cond_exp };
enum class Anchor { relative, absolute };
enum class Assumption { none, A1, A1p, A1pp, A2, B1, B2 };

const char* to_string(Assumption a);

/// One linear term: coefficient * sum_r w_r * read(target, t + r).
///
/// Relative anchors read at t + offset; absolute anchors read at
/// t0 + offset (a fixed time). Reads after t are conditioned on F_t.
struct Term {
    double constant = 1.0;
    ScalarField field;                 // optional coefficient process
    bool field_at_read_time = false;   // E[c_{t+r} y_{t+r} | F_t] rather than c_t E[y_{t+r} | F_t]
    LagMeasure lag;
    Target target = Target::y;
    Wrap wrap = Wrap::raw;
    Anchor anchor = Anchor::relative;
};

struct LipschitzDecl {
    Assumption tag = Assumption::none;
    double constant = 0.0;
    LagMeasure measure;  // lambda of (A1), lambda' of (A1)', lambda_1 of (B1)
};

class PathView;
using Evaluator = std::function<Column(int t_index, const PathView& view)>;

struct CoefficientSpec {
    CoefficientKind kind = CoefficientKind::generator;
    std::vector<Term> terms;
    ScalarField forcing;  // additive process, g(t, 0, 0) when `extra` is absent
    Evaluator extra;      // nonlinear escape hatch
    LipschitzDecl lipschitz;
};

/// Read access to the frozen solution processes rooted at one time index.
class PathView {
public:
    PathView(const Engine& engine, const NodeProcess* y, const NodeProcess* z, const NodeProcess* x = nullptr)
        : engine_(&engine), y_(y), z_(z), x_(x) {}

    [[nodiscard]] const Engine& engine() const { return *engine_; }
    [[nodiscard]] const NodeProcess& process(Target t) const;

    /// Value of `target` at `index`, seen from `at` (projected or conditioned),
    /// optionally multiplied by a coefficient field evaluated at `index`.
    [[nodiscard]] Column read(Target target, int index, int at, Wrap wrap,
                              const ScalarField& field_at_index = {}) const;

private:
    const Engine* engine_;
    const NodeProcess* y_;
    const NodeProcess* z_;
    const NodeProcess* x_;
};

/// Evaluates a coefficient at time index t for every node/path.
Column eval_coefficient(const CoefficientSpec& spec, int t_index, const PathView& view);

/// Evaluates a deterministic field on the nodes of index k.
Column field_column(const ScalarField& f, const Engine& engine, int k);

/// Construction-time checks: lag ranges, adaptedness of advanced terms and
/// consistency of the declared assumption tag with the term structure.
void validate_coefficient(const CoefficientSpec& spec, const TimeGrid& grid);

enum class ProblemKind { bsde, sde };
enum class ExpectedBehavior { converges, diverges };
/// SDE value on (T, T + u]: hold X_T, or zero (adjoint convention).
enum class Extension { hold, zero };

struct ReferenceSolution {
    ScalarField y;  // Y for BSDEs, X for SDEs
    ScalarField z;
};

struct ProblemSpec {
    std::string name;
    ProblemKind kind = ProblemKind::bsde;
    TimeGrid grid;
    std::map<std::string, double> params;

    CoefficientSpec generator;  // BSDE
    ScalarField xi;             // terminal data on [T, T + u], evaluated at (t, B_T)
    ScalarField eta;

    CoefficientSpec drift;  // SDE
    CoefficientSpec diffusion;
    ScalarField theta;      // initial data on [t_start, start]
    int start_index = -1;   // defaults to grid.t0_index()
    Extension extension = Extension::hold;

    std::optional<ReferenceSolution> reference;
    ExpectedBehavior expected = ExpectedBehavior::converges;
    std::optional<int> anchor_index;  // where iterate means are tracked

    /// Second member of a comparison pair (the dominated problem).
    std::shared_ptr<const ProblemSpec> partner;

    [[nodiscard]] int start() const { return start_index < 0 ? grid.t0_index() : start_index; }
};

using ParamMap = std::map<std::string, double>;

/// Names accepted by builtin_problem.
const std::vector<std::string>& builtin_names();

/// Assembles one of the built-in problems. Missing parameters take defaults;
/// `steps` sets the number of solve-window steps (dt = (T - t0) / steps).
ProblemSpec builtin_problem(const std::string& name, const ParamMap& params);

/// Constant coefficients of the linear pair (BSDE with advanced and delayed
/// terms, and its adjoint SDE).
struct LinearCoefficients {
    double b = 0.0, b_bar = 0.0, b_under = 0.0;
    double sigma = 0.0, sigma_bar = 0.0, sigma_under = 0.0;
    double c = 0.0;
};

/// Linear BSDE on `grid` with delay span `l` and advance span `u`.
ProblemSpec linear_bsde(const LinearCoefficients& k, const TimeGrid& grid, double l, double u,
                        ScalarField xi, ScalarField eta);

/// Adjoint linear SDE started at grid index `start` with X = 1 there and zero
/// before; delay span `u`, advance span `l`, and X = 0 after T.
ProblemSpec linear_sde(const LinearCoefficients& k, const TimeGrid& grid, double l, double u, int start);

/// Result of probing a declared Lipschitz constant.
struct AuditReport {
    Assumption assumption = Assumption::none;
    double declared = 0.0;
    double max_ratio = 0.0;
    bool passed = true;
    std::string worst_probe;
};

/// Empirical falsifier for a declared Lipschitz constant: the maximum
/// observed ratio over random probe pairs must not exceed declared * (1 + 1e-6).
/// `as` audits against a different declaration than the spec's own.
AuditReport lipschitz_audit(const CoefficientSpec& spec, const Engine& engine, int probe_count,
                            std::uint64_t seed, const std::optional<LipschitzDecl>& as = std::nullopt);

/// Declarations implied by a stronger one: A1'' -> A1' -> A1, A1 -> A2 (K1 = 2K^2),
/// B1 -> B2.
LipschitzDecl implied_declaration(const LipschitzDecl& d, Assumption target, const TimeGrid& grid);

}  // namespace adbsde
