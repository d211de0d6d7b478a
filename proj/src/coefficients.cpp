#include "adbsde/coefficients.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adbsde {

const char* to_string(Assumption a) {
    switch (a) {
        case Assumption::none: return "none";
        case Assumption::A1: return "A1";
        case Assumption::A1p: return "A1'";
        case Assumption::A1pp: return "A1''";
        case Assumption::A2: return "A2";
        case Assumption::B1: return "B1";
        case Assumption::B2: return "B2";
    }
    return "?";
}

const NodeProcess& PathView::process(Target t) const {
    const NodeProcess* p = t == Target::y ? y_ : t == Target::z ? z_ : x_;
    if (p == nullptr) throw std::invalid_argument("path view has no process for the requested target");
    return *p;
}

Column field_column(const ScalarField& f, const Engine& engine, int k) {
    const Column b = engine.brownian(k);
    const double t = engine.grid().time_of(k);
    Column out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = f(t, b[i]);
    return out;
}

Column PathView::read(Target target, int index, int at, Wrap wrap, const ScalarField& field_at_index) const {
    const Engine& e = *engine_;
    if (!e.grid().contains(index)) {
        throw std::out_of_range("coefficient read outside the extended horizon");
    }
    Column v = process(target)[index];
    if (field_at_index) {
        const Column c = field_column(field_at_index, e, index);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= c[i];
    }
    if (wrap == Wrap::abs_cond_exp) {
        for (double& d : v) d = std::abs(d);
    }
    if (index < at) return e.delayed_read(v, index, at);
    if (index == at) return v;
    if (wrap == Wrap::raw) {
        throw std::invalid_argument("advanced read without conditional expectation is not adapted");
    }
    return e.cond_exp(v, index, at);
}

namespace {

int read_index(const Term& term, int offset, int t_index, const TimeGrid& grid) {
    return term.anchor == Anchor::relative ? t_index + offset : grid.t0_index() + offset;
}

}  // namespace

Column eval_coefficient(const CoefficientSpec& spec, int t_index, const PathView& view) {
    const Engine& e = view.engine();
    const TimeGrid& g = e.grid();
    Column out(e.width(t_index), 0.0);
    for (const Term& term : spec.terms) {
        Column acc(out.size(), 0.0);
        for (std::size_t j = 0; j < term.lag.size(); ++j) {
            const int idx = read_index(term, term.lag.offsets[j], t_index, g);
            const Column r = view.read(term.target, idx, t_index, term.wrap,
                                       term.field_at_read_time ? term.field : ScalarField{});
            const double w = term.lag.weights[j];
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * r[i];
        }
        if (term.field && !term.field_at_read_time) {
            const Column c = field_column(term.field, e, t_index);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= c[i];
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += term.constant * acc[i];
    }
    if (spec.forcing) {
        const Column f = field_column(spec.forcing, e, t_index);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += f[i];
    }
    if (spec.extra) {
        const Column x = spec.extra(t_index, view);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[i];
    }
    return out;
}

void validate_coefficient(const CoefficientSpec& spec, const TimeGrid& grid) {
    for (const Term& term : spec.terms) {
        if (term.lag.size() == 0 || term.lag.offsets.size() != term.lag.weights.size()) {
            throw std::invalid_argument("term has an empty or malformed lag measure");
        }
        for (int off : term.lag.offsets) {
            if (term.anchor == Anchor::relative) {
                if (off < -grid.delay_steps() || off > grid.advance_steps()) {
                    throw std::invalid_argument("lag offset " + std::to_string(off) +
                                                " steps reaches outside [-l, u]");
                }
                if (off > 0 && term.wrap == Wrap::raw) {
                    throw std::invalid_argument("advanced term must be wrapped in a conditional expectation");
                }
            } else {
                const int idx = grid.t0_index() + off;
                if (!grid.contains(idx)) {
                    throw std::invalid_argument("fixed-time read outside the extended horizon");
                }
                if (idx > grid.t0_index() && term.wrap == Wrap::raw) {
                    throw std::invalid_argument("fixed-time read after t0 must be conditionally expected");
                }
            }
        }
        const bool lagged = term.anchor == Anchor::absolute ||
                            term.lag.min_offset() != 0 || term.lag.max_offset() != 0;
        if (spec.lipschitz.tag == Assumption::A1pp && lagged) {
            throw std::invalid_argument("assumption A1'' forbids delayed or advanced arguments");
        }
        if (spec.lipschitz.tag == Assumption::A1p && lagged && term.target == Target::z) {
            throw std::invalid_argument("assumption A1' allows only the present z");
        }
    }
    const auto& d = spec.lipschitz;
    if (d.tag == Assumption::A1 || d.tag == Assumption::A1p || d.tag == Assumption::B1) {
        validate_lag(d.measure, grid);
    }
    if (d.tag != Assumption::none && d.constant < 0.0) {
        throw std::invalid_argument("declared Lipschitz constant must be non-negative");
    }
}

LipschitzDecl implied_declaration(const LipschitzDecl& d, Assumption target, const TimeGrid& grid) {
    if (d.tag == target) return d;
    const LagMeasure present = point_mass(0.0, grid);
    switch (d.tag) {
        case Assumption::A1pp:
            if (target == Assumption::A1p) return {Assumption::A1p, d.constant, present};
            if (target == Assumption::A1 || target == Assumption::A2) {
                return implied_declaration(implied_declaration(d, Assumption::A1p, grid), target, grid);
            }
            break;
        case Assumption::A1p:
            if (target == Assumption::A1) {
                // K'(E|dy|_lambda' + |dz_t|) <= 2K' E[(|dy| + |dz|)] under (lambda' + delta_0) / 2
                return {Assumption::A1, 2.0 * d.constant, mix({d.measure, present}, {0.5, 0.5})};
            }
            if (target == Assumption::A2) {
                return implied_declaration(implied_declaration(d, Assumption::A1, grid), target, grid);
            }
            break;
        case Assumption::A1:
            if (target == Assumption::A2) return {Assumption::A2, 2.0 * d.constant * d.constant, {}};
            break;
        case Assumption::B1:
            if (target == Assumption::B2) return {Assumption::B2, d.constant * d.constant, {}};
            break;
        default:
            break;
    }
    throw std::invalid_argument(std::string("no implication from ") + to_string(d.tag) + " to " +
                                to_string(target));
}

}  // namespace adbsde
