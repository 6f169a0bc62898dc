// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file commands.hpp
 * Command dispatch for the qprob CLI. Each command maps a Scenario onto one
 * engine operation and returns a Report ready for render().
 *
 *   validate     invariant residuals of every scenario object
 *   gross        P{e_i} = tr{P e_i} per observable (or classical P{e})
 *   joint        P_ij = tr{P e_i f_j} for a sensor pair, plus correlation note
 *   conditional  P_[i]{f_j} = tr{P_[i] f_j}
 *   collapse     P_[i] = e_i P e_i / P_i per channel
 *   luder        sum_i e_i P e_i and its channel probabilities
 *   branches     per-channel P_i, P_[i] and support diagnostics
 *   net          gross -> net table under the scenario's weighting scheme
 *   lifetime     perception-probability mass over a lifetime profile
 *   check        validate + sensor correlation + engine invariants
 *
 * Errors: UsageError for command/scenario mismatches; engine errors
 * (ValidationError, ZeroProbabilityError, ...) propagate unchanged.
 */

#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "render.hpp"
#include "scenario.hpp"

namespace qprob {

inline constexpr std::array<std::string_view, 10> kCommands = {
    "validate", "gross", "joint", "conditional", "collapse",
    "luder",    "branches", "net", "lifetime",   "check"};

struct RunOptions {
    double tol = kDefaultTol;
    std::optional<LogBase> log_base;
    int precision = 6;
    std::optional<std::string> observable; ///< collapse / luder / branches / gross
    std::optional<std::string> rows;       ///< joint / conditional / check / net layout
    std::optional<std::string> cols;
    std::optional<std::string> channel;    ///< collapse / conditional: one channel label
    std::optional<double> correlation_tol;
};

namespace detail {

inline std::string num(double v, int precision) { return fixed(v, precision); }

inline void require_state(const Scenario &s, std::string_view command) {
    if (!s.state) {
        throw UsageError(std::string(command) + " requires a quantum state in the scenario");
    }
}

inline std::size_t pick_observable(const Scenario &s, const RunOptions &o,
                                   std::string_view command) {
    if (s.observables.empty()) {
        throw UsageError(std::string(command) + " requires at least one observable");
    }
    return o.observable ? s.observable_index(*o.observable) : 0;
}

inline std::pair<std::size_t, std::size_t> pick_pair(const Scenario &s, const RunOptions &o,
                                                     std::string_view command) {
    if (!s.composite || s.composite->factor_count() < 2) {
        throw UsageError(std::string(command) + " requires a composite space with >= 2 factors");
    }
    std::optional<std::size_t> rows, cols;
    if (s.joint) {
        rows = s.joint->first;
        cols = s.joint->second;
    }
    if (o.rows) rows = s.observable_index(*o.rows);
    if (o.cols) cols = s.observable_index(*o.cols);
    if (!rows || !cols) {
        for (std::size_t i = 0; i < s.observables.size() && !(rows && cols); ++i) {
            for (std::size_t j = i + 1; j < s.observables.size(); ++j) {
                if (s.observables[i].factor != s.observables[j].factor) {
                    if (!rows) rows = i;
                    if (!cols) cols = j;
                    break;
                }
            }
        }
    }
    if (!rows || !cols) {
        throw UsageError(std::string(command) +
                         " requires two observables on different factors");
    }
    if (s.observables[*rows].factor == s.observables[*cols].factor) {
        throw UsageError(std::string(command) + ": observables '" + s.observables[*rows].id +
                         "' and '" + s.observables[*cols].id + "' act on the same factor");
    }
    return {*rows, *cols};
}

inline std::size_t pick_channel(const Observable &obs, const std::string &label) {
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs.labels()[i] == label) return i;
    }
    throw UsageError("observable has no channel '" + label + "'");
}

/// "|i,j>" style labels for composite basis states.
inline std::vector<std::string> basis_labels(const Scenario &s) {
    const auto &comp = *s.composite;
    std::vector<std::string> out;
    for (std::size_t n = 0; n < comp.space().dim(); ++n) {
        std::string label = "|";
        std::size_t rest = n;
        std::vector<std::size_t> digits(comp.factor_count());
        for (std::size_t k = comp.factor_count(); k-- > 0;) {
            digits[k] = rest % comp.factor(k).dim();
            rest /= comp.factor(k).dim();
        }
        for (std::size_t k = 0; k < digits.size(); ++k) {
            label += (k ? "," : "") + std::to_string(digits[k]);
        }
        out.push_back(label + ">");
    }
    return out;
}

inline std::vector<RenderedTable> matrix_tables(const Scenario &s, const Matrix &m,
                                                const std::string &caption) {
    const auto labels = basis_labels(s);
    RenderedTable re{caption + " (real part)", "", labels, labels, {}, {}, {}, {}, {}, {}};
    RenderedTable im{caption + " (imaginary part)", "", labels, labels, {}, {}, {}, {}, {}, {}};
    bool has_imag = false;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.cells.push_back(m(r, c).real());
            im.cells.push_back(m(r, c).imag());
            has_imag = has_imag || m(r, c).imag() != 0.0;
        }
    }
    if (!has_imag) {
        re.caption = caption;
        return {re};
    }
    return {re, im};
}

struct CheckRow {
    std::string what;
    double residual;
    double tol;
};

inline RenderedTable checks_table(const std::vector<CheckRow> &rows) {
    RenderedTable t{"invariant checks", "check", {}, {"residual", "tolerance"},
                    {}, {}, {}, {}, {}, {}};
    t.scientific = true;
    for (const auto &r : rows) {
        t.row_labels.push_back((r.residual <= r.tol ? "[ok]   " : "[FAIL] ") + r.what);
        t.cells.insert(t.cells.end(), {r.residual, r.tol});
    }
    return t;
}

inline std::vector<CheckRow> validation_rows(const Scenario &s, const RunOptions &o) {
    std::vector<CheckRow> rows;
    if (s.state) {
        const auto r = inspect_probability_operator(s.state->op());
        rows.push_back({"state: hermitian", r.hermitian, o.tol});
        rows.push_back({"state: unit trace", r.trace, o.tol});
        rows.push_back({"state: positive semidefinite", std::max(0.0, -r.min_eigenvalue), o.tol});
    }
    if (s.pure_state) {
        rows.push_back({"state vector: unit norm",
                        std::abs(s.pure_state->components().squaredNorm() - 1.0), o.tol});
    }
    for (const auto &ob : s.observables) {
        const auto r = validate(ob.local, o.tol);
        rows.push_back({"observable " + ob.id + ": orthogonality", r.orthogonality_residual, o.tol});
        rows.push_back({"observable " + ob.id + ": completeness", r.completeness_residual, o.tol});
    }
    for (const auto &ob : s.observers) {
        if (const auto *p = ob.model.perception()) {
            double spread = 0.0;
            for (const auto &c : p->channels()) {
                spread = std::max(spread, std::abs(static_cast<double>(c.rank()) -
                                                   static_cast<double>(p->channel(0).rank())));
            }
            rows.push_back({"observer " + ob.model.id() + ": equal channel ranks", spread, 0.0});
        }
    }
    if (s.classical) {
        double sum = 0.0;
        for (double w : s.classical->model->measure()) sum += w;
        rows.push_back({"classical: sum of measure", std::abs(sum - 1.0), 1e-12});
    }
    return rows;
}

inline Report cmd_validate(const Scenario &s, const RunOptions &o) {
    Report r{"validate: " + s.name, {checks_table(validation_rows(s, o))}, {}};
    bool ok = true;
    for (const auto &row : validation_rows(s, o)) ok = ok && row.residual <= row.tol;
    r.notes.push_back(ok ? "all checks passed" : "some checks FAILED");
    return r;
}

inline Report cmd_gross(const Scenario &s, const RunOptions &o) {
    Report r{"gross: " + s.name, {}, {}};
    if (s.classical) {
        RenderedTable t{"classical probabilities P{e}", "eventuality", {}, {"probability"},
                        {}, {}, {}, {}, {}, {}};
        for (const auto &[id, ev] : s.classical->events) {
            t.row_labels.push_back(id);
            t.cells.push_back(classical_prob(ev));
        }
        t.row_labels.push_back("I");
        t.cells.push_back(classical_prob(ClassicalEventuality::certain(s.classical->model)));
        t.row_labels.push_back("null");
        t.cells.push_back(classical_prob(ClassicalEventuality::null(s.classical->model)));
        r.tables.push_back(std::move(t));
    }
    if (s.state) {
        std::vector<std::size_t> which;
        if (o.observable) {
            which.push_back(s.observable_index(*o.observable));
        } else {
            for (std::size_t i = 0; i < s.observables.size(); ++i) which.push_back(i);
        }
        RenderedTable ex{"expectation values <E> = tr{P E}", "observable", {}, {"<E>"},
                         {}, {}, {}, {}, {}, {}};
        for (auto i : which) {
            const auto &ob = s.observables[i];
            const auto p = born(*s.state, ob.lifted);
            RenderedTable t{"gross probabilities tr{P e_i} for observable '" + ob.id + "'",
                            "channel", ob.local.labels(), {"probability"}, p, {}, {}, {}, {}, {}};
            double sum = 0.0;
            for (double x : p) sum += x;
            t.notes.push_back("sum = " + num(sum, o.precision));
            r.tables.push_back(std::move(t));
            if (ob.values) {
                ex.row_labels.push_back(ob.id);
                ex.cells.push_back(
                    expectation(QuantitativeObservable(ob.lifted, *ob.values), *s.state, o.tol));
            }
        }
        if (!ex.row_labels.empty()) r.tables.push_back(std::move(ex));
    }
    if (r.tables.empty()) throw UsageError("gross requires a quantum state or a classical model");
    return r;
}

inline std::string correlation_note(const CorrelationReport &c, double tol, int precision) {
    char tolbuf[32];
    std::snprintf(tolbuf, sizeof tolbuf, "%g", tol);
    return std::string("correlation check (tol ") + tolbuf + "): " +
           (c.adequately_correlated ? "adequately correlated" : "FAILED, not adequately correlated") +
           "; channel counts " + (c.counts_match ? "match" : "differ") +
           ", off-diagonal mass " + num(c.off_diagonal_mass, precision) +
           ", conditional deviation " + num(c.conditional_deviation, precision);
}

inline RenderedTable joint_table(const Scenario &s, std::size_t ri, std::size_t ci,
                                 const JointProbabilityMatrix &j) {
    const auto &rows = s.observables[ri];
    const auto &cols = s.observables[ci];
    RenderedTable t{"joint probabilities P_ij = tr{P e_i f_j}", rows.id + " \\ " + cols.id,
                    rows.local.labels(), cols.local.labels(), {}, rows.id + " marginal", {},
                    cols.id + " marginal", {}, {}};
    for (Eigen::Index r = 0; r < j.entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < j.entries.cols(); ++c) t.cells.push_back(j.entries(r, c));
    }
    for (double m : j.row_marginals()) t.row_margins.push_back({m, std::nullopt});
    for (double m : j.col_marginals()) t.col_margins.push_back({m, std::nullopt});
    return t;
}

inline Report cmd_joint(const Scenario &s, const RunOptions &o) {
    require_state(s, "joint");
    const auto [ri, ci] = pick_pair(s, o, "joint");
    const double ctol = o.correlation_tol.value_or(s.correlation_tolerance);
    const auto c = correlation_check(*s.state, s.observables[ri].lifted,
                                     s.observables[ci].lifted, ctol, o.tol);
    auto t = joint_table(s, ri, ci, c.joint);
    t.notes.push_back("total = " + num(c.joint.total(), o.precision));
    t.notes.push_back(correlation_note(c, ctol, o.precision));
    return {"joint: " + s.name, {std::move(t)}, {}};
}

inline Report cmd_conditional(const Scenario &s, const RunOptions &o) {
    require_state(s, "conditional");
    const auto [ri, ci] = pick_pair(s, o, "conditional");
    const auto &rows = s.observables[ri];
    const auto &cols = s.observables[ci];
    RenderedTable t{"conditional probabilities P_[i]{f_j} = tr{P_[i] f_j}",
                    "given " + rows.id + " \\ " + cols.id, {}, cols.local.labels(), {},
                    "P{given}", {}, {}, {}, {}};
    std::vector<std::size_t> which;
    if (o.channel) {
        which.push_back(pick_channel(rows.local, *o.channel));
    } else {
        for (std::size_t i = 0; i < rows.local.size(); ++i) which.push_back(i);
    }
    for (auto i : which) {
        const double p = born(*s.state, rows.lifted.channel(i));
        if (!o.channel && !(p > kZeroProbability)) {
            t.notes.push_back("given '" + rows.local.labels()[i] +
                              "': zero-probability condition, row omitted");
            continue;
        }
        const auto cond = conditional(*s.state, rows.lifted.channel(i), cols.lifted,
                                      kZeroProbability, o.tol);
        t.row_labels.push_back(rows.local.labels()[i]);
        t.cells.insert(t.cells.end(), cond.begin(), cond.end());
        t.row_margins.push_back({p, std::nullopt});
    }
    return {"conditional: " + s.name, {std::move(t)}, {}};
}

inline Report cmd_collapse(const Scenario &s, const RunOptions &o) {
    require_state(s, "collapse");
    const auto &ob = s.observables[pick_observable(s, o, "collapse")];
    Report r{"collapse: " + s.name, {}, {}};
    std::vector<std::size_t> which;
    if (o.channel) {
        which.push_back(pick_channel(ob.local, *o.channel));
    } else {
        for (std::size_t i = 0; i < ob.local.size(); ++i) which.push_back(i);
    }
    for (auto i : which) {
        const auto &label = ob.local.labels()[i];
        if (!o.channel && !(born(*s.state, ob.lifted.channel(i)) > kZeroProbability)) {
            r.notes.push_back("channel '" + label + "': zero-probability condition, skipped");
            continue;
        }
        const auto c = collapse(*s.state, ob.lifted.channel(i), kZeroProbability, o.tol);
        for (auto &t : matrix_tables(s, c.conditioned.matrix(),
                                     "collapse on " + ob.id + " = '" + label + "', p = " +
                                         num(c.probability, o.precision) + ": P_[i]")) {
            r.tables.push_back(std::move(t));
        }
    }
    return r;
}

inline Report cmd_luder(const Scenario &s, const RunOptions &o) {
    require_state(s, "luder");
    const auto &ob = s.observables[pick_observable(s, o, "luder")];
    const auto l = luder(*s.state, ob.lifted, o.tol);
    Report r{"luder: " + s.name, matrix_tables(s, l.matrix(), "provisional operator sum_i e_i P e_i for '" + ob.id + "'"), {}};
    RenderedTable t{"channel probabilities", "channel", ob.local.labels(),
                    {"a priori", "provisional"}, {}, {}, {}, {}, {}, {}};
    for (std::size_t i = 0; i < ob.local.size(); ++i) {
        t.cells.push_back(born(*s.state, ob.lifted.channel(i)));
        t.cells.push_back(born(l, ob.lifted.channel(i)));
    }
    const auto twice = luder(l, ob.lifted, o.tol);
    t.notes.push_back("idempotence residual = " +
                      num(max_abs(twice.matrix() - l.matrix()), o.precision));
    r.tables.push_back(std::move(t));
    return r;
}

inline Report cmd_branches(const Scenario &s, const RunOptions &o) {
    require_state(s, "branches");
    const auto &ob = s.observables[pick_observable(s, o, "branches")];
    const auto d = s.pure_state ? branch_decompose(*s.pure_state, ob.lifted, kZeroProbability, o.tol)
                                : branch_decompose(*s.state, ob.lifted, kZeroProbability, o.tol);
    RenderedTable t{"branch decomposition over '" + ob.id + "'", "channel", ob.local.labels(),
                    {"probability", "zero", "posterior trace", "support residual"},
                    {}, {}, {}, {}, {}, {}};
    for (std::size_t i = 0; i < d.branches.size(); ++i) {
        const auto &b = d.branches[i];
        double trace = 0.0;
        double support = 0.0;
        if (b.posterior) {
            const Matrix &e = ob.lifted.channel(i).projector().matrix();
            trace = b.posterior->op().trace().real();
            support = max_abs(e * b.posterior->matrix() * e - b.posterior->matrix());
        }
        t.cells.insert(t.cells.end(), {b.probability, b.zero ? 1.0 : 0.0, trace, support});
    }
    t.notes.push_back("sum of branch probabilities = " + num(d.total_probability(), o.precision));
    if (s.pure_state) {
        ColVector sum = ColVector::Zero(static_cast<Eigen::Index>(s.pure_state->size()));
        for (const auto &b : d.branches) sum += b.vector->components();
        const double res = (sum - s.pure_state->components()).cwiseAbs().maxCoeff();
        t.notes.push_back("branch vectors sum to the state (residual " + num(res, o.precision) + ")");
    }
    return {"branches: " + s.name, {std::move(t)}, {}};
}

inline AnthropicScheme effective_scheme(const Scenario &s, const RunOptions &o) {
    auto scheme = s.scheme;
    if (o.log_base) scheme.log_base = *o.log_base;
    return scheme;
}

inline Report cmd_net(const Scenario &s, const RunOptions &o) {
    require_state(s, "net");
    if (s.observers.empty()) throw UsageError("net requires at least one observer");
    const auto scheme = effective_scheme(s, o);
    const auto models = s.observer_models();
    std::vector<std::vector<double>> gross;
    for (const auto &ob : s.observers) {
        if (!ob.observable) {
            throw UsageError("net: observer '" + ob.model.id() +
                             "' has no perception observable to take gross probabilities from");
        }
        gross.push_back(born(*s.state, s.observables[*ob.observable].lifted));
    }
    const auto table = net_table(scheme, models, gross, o.tol);

    Report r{"net: " + s.name + " (" + to_string(scheme.variant) + " weighting, log base " +
                 (scheme.log_base == LogBase::two ? "2" : "e") + ")",
             {}, {}};

    // Layout table: joint gross matrix with gross -> net margins.
    auto observer_of = [&](std::size_t obs_index) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < s.observers.size(); ++k) {
            if (s.observers[k].observable == obs_index) return k;
        }
        return std::nullopt;
    };
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    if (s.composite && s.composite->factor_count() >= 2) {
        try {
            pair = pick_pair(s, o, "net");
        } catch (const UsageError &) {
            if (o.rows || o.cols) throw;
        }
    }
    if (pair && observer_of(pair->first) && observer_of(pair->second)) {
        const auto kr = *observer_of(pair->first);
        const auto kc = *observer_of(pair->second);
        const auto j = joint_matrix(*s.state, s.observables[pair->first].lifted,
                                    s.observables[pair->second].lifted, o.tol);
        auto t = joint_table(s, pair->first, pair->second, j);
        t.caption = "gross joint probabilities with gross → net margins";
        t.row_margin_title = s.observables[pair->first].id;
        t.col_margin_title = s.observables[pair->second].id;
        for (std::size_t i = 0; i < t.row_margins.size(); ++i) {
            t.row_margins[i] = {table.gross[kr][i], table.net[kr][i]};
        }
        for (std::size_t i = 0; i < t.col_margins.size(); ++i) {
            t.col_margins[i] = {table.gross[kc][i], table.net[kc][i]};
        }
        r.tables.push_back(std::move(t));
    }

    RenderedTable w{"observer weights", "observer", {}, {"N_e", "S_e", "lifetime", "weight"},
                    {}, {}, {}, {}, {}, {}};
    for (std::size_t k = 0; k < models.size(); ++k) {
        w.row_labels.push_back(models[k].id());
        w.cells.insert(w.cells.end(), {models[k].channel_count(), models[k].entropy(scheme.log_base),
                                       models[k].lifetime(), table.weights[k]});
    }
    r.tables.push_back(std::move(w));

    RenderedTable n{"net perception probabilities", "perception", {}, {"gross", "weight", "net"},
                    {}, {}, {}, {}, {}, {}};
    for (std::size_t k = 0; k < models.size(); ++k) {
        const auto &labels = s.observables[*s.observers[k].observable].local.labels();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            n.row_labels.push_back(models[k].id() + ": " + labels[i]);
            n.cells.insert(n.cells.end(), {table.gross[k][i], table.weights[k], table.net[k][i]});
        }
    }
    n.notes.push_back("total net probability = " + num(table.total, o.precision));
    r.tables.push_back(std::move(n));
    return r;
}

inline Report cmd_lifetime(const Scenario &s, const RunOptions &o) {
    if (!s.lifetime_profile) throw UsageError("lifetime requires a lifetime_profile in the scenario");
    const auto d = lifetime_distribution(*s.lifetime_profile);
    RenderedTable t{"perception probability over the lifetime (mass ∝ duration · S_e / Δτ)",
                    "segment", {},
                    {"duration", "S_e", "perception duration", "mass", "cumulative", "density"},
                    {}, {}, {}, {}, {}, {}};
    const auto &segs = s.lifetime_profile->segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        t.row_labels.push_back("segment " + std::to_string(i + 1));
        t.cells.insert(t.cells.end(), {segs[i].duration, segs[i].entropy,
                                       segs[i].perception_duration, d.masses[i], d.cumulative[i],
                                       d.densities[i]});
    }
    t.notes.push_back("highest density in segment " + std::to_string(d.argmax + 1));
    (void)o;
    return {"lifetime: " + s.name, {std::move(t)}, {}};
}

inline Report cmd_check(const Scenario &s, const RunOptions &o) {
    auto rows = validation_rows(s, o);
    Report r{"check: " + s.name, {}, {}};
    if (s.state) {
        for (const auto &ob : s.observables) {
            double sum = 0.0;
            for (double p : born(*s.state, ob.lifted)) sum += p;
            rows.push_back({"observable " + ob.id + ": gross normalization", std::abs(sum - 1.0),
                            o.tol});
            const auto l = luder(*s.state, ob.lifted, o.tol);
            rows.push_back({"observable " + ob.id + ": luder idempotence",
                            max_abs(luder(l, ob.lifted, o.tol).matrix() - l.matrix()), o.tol});
            double keep = 0.0;
            for (const auto &c : ob.lifted.channels()) {
                keep = std::max(keep, std::abs(born(l, c) - born(*s.state, c)));
            }
            rows.push_back({"observable " + ob.id + ": luder preserves channel probabilities",
                            keep, o.tol});
        }
    }
    r.tables.push_back(checks_table(rows));
    bool ok = true;
    for (const auto &row : rows) ok = ok && row.residual <= row.tol;

    if (s.state && s.composite && s.composite->factor_count() >= 2 && s.observables.size() >= 2) {
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        try {
            pair = pick_pair(s, o, "check");
        } catch (const UsageError &) {
            if (o.rows || o.cols) throw;
        }
        if (pair) {
            const double ctol = o.correlation_tol.value_or(s.correlation_tolerance);
            const auto c = correlation_check(*s.state, s.observables[pair->first].lifted,
                                             s.observables[pair->second].lifted, ctol, o.tol);
            RenderedTable t{"sensor correlation: " + s.observables[pair->first].id + " observing " +
                                s.observables[pair->second].id,
                            "diagnostic", {"channel counts match", "off-diagonal mass",
                                           "conditional deviation", "adequately correlated"},
                            {"value"},
                            {c.counts_match ? 1.0 : 0.0, c.off_diagonal_mass,
                             c.conditional_deviation, c.adequately_correlated ? 1.0 : 0.0},
                            {}, {}, {}, {}, {}};
            t.notes.push_back(correlation_note(c, ctol, o.precision));
            r.tables.push_back(std::move(t));
        }
    }
    r.notes.push_back(ok ? "all invariant checks passed" : "some invariant checks FAILED");
    return r;
}

} // namespace detail

/// Run one command; throws UsageError for unknown commands or incompatible
/// scenarios.
inline Report run(std::string_view command, const Scenario &scenario, const RunOptions &opts = {}) {
    if (command == "validate") return detail::cmd_validate(scenario, opts);
    if (command == "gross") return detail::cmd_gross(scenario, opts);
    if (command == "joint") return detail::cmd_joint(scenario, opts);
    if (command == "conditional") return detail::cmd_conditional(scenario, opts);
    if (command == "collapse") return detail::cmd_collapse(scenario, opts);
    if (command == "luder") return detail::cmd_luder(scenario, opts);
    if (command == "branches") return detail::cmd_branches(scenario, opts);
    if (command == "net") return detail::cmd_net(scenario, opts);
    if (command == "lifetime") return detail::cmd_lifetime(scenario, opts);
    if (command == "check") return detail::cmd_check(scenario, opts);
    throw UsageError("unknown command '" + std::string(command) + "'");
}

} // namespace qprob
