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
 * @file scenario.hpp
 * Scenario files: JSON documents describing spaces, a state, observables,
 * observers and a weighting scheme. See scenarios/scenario.schema.json.
 *
 * Structural problems (syntax, missing or mistyped fields, unresolved
 * references, wrong lengths) raise ParseError carrying a JSON-pointer
 * location. Numeric invariant violations raise ValidationError.
 */

#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anthropic.hpp"
#include "classical.hpp"
#include "preset_files.hpp"
#include "probability.hpp"

namespace qprob {

struct ScenarioObservable {
    std::string id;
    std::size_t factor;                  ///< index into the composite factor order
    Observable local;                    ///< on the factor space
    Observable lifted;                   ///< on the composite space
    std::optional<std::vector<double>> values;
};

struct ScenarioObserver {
    ObserverModel model;
    std::optional<std::size_t> observable; ///< index into Scenario::observables
};

struct ClassicalScenario {
    std::shared_ptr<const ClassicalModel> model;
    std::vector<std::pair<std::string, ClassicalEventuality>> events;
};

struct Scenario {
    std::string name;
    std::string description;
    std::optional<CompositeSpace> composite;
    std::optional<ProbabilityOperator> state;
    std::optional<Vec> pure_state; ///< kept when the state was given as a vector
    std::vector<ScenarioObservable> observables;
    std::vector<ScenarioObserver> observers;
    AnthropicScheme scheme;
    std::optional<std::pair<std::size_t, std::size_t>> joint; ///< (rows, cols) observables
    double correlation_tolerance = 0.01;
    std::optional<ClassicalScenario> classical;
    std::optional<LifetimeProfile> lifetime_profile;

    bool is_quantum() const noexcept { return state.has_value(); }

    std::size_t observable_index(const std::string &id) const {
        for (std::size_t i = 0; i < observables.size(); ++i) {
            if (observables[i].id == id) return i;
        }
        throw UsageError("scenario has no observable '" + id + "'");
    }

    std::vector<ObserverModel> observer_models() const {
        std::vector<ObserverModel> out;
        for (const auto &o : observers) out.push_back(o.model);
        return out;
    }
};

namespace detail {

using nlohmann::json;

class ScenarioParser {
  public:
    explicit ScenarioParser(double tol) : tol_(tol) {}

    Scenario parse(const json &root) {
        require_object(root, "");
        check_keys(root, "",
                   {"name", "description", "spaces", "composite", "state", "observables",
                    "observers", "weighting", "joint", "correlation_tolerance", "classical",
                    "lifetime_profile"});
        Scenario s;
        s.name = optional_string(root, "name", "").value_or("");
        s.description = optional_string(root, "description", "").value_or("");

        if (root.contains("spaces")) {
            parse_spaces(root.at("spaces"), "/spaces",
                         root.contains("composite") ? &root.at("composite") : nullptr, s);
        } else if (root.contains("composite")) {
            fail("/composite", "a factor order requires 'spaces'");
        }
        if (root.contains("state")) {
            if (!s.composite) fail("/state", "a state requires 'spaces'");
            parse_state(root.at("state"), "/state", s);
        }
        if (root.contains("observables")) {
            if (!s.composite) fail("/observables", "observables require 'spaces'");
            parse_observables(root.at("observables"), "/observables", s);
        }
        if (root.contains("weighting")) parse_weighting(root.at("weighting"), "/weighting", s);
        if (root.contains("observers")) parse_observers(root.at("observers"), "/observers", s);
        if (root.contains("joint")) parse_joint(root.at("joint"), "/joint", s);
        if (root.contains("correlation_tolerance")) {
            s.correlation_tolerance =
                number(root.at("correlation_tolerance"), "/correlation_tolerance");
            if (!(s.correlation_tolerance > 0.0)) {
                fail("/correlation_tolerance", "must be positive");
            }
        }
        if (root.contains("classical")) parse_classical(root.at("classical"), "/classical", s);
        if (root.contains("lifetime_profile")) {
            parse_profile(root.at("lifetime_profile"), "/lifetime_profile", s);
        }
        if (!s.state && !s.classical && !s.lifetime_profile && s.observers.empty()) {
            fail("", "scenario defines neither a quantum state, a classical model, observers "
                     "nor a lifetime profile");
        }
        if (s.composite && !s.state && !s.observables.empty() && s.observers.empty()) {
            fail("/state", "observables are given but no state");
        }
        return s;
    }

  private:
    [[noreturn]] static void fail(const std::string &where, const std::string &what) {
        throw ParseError("scenario " + (where.empty() ? std::string("/") : where) + ": " + what);
    }

    static void require_object(const json &j, const std::string &where) {
        if (!j.is_object()) fail(where, "expected an object");
    }
    static void require_array(const json &j, const std::string &where) {
        if (!j.is_array()) fail(where, "expected an array");
    }

    static void check_keys(const json &j, const std::string &where,
                           std::initializer_list<std::string_view> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool ok = false;
            for (auto a : allowed) ok = ok || a == it.key();
            if (!ok) fail(where + "/" + it.key(), "unknown field");
        }
    }

    static const json &field(const json &j, const std::string &key, const std::string &where) {
        if (!j.contains(key)) fail(where, "missing required field '" + key + "'");
        return j.at(key);
    }

    static std::string string(const json &j, const std::string &where) {
        if (!j.is_string()) fail(where, "expected a string");
        return j.get<std::string>();
    }

    static std::optional<std::string> optional_string(const json &j, const std::string &key,
                                                      const std::string &where) {
        if (!j.contains(key)) return std::nullopt;
        return string(j.at(key), where + "/" + key);
    }

    static double number(const json &j, const std::string &where) {
        if (!j.is_number()) fail(where, "expected a number");
        return j.get<double>();
    }

    static std::size_t index(const json &j, const std::string &where) {
        if (!j.is_number_integer() || j.get<long long>() < 0) {
            fail(where, "expected a non-negative integer");
        }
        return j.get<std::size_t>();
    }

    static Complex complex(const json &j, const std::string &where) {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
            fail(where, "complex numbers are written as [re, im]");
        }
        return {j[0].get<double>(), j[1].get<double>()};
    }

    static ColVector complex_vector(const json &j, const std::string &where, std::size_t dim) {
        require_array(j, where);
        if (j.size() != dim) {
            fail(where, "expected " + std::to_string(dim) + " components, got " +
                            std::to_string(j.size()));
        }
        ColVector v(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            v(static_cast<Eigen::Index>(i)) = complex(j[i], where + "/" + std::to_string(i));
        }
        return v;
    }

    const HilbertSpace &space_ref(const Scenario &s, const json &j, const std::string &where,
                                  std::size_t *factor) const {
        const auto id = string(j, where);
        for (std::size_t k = 0; k < s.composite->factor_count(); ++k) {
            if (s.composite->factor(k).label() == id) {
                *factor = k;
                return s.composite->factor(k);
            }
        }
        fail(where, "unresolved reference to space '" + id + "'");
    }

    void parse_spaces(const json &j, const std::string &where, const json *order,
                      Scenario &s) {
        require_array(j, where);
        if (j.empty()) fail(where, "at least one space is required");
        std::vector<HilbertSpace> spaces;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto at = where + "/" + std::to_string(i);
            require_object(j[i], at);
            check_keys(j[i], at, {"id", "dim"});
            const auto id = string(field(j[i], "id", at), at + "/id");
            const auto dim = index(field(j[i], "dim", at), at + "/dim");
            if (dim < 1) fail(at + "/dim", "dimension must be >= 1");
            if (!seen.insert(id).second) fail(at + "/id", "duplicate space id '" + id + "'");
            spaces.emplace_back(dim, id);
        }
        if (order) {
            require_array(*order, "/composite");
            if (order->size() != spaces.size()) {
                fail("/composite", "factor order must list every space exactly once");
            }
            std::vector<HilbertSpace> ordered;
            std::set<std::string> used;
            for (std::size_t i = 0; i < order->size(); ++i) {
                const auto at = "/composite/" + std::to_string(i);
                const auto id = string((*order)[i], at);
                auto it = std::find_if(spaces.begin(), spaces.end(),
                                       [&](const HilbertSpace &h) { return h.label() == id; });
                if (it == spaces.end()) fail(at, "unresolved reference to space '" + id + "'");
                if (!used.insert(id).second) fail(at, "space '" + id + "' listed twice");
                ordered.push_back(*it);
            }
            spaces = std::move(ordered);
        }
        s.composite.emplace(std::move(spaces));
    }

    void parse_state(const json &j, const std::string &where, Scenario &s) {
        require_object(j, where);
        const auto kind = string(field(j, "kind", where), where + "/kind");
        const auto &space = s.composite->space();
        const std::size_t dim = space.dim();
        if (kind == "diagonal") {
            check_keys(j, where, {"kind", "weights"});
            const auto &w = field(j, "weights", where);
            require_array(w, where + "/weights");
            if (w.size() != dim) {
                fail(where + "/weights", "state dimension mismatch: expected " +
                                             std::to_string(dim) + " weights, got " +
                                             std::to_string(w.size()));
            }
            std::vector<double> weights;
            for (std::size_t i = 0; i < dim; ++i) {
                weights.push_back(number(w[i], where + "/weights/" + std::to_string(i)));
            }
            s.state = ProbabilityOperator::diagonal(space, weights, tol_);
        } else if (kind == "pure") {
            check_keys(j, where, {"kind", "amplitudes"});
            Vec psi(space, complex_vector(field(j, "amplitudes", where), where + "/amplitudes", dim));
            s.state = ProbabilityOperator::pure(psi, tol_);
            s.pure_state = std::move(psi);
        } else if (kind == "density") {
            check_keys(j, where, {"kind", "matrix"});
            const auto &m = field(j, "matrix", where);
            require_array(m, where + "/matrix");
            if (m.size() != dim) {
                fail(where + "/matrix", "state dimension mismatch: expected " +
                                            std::to_string(dim) + " rows");
            }
            Matrix mat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t r = 0; r < dim; ++r) {
                mat.row(static_cast<Eigen::Index>(r)) =
                    complex_vector(m[r], where + "/matrix/" + std::to_string(r), dim).transpose();
            }
            s.state = ProbabilityOperator(Op(space, std::move(mat)), tol_);
        } else {
            fail(where + "/kind", "unknown state kind '" + kind +
                                      "' (expected diagonal, pure or density)");
        }
    }

    Eventuality parse_channel(const json &j, const std::string &where, const HilbertSpace &space,
                              std::string &label) {
        require_object(j, where);
        check_keys(j, where, {"label", "basis", "vectors"});
        label = string(field(j, "label", where), where + "/label");
        if (j.contains("basis") == j.contains("vectors")) {
            fail(where, "a channel needs exactly one of 'basis' or 'vectors'");
        }
        if (j.contains("basis")) {
            const auto &b = j.at("basis");
            require_array(b, where + "/basis");
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < b.size(); ++i) {
                const auto at = where + "/basis/" + std::to_string(i);
                idx.push_back(index(b[i], at));
                if (idx.back() >= space.dim()) fail(at, "basis index out of range");
            }
            return Eventuality::of_basis_states(space, idx);
        }
        const auto &v = j.at("vectors");
        require_array(v, where + "/vectors");
        Matrix cols(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            cols.col(static_cast<Eigen::Index>(i)) =
                complex_vector(v[i], where + "/vectors/" + std::to_string(i), space.dim());
        }
        return Eventuality::span(space, cols, tol_);
    }

    void parse_observables(const json &j, const std::string &where, Scenario &s) {
        require_array(j, where);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto at = where + "/" + std::to_string(i);
            require_object(j[i], at);
            check_keys(j[i], at, {"id", "space", "channels", "values"});
            const auto id = string(field(j[i], "id", at), at + "/id");
            if (!seen.insert(id).second) fail(at + "/id", "duplicate observable id '" + id + "'");
            std::size_t factor = 0;
            const auto &space = space_ref(s, field(j[i], "space", at), at + "/space", &factor);
            const auto &ch = field(j[i], "channels", at);
            require_array(ch, at + "/channels");
            std::vector<Eventuality> channels;
            std::vector<std::string> labels;
            for (std::size_t c = 0; c < ch.size(); ++c) {
                std::string label;
                channels.push_back(
                    parse_channel(ch[c], at + "/channels/" + std::to_string(c), space, label));
                labels.push_back(std::move(label));
            }
            Observable local(space, std::move(channels), std::move(labels));
            require_valid(local, tol_, "observable '" + id + "'");
            std::optional<std::vector<double>> values;
            if (j[i].contains("values")) {
                const auto &v = j[i].at("values");
                require_array(v, at + "/values");
                if (v.size() != local.size()) fail(at + "/values", "one value per channel required");
                values.emplace();
                for (std::size_t k = 0; k < v.size(); ++k) {
                    values->push_back(number(v[k], at + "/values/" + std::to_string(k)));
                }
                QuantitativeObservable check(local, *values); // distinctness
            }
            Observable lifted = lift(local, *s.composite, factor);
            s.observables.push_back({id, factor, std::move(local), std::move(lifted), values});
        }
    }

    void parse_weighting(const json &j, const std::string &where, Scenario &s) {
        require_object(j, where);
        check_keys(j, where, {"scheme", "log_base"});
        const auto scheme = string(field(j, "scheme", where), where + "/scheme");
        if (scheme == "weak") s.scheme.variant = SchemeVariant::weak;
        else if (scheme == "proper") s.scheme.variant = SchemeVariant::proper;
        else if (scheme == "entropic") s.scheme.variant = SchemeVariant::entropic;
        else fail(where + "/scheme", "unknown scheme '" + scheme + "'");
        if (j.contains("log_base")) {
            const auto base = string(j.at("log_base"), where + "/log_base");
            if (base == "2") s.scheme.log_base = LogBase::two;
            else if (base == "e") s.scheme.log_base = LogBase::natural;
            else fail(where + "/log_base", "log_base must be \"2\" or \"e\"");
        }
    }

    void parse_observers(const json &j, const std::string &where, Scenario &s) {
        require_array(j, where);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto at = where + "/" + std::to_string(i);
            require_object(j[i], at);
            check_keys(j[i], at,
                       {"id", "observable", "branch_channels", "lifetime", "perception_duration"});
            const auto id = string(field(j[i], "id", at), at + "/id");
            if (!seen.insert(id).second) fail(at + "/id", "duplicate observer id '" + id + "'");
            const double lifetime =
                j[i].contains("lifetime") ? number(j[i].at("lifetime"), at + "/lifetime") : 1.0;
            const double duration =
                j[i].contains("perception_duration")
                    ? number(j[i].at("perception_duration"), at + "/perception_duration")
                    : 1.0;
            if (j[i].contains("observable") == j[i].contains("branch_channels")) {
                fail(at, "an observer needs exactly one of 'observable' or 'branch_channels'");
            }
            if (j[i].contains("observable")) {
                const auto ref = string(j[i].at("observable"), at + "/observable");
                std::optional<std::size_t> idx;
                for (std::size_t k = 0; k < s.observables.size(); ++k) {
                    if (s.observables[k].id == ref) idx = k;
                }
                if (!idx) fail(at + "/observable", "unresolved reference to observable '" + ref + "'");
                s.observers.push_back(
                    {ObserverModel::with_observable(id, s.observables[*idx].local, lifetime,
                                                    duration, tol_),
                     idx});
            } else {
                const double n = number(j[i].at("branch_channels"), at + "/branch_channels");
                s.observers.push_back(
                    {ObserverModel::with_channel_count(id, n, lifetime, duration), std::nullopt});
            }
        }
    }

    void parse_joint(const json &j, const std::string &where, Scenario &s) {
        require_object(j, where);
        check_keys(j, where, {"rows", "cols"});
        auto resolve = [&](const std::string &key) {
            const auto ref = string(field(j, key, where), where + "/" + key);
            for (std::size_t k = 0; k < s.observables.size(); ++k) {
                if (s.observables[k].id == ref) return k;
            }
            fail(where + "/" + key, "unresolved reference to observable '" + ref + "'");
        };
        s.joint = std::pair{resolve("rows"), resolve("cols")};
    }

    void parse_classical(const json &j, const std::string &where, Scenario &s) {
        require_object(j, where);
        check_keys(j, where, {"points", "measure", "events"});
        const auto &pts = field(j, "points", where);
        const auto &mea = field(j, "measure", where);
        require_array(pts, where + "/points");
        require_array(mea, where + "/measure");
        if (pts.size() != mea.size()) fail(where + "/measure", "one weight per sample point");
        std::vector<std::string> points;
        std::vector<double> measure;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            points.push_back(string(pts[i], where + "/points/" + std::to_string(i)));
            measure.push_back(number(mea[i], where + "/measure/" + std::to_string(i)));
        }
        if (std::set<std::string>(points.begin(), points.end()).size() != points.size()) {
            fail(where + "/points", "duplicate sample point");
        }
        ClassicalScenario cs;
        cs.model = std::make_shared<const ClassicalModel>(std::move(points), std::move(measure));
        if (j.contains("events")) {
            const auto &ev = j.at("events");
            require_array(ev, where + "/events");
            for (std::size_t i = 0; i < ev.size(); ++i) {
                const auto at = where + "/events/" + std::to_string(i);
                require_object(ev[i], at);
                check_keys(ev[i], at, {"id", "members"});
                const auto id = string(field(ev[i], "id", at), at + "/id");
                const auto &mem = field(ev[i], "members", at);
                require_array(mem, at + "/members");
                std::vector<std::string> members;
                for (std::size_t m = 0; m < mem.size(); ++m) {
                    const auto p = string(mem[m], at + "/members/" + std::to_string(m));
                    const auto &all = cs.model->points();
                    if (std::find(all.begin(), all.end(), p) == all.end()) {
                        fail(at + "/members/" + std::to_string(m),
                             "unresolved reference to sample point '" + p + "'");
                    }
                    members.push_back(p);
                }
                cs.events.emplace_back(id, ClassicalEventuality::of(cs.model, members));
            }
        }
        s.classical = std::move(cs);
    }

    void parse_profile(const json &j, const std::string &where, Scenario &s) {
        require_array(j, where);
        std::vector<LifetimeSegment> segments;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto at = where + "/" + std::to_string(i);
            require_object(j[i], at);
            check_keys(j[i], at, {"duration", "entropy", "perception_duration"});
            segments.push_back({number(field(j[i], "duration", at), at + "/duration"),
                                number(field(j[i], "entropy", at), at + "/entropy"),
                                number(field(j[i], "perception_duration", at),
                                       at + "/perception_duration")});
        }
        s.lifetime_profile.emplace(std::move(segments));
    }

    double tol_;
};

} // namespace detail

/// Parse scenario JSON text; `source` names the input in error messages.
inline Scenario parse_scenario(std::string_view text, const std::string &source = "<scenario>",
                               double tol = kDefaultTol) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(source + ": syntax error at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
    try {
        return detail::ScenarioParser(tol).parse(root);
    } catch (const ParseError &e) {
        throw ParseError(source + ": " + e.what());
    } catch (const StructuralError &e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline Scenario load_scenario_file(const std::string &path, double tol = kDefaultTol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path, tol);
}

/// One of the built-in presets (coin, stern-gerlach, cat-box, cat-master).
inline Scenario load_preset(const std::string &name, double tol = kDefaultTol) {
    const auto text = preset_source(name);
    if (!text) {
        std::string known;
        for (auto n : preset_names()) known += (known.empty() ? "" : ", ") + std::string(n);
        throw ParseError("unknown preset '" + name + "' (known: " + known + ")");
    }
    return parse_scenario(*text, "preset " + name, tol);
}

} // namespace qprob
