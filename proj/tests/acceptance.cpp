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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

namespace {

using namespace qprob;
using qprob::testing::make_rng;
using qprob::testing::uniform_int;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct Proc {
    int status;
    std::string out;
};

Proc run_cli(const std::string &args) {
    const std::string cmd = std::string("\"") + QPROB_CLI_PATH + "\" " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

// --- 1 ---------------------------------------------------------------------
Outcome cat_master_table() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = run_cli("net --preset cat-master --format json");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(p.status == 0, "CLI exit status " + std::to_string(p.status));
    if (!o.pass) return o;
    const auto j = nlohmann::json::parse(p.out);
    double worst = 0.0;
    auto check = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };

    const auto &layout = j["tables"][0];
    const double cells[4][2] = {{0.25, 0}, {0, 0.25}, {0.125, 0.125}, {0.125, 0.125}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) check(layout["cells"][r][c].get<double>(), cells[r][c]);
    for (int r = 0; r < 4; ++r) {
        check(layout["row_margins"][r]["gross"].get<double>(), 0.25);
        check(layout["row_margins"][r]["net"].get<double>(), 1.0 / 6.0);
    }
    for (int c = 0; c < 2; ++c) {
        check(layout["col_margins"][c]["gross"].get<double>(), 0.5);
        check(layout["col_margins"][c]["net"].get<double>(), 1.0 / 6.0);
    }
    const auto &weights = j["tables"][1];
    check(weights["cells"][0][3].get<double>(), 1.0 / 3.0);
    check(weights["cells"][1][3].get<double>(), 2.0 / 3.0);
    const auto &longform = j["tables"][2];
    o.require(longform["cells"].size() == 6, "expected six net rows");
    for (const auto &row : longform["cells"]) check(row[2].get<double>(), 1.0 / 6.0);

    o.require(worst <= 1e-12, "max deviation " + sci(worst));
    o.require(seconds < 1.0, "runtime " + std::to_string(seconds) + " s");
    if (o.pass) {
        o.detail = "max deviation " + sci(worst) + ", runtime " + std::to_string(seconds) + " s";
    }
    return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome entropy_values() {
    Outcome o;
    o.require(entropy_capacity(2, 1, LogBase::two) == 1.0, "S(2,1) != 1");
    o.require(entropy_capacity(4, 1, LogBase::two) == 2.0, "S(4,1) != 2");
    const auto cm = load_preset("cat-master");
    const auto models = cm.observer_models();
    o.require(models[0].entropy() == 1.0 && models[1].entropy() == 2.0,
              "preset observers do not carry S = 1, 2");
    if (o.pass) o.detail = "S = 1 and S = 2 exactly";
    return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome stern_gerlach() {
    Outcome o;
    const auto s = load_preset("stern-gerlach");
    const auto &ob = s.observables[0];
    const auto p = born(*s.state, ob.lifted);
    double worst = std::max(std::abs(p[0] - 0.5), std::abs(p[1] - 0.5));
    const double e = expectation(QuantitativeObservable(ob.lifted, *ob.values), *s.state);
    worst = std::max(worst, std::abs(e));
    o.require(*ob.values == std::vector<double>{1, -1}, "values are not (+1, -1)");
    o.require(worst <= 1e-12, "max deviation " + sci(worst));
    if (o.pass) o.detail = "max deviation " + sci(worst);
    return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome luder_suite() {
    Outcome o;
    auto rng = make_rng(104);
    double worst = 0.0;
    const int n = 600;
    for (int trial = 0; trial < n; ++trial) {
        const HilbertSpace s(uniform_int(rng, 2, 8));
        const auto ro = testing::random_observable(rng, s, uniform_int(rng, 2, s.dim()));
        const auto &obs = ro.observable;
        const auto p = testing::random_state(rng, s);
        const auto l = luder(p, obs);
        worst = std::max(worst, max_abs(luder(l, obs).matrix() - l.matrix()));
        for (std::size_t i = 0; i < obs.size(); ++i) {
            worst = std::max(worst, std::abs(born(l, obs.channel(i)) - born(p, obs.channel(i))));
            for (std::size_t k = 0; k < obs.size(); ++k) {
                if (i == k) continue;
                const Matrix off = obs.channel(i).projector().matrix() * l.matrix() *
                                   obs.channel(k).projector().matrix();
                worst = std::max(worst, max_abs(off));
            }
        }
    }
    o.require(worst <= 1e-8, "max residual " + sci(worst));
    if (o.pass) o.detail = std::to_string(n) + " instances, max residual " + sci(worst);
    return o;
}

// --- 5 ---------------------------------------------------------------------
Outcome composite_consistency() {
    Outcome o;
    auto rng = make_rng(105);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 2}, {2, 3}, {3, 3}};
    double worst_born = 0.0, worst_trace = 0.0;
    int count = 0;
    for (const auto &[da, db] : shapes) {
        const HilbertSpace a(da, "A"), b(db, "B");
        const CompositeSpace comp({a, b});
        for (int trial = 0; trial < 200; ++trial, ++count) {
            const auto psi = testing::random_pure(rng, comp.space());
            const Matrix rho = psi.components() * psi.components().adjoint();
            for (std::size_t keep : {0u, 1u}) {
                const auto &f = comp.factor(keep);
                const auto e = testing::random_eventuality(rng, f, uniform_int(rng, 1, f.dim()));
                const auto reduced = reduce_composite(psi, comp, keep);
                worst_born = std::max(
                    worst_born, std::abs(born(reduced, e) - born(psi, lift(e, comp, keep))));
                const Matrix oracle = testing::partial_trace_oracle(rho, {da, db}, keep);
                worst_trace = std::max(
                    worst_trace, max_abs(comp.partial_trace(Op(comp.space(), rho), keep).matrix() -
                                         oracle));
            }
        }
    }
    o.require(worst_born <= 1e-10, "born mismatch " + sci(worst_born));
    o.require(worst_trace <= 1e-10, "partial trace mismatch " + sci(worst_trace));
    if (o.pass) {
        o.detail = std::to_string(count) + " states, born " + sci(worst_born) +
                   ", partial trace " + sci(worst_trace);
    }
    return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome lattice_suite() {
    Outcome o;
    auto rng = make_rng(106);
    double worst = 0.0;
    bool order_ok = true;
    const int n = 600;
    for (int trial = 0; trial < n; ++trial) {
        const HilbertSpace s(uniform_int(rng, 2, 6));
        const auto d = s.dim();
        // pairs sharing a random common subspace, so meets are non-trivial
        const Matrix u = testing::random_unitary(rng, d);
        const auto common = uniform_int(rng, 0, d - 1);
        const auto ra = uniform_int(rng, 0, d - common);
        const auto rb = uniform_int(rng, 0, d - common);
        Matrix fa(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(common + ra));
        Matrix fb(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(common + rb));
        fa << u.leftCols(static_cast<Eigen::Index>(common)), testing::random_matrix(rng, d, ra);
        fb << u.leftCols(static_cast<Eigen::Index>(common)), testing::random_matrix(rng, d, rb);
        const auto a = Eventuality::span(s, fa);
        const auto b = Eventuality::span(s, fb);
        const auto m = meet(a, b);
        const auto j = join(a, b);
        const auto na = orthocomplement(a);

        worst = std::max(worst, testing::projector_distance(meet(a, j), a));
        worst = std::max(worst, testing::projector_distance(join(a, m), a));
        worst = std::max(worst, max_abs(join(a, na).projector().matrix() -
                                        Matrix::Identity(static_cast<Eigen::Index>(d),
                                                         static_cast<Eigen::Index>(d))));
        worst = std::max(worst, max_abs(meet(a, na).projector().matrix()));
        worst = std::max(worst, testing::projector_distance(orthocomplement(na), a));
        worst = std::max(worst, testing::projector_distance(m, testing::meet_de_morgan(a, b)));

        const auto p = testing::random_state(rng, s);
        order_ok = order_ok && leq(m, a, 1e-8) && leq(a, j, 1e-8);
        order_ok = order_ok && born(p, m) <= born(p, a) + 1e-8 && born(p, a) <= born(p, j) + 1e-8;
    }
    o.require(worst <= 1e-8, "max projector residual " + sci(worst));
    o.require(order_ok, "probability not monotone under leq");

    auto crng = make_rng(1060);
    bool exact = true;
    const int models = 500;
    for (int trial = 0; trial < models; ++trial) {
        const auto npts = uniform_int(crng, 1, 16);
        std::vector<std::string> pts;
        for (std::size_t i = 0; i < npts; ++i) pts.push_back("w" + std::to_string(i));
        auto model =
            std::make_shared<const ClassicalModel>(pts, testing::dyadic_measure(crng, npts));
        auto event = [&] {
            std::vector<bool> mask(npts);
            for (std::size_t i = 0; i < npts; ++i) mask[i] = uniform_int(crng, 0, 1) == 1;
            return ClassicalEventuality(model, mask);
        };
        const auto x = event();
        const auto y = event();
        exact = exact && classical_prob(classical_join(x, y)) ==
                             classical_prob(x) + classical_prob(y) -
                                 classical_prob(classical_meet(x, y));
    }
    o.require(exact, "classical inclusion-exclusion not exact");
    if (o.pass) {
        o.detail = std::to_string(n) + " subspace pairs, max residual " + sci(worst) + "; " +
                   std::to_string(models) + " classical models exact";
    }
    return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome picture_equivalence() {
    Outcome o;
    auto rng = make_rng(107);
    double worst = 0.0;
    const int n = 300;
    for (int trial = 0; trial < n; ++trial) {
        const HilbertSpace s(uniform_int(rng, 2, 6));
        const Op u(s, testing::random_unitary(rng, s.dim()));
        const auto p = testing::random_state(rng, s);
        const auto e = testing::random_eventuality(rng, s, uniform_int(rng, 1, s.dim()));
        worst = std::max(worst, std::abs(born(evolve(p, u), e) - born(p, heisenberg_transport(e, u))));
    }
    o.require(worst <= 1e-10, "max deviation " + sci(worst));
    if (o.pass) o.detail = std::to_string(n) + " triples, max deviation " + sci(worst);
    return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome anthropic_algebra() {
    Outcome o;
    auto rng = make_rng(108);
    double worst_total = 0.0, worst_base = 0.0;
    bool degenerate_exact = true;
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = uniform_int(rng, 1, 6);
        std::vector<ObserverModel> obs;
        std::vector<std::vector<double>> gross;
        for (std::size_t k = 0; k < n; ++k) {
            const auto channels = uniform_int(rng, 2, 8);
            const std::string id = "o" + std::to_string(k);
            const double tau = testing::uniform(rng, 0.5, 80);
            const double dt = testing::uniform(rng, 0.01, 2);
            if (uniform_int(rng, 0, 1) == 0) {
                obs.push_back(ObserverModel::with_channel_count(id, static_cast<double>(channels),
                                                                tau, dt));
            } else {
                const HilbertSpace h(channels * uniform_int(rng, 1, 2));
                const auto rank = h.dim() / channels;
                std::vector<Eventuality> ch;
                for (std::size_t c = 0; c < channels; ++c) {
                    std::vector<std::size_t> idx;
                    for (std::size_t r = 0; r < rank; ++r) idx.push_back(c * rank + r);
                    ch.push_back(Eventuality::of_basis_states(h, idx));
                }
                obs.push_back(ObserverModel::with_observable(id, Observable(h, ch), tau, dt));
            }
            gross.push_back(testing::random_distribution(rng, channels));
        }
        for (auto v : {SchemeVariant::weak, SchemeVariant::proper, SchemeVariant::entropic}) {
            worst_total =
                std::max(worst_total, std::abs(net_table({v, LogBase::two}, obs, gross).total - 1.0));
        }
        const auto w2 = weights_entropic(obs, LogBase::two).weights;
        const auto we = weights_entropic(obs, LogBase::natural).weights;
        for (std::size_t k = 0; k < n; ++k) worst_base = std::max(worst_base, std::abs(w2[k] - we[k]));

        std::vector<ObserverModel> same;
        const double shared = static_cast<double>(uniform_int(rng, 2, 64));
        for (std::size_t k = 0; k < n; ++k) {
            same.push_back(ObserverModel::with_channel_count("s" + std::to_string(k), shared,
                                                             testing::uniform(rng, 1, 9), 1));
        }
        degenerate_exact = degenerate_exact &&
                           weights_entropic(same).weights == weights_weak(same).weights;
    }
    o.require(worst_total <= 1e-10, "net total deviation " + sci(worst_total));
    o.require(worst_base <= 1e-12, "log-base deviation " + sci(worst_base));
    o.require(degenerate_exact, "entropic != weak under equal channel counts");

    bool shannon = true;
    int draws = 0;
    for (std::size_t n : {2u, 4u, 8u}) {
        const double cap = entropy_capacity(n, 1);
        for (int trial = 0; trial < 400; ++trial, ++draws) {
            shannon = shannon && shannon_entropy(testing::random_distribution(rng, n)) <= cap + 1e-12;
        }
        const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
        shannon = shannon && std::abs(shannon_entropy(uniform) - cap) <= 1e-12;
    }
    o.require(shannon, "Shannon bound violated");
    if (o.pass) {
        o.detail = "net total " + sci(worst_total) + ", log base " + sci(worst_base) +
                   ", Shannon bound on " + std::to_string(draws) + " distributions";
    }
    return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome lifetime() {
    Outcome o;
    const auto d = lifetime_distribution(LifetimeProfile({{1, 2, 1}, {1, 1, 1}}));
    const double worst = std::max(std::abs(d.masses[0] - 2.0 / 3.0), std::abs(d.masses[1] - 1.0 / 3.0));
    o.require(worst <= 1e-12, "mass deviation " + sci(worst));

    auto rng = make_rng(109);
    bool moderated = true;
    for (int trial = 0; trial < 500; ++trial) {
        const double n1 = static_cast<double>(uniform_int(rng, 2, 200));
        const double n2 = n1 + static_cast<double>(uniform_int(rng, 1, 200));
        auto ratio = [&](BranchWeighting w) {
            const auto m = lifetime_distribution(
                LifetimeProfile({{1, branch_weight(n1, w), 1}, {1, branch_weight(n2, w), 1}}));
            return m.masses[1] / m.masses[0];
        };
        moderated = moderated && ratio(BranchWeighting::entropic) < ratio(BranchWeighting::linear);
    }
    o.require(moderated, "entropic ratio not below linear ratio");
    if (o.pass) o.detail = "mass deviation " + sci(worst) + ", 500 moderation pairs";
    return o;
}

// --- 10 --------------------------------------------------------------------
Outcome cli_determinism() {
    Outcome o;
    int runs = 0;
    for (auto name : preset_names()) {
        for (auto cmd : kCommands) {
            for (const char *fmt : {"text", "csv", "json"}) {
                const std::string args = std::string(cmd) + " --preset " + std::string(name) +
                                         " --format " + fmt;
                const auto first = run_cli(args);
                const auto second = run_cli(args);
                ++runs;
                o.require(first.status == second.status && first.out == second.out,
                          "output differs for '" + args + "'");
                o.require(first.status == 0 || first.status == 1,
                          "unexpected exit " + std::to_string(first.status) + " for '" + args + "'");
            }
        }
    }

    struct Malformed {
        const char *file;
        int status;
        const char *names;
    };
    const Malformed cases[] = {
        {"syntax_error.json", 1, "syntax error at byte"},
        {"non_unit_trace.json", 2, "invariant 'unit trace'"},
        {"non_hermitian.json", 2, "invariant 'hermitian'"},
        {"negative_eigenvalue.json", 2, "invariant 'positive semidefinite'"},
        {"non_orthogonal_channels.json", 2, "invariant 'orthogonality e_i e_j = 0'"},
        {"incomplete_channels.json", 2, "invariant 'completeness sum e_i = I'"},
        {"unknown_space.json", 1, "unresolved reference to space 'nowhere'"},
        {"weight_length_mismatch.json", 1, "state dimension mismatch"},
        {"mixed_rank_perception.json", 2, "invariant 'all channels share one rank'"},
        {"negative_lifetime.json", 2, "invariant 'lifetime > 0'"},
        {"non_unit_pure.json", 2, "invariant 'unit norm'"},
        {"bad_complex.json", 1, "complex numbers are written as [re, im]"},
        {"unknown_field.json", 1, "/temperature: unknown field"},
        {"classical_measure_sum.json", 2, "invariant 'sum of measure = 1'"},
    };
    int rejected = 0;
    for (const auto &c : cases) {
        const auto p = run_cli(std::string("validate --scenario \"") + QPROB_MALFORMED_DIR + "/" +
                               c.file + "\"");
        const bool ok = p.status == c.status && p.out.find(c.names) != std::string::npos;
        o.require(ok, std::string(c.file) + ": exit " + std::to_string(p.status) + ", " + p.out);
        rejected += ok;
    }
    if (o.pass) {
        o.detail = std::to_string(runs) + " preset x command x format runs byte-identical; " +
                   std::to_string(rejected) + " malformed files rejected with named invariants";
    }
    return o;
}

} // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"cat-master table reproduction", cat_master_table},
        {"entropy values", entropy_values},
        {"Stern-Gerlach", stern_gerlach},
        {"Luder suite", luder_suite},
        {"composite consistency", composite_consistency},
        {"lattice suite", lattice_suite},
        {"picture equivalence", picture_equivalence},
        {"anthropic algebra", anthropic_algebra},
        {"lifetime distribution", lifetime},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    int k = 0;
    for (const auto &[name, check] : criteria) {
        ++k;
        Outcome out;
        try {
            out = check();
        } catch (const std::exception &e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << k << ": " << name;
        if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
        std::cout << '\n';
        failed += !out.pass;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed"
                              : std::to_string(failed) + " acceptance criteria FAILED")
              << '\n';
    return failed;
}
