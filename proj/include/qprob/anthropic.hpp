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
 * @file anthropic.hpp
 * Net perception probabilities: gross (conditional) quantum probabilities
 * multiplied by an observer weighting factor.
 *
 * Three weighting schemes are provided:
 *  - weak:     every one of N observers gets 1/N;
 *  - proper:   a universal rate 1/(<tau> N) per unit proper time, so an
 *              observer of lifetime tau gets tau / (<tau> N);
 *  - entropic: weight proportional to the information capacity
 *              S_e = log(N_e) of the observer's perception observable, where
 *              N_e = dim / rank is its branch-channel count, with rate
 *              alpha S_e / (perception duration).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "observables.hpp"

namespace qprob {

enum class LogBase { two, natural };

inline double log_in(double x, LogBase base) {
    return base == LogBase::two ? std::log2(x) : std::log(x);
}

/// S_e = log(dim) - log(rank).
inline double entropy_capacity(std::size_t space_dim, std::size_t channel_rank,
                               LogBase base = LogBase::two) {
    if (channel_rank < 1 || channel_rank > space_dim) {
        throw StructuralError("entropy_capacity: channel rank " + std::to_string(channel_rank) +
                              " outside [1, " + std::to_string(space_dim) + "]");
    }
    return log_in(static_cast<double>(space_dim), base) -
           log_in(static_cast<double>(channel_rank), base);
}

/// -sum_i p_i log p_i, with 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> p, LogBase base = LogBase::two) {
    double s = 0.0;
    for (double x : p) {
        if (x > 0.0) s -= x * log_in(x, base);
    }
    return s;
}

/**
 * An observer: a perception observable (all channels of one common rank)
 * or, for what-if use, a directly given branch-channel count N_e; plus a
 * lifetime and the duration of one perception.
 */
class ObserverModel {
  public:
    static ObserverModel with_observable(std::string id, Observable perception, double lifetime,
                                         double perception_duration, double tol = kDefaultTol) {
        require_valid(perception, tol, "perception observable of '" + id + "'");
        const std::size_t rank = perception.channel(0).rank();
        for (const auto &c : perception.channels()) {
            if (c.rank() != rank) {
                throw ValidationError("perception observable of '" + id + "'",
                                      "all channels share one rank",
                                      std::abs(static_cast<double>(c.rank()) -
                                               static_cast<double>(rank)),
                                      0.0);
            }
        }
        ObserverModel m(std::move(id), lifetime, perception_duration);
        m.channel_count_ = static_cast<double>(perception.space().dim() / rank);
        m.rank_ = rank;
        m.dim_ = perception.space().dim();
        m.perception_ = std::move(perception);
        return m;
    }

    static ObserverModel with_channel_count(std::string id, double branch_channels,
                                            double lifetime, double perception_duration) {
        if (!(branch_channels >= 1.0)) {
            throw ValidationError("observer '" + id + "'", "branch-channel count >= 1",
                                  1.0 - branch_channels, 0.0);
        }
        ObserverModel m(std::move(id), lifetime, perception_duration);
        m.channel_count_ = branch_channels;
        return m;
    }

    const std::string &id() const noexcept { return id_; }
    const Observable *perception() const noexcept {
        return perception_ ? &*perception_ : nullptr;
    }
    /// N_e
    double channel_count() const noexcept { return channel_count_; }
    /// R_e, when a perception observable is attached.
    std::optional<std::size_t> channel_rank() const noexcept { return rank_; }
    double lifetime() const noexcept { return lifetime_; }
    double perception_duration() const noexcept { return duration_; }

    /// S_e in the requested base.
    double entropy(LogBase base = LogBase::two) const {
        if (rank_) return entropy_capacity(dim_, *rank_, base);
        return log_in(channel_count_, base);
    }

  private:
    ObserverModel(std::string id, double lifetime, double duration)
        : id_(std::move(id)), lifetime_(lifetime), duration_(duration) {
        if (!(lifetime_ > 0.0)) {
            throw ValidationError("observer '" + id_ + "'", "lifetime > 0", -lifetime_, 0.0);
        }
        if (!(duration_ > 0.0)) {
            throw ValidationError("observer '" + id_ + "'", "perception duration > 0",
                                  -duration_, 0.0);
        }
    }

    std::string id_;
    std::optional<Observable> perception_;
    double channel_count_ = 1.0;
    std::optional<std::size_t> rank_;
    std::size_t dim_ = 0;
    double lifetime_;
    double duration_;
};

enum class SchemeVariant { weak, proper, entropic };

inline const char *to_string(SchemeVariant v) {
    switch (v) {
    case SchemeVariant::weak: return "weak";
    case SchemeVariant::proper: return "proper";
    case SchemeVariant::entropic: return "entropic";
    }
    return "?";
}

struct AnthropicScheme {
    SchemeVariant variant = SchemeVariant::entropic;
    LogBase log_base = LogBase::two; ///< entropic only
};

struct ObserverWeights {
    std::vector<double> weights;
    double alpha = 0.0;        ///< entropic: 1 / sum S_e
    double rate = 0.0;         ///< proper: 1 / (<tau> N)
    double mean_lifetime = 0.0;
};

namespace detail {
inline void require_observers(std::size_t n) {
    if (n == 0) throw ValidationError("observer population", "N >= 1", 0.0, 0.0);
}
} // namespace detail

inline ObserverWeights weights_weak(std::size_t n) {
    detail::require_observers(n);
    ObserverWeights w;
    w.weights.assign(n, 1.0 / static_cast<double>(n));
    return w;
}

inline ObserverWeights weights_weak(std::span<const ObserverModel> observers) {
    return weights_weak(observers.size());
}

inline ObserverWeights weights_proper(std::span<const double> lifetimes) {
    detail::require_observers(lifetimes.size());
    for (double t : lifetimes) {
        if (!(t > 0.0)) throw ValidationError("observer population", "lifetime > 0", -t, 0.0);
    }
    const double total = std::accumulate(lifetimes.begin(), lifetimes.end(), 0.0);
    ObserverWeights w;
    w.mean_lifetime = total / static_cast<double>(lifetimes.size());
    w.rate = 1.0 / total;
    for (double t : lifetimes) w.weights.push_back(t / total);
    return w;
}

inline ObserverWeights weights_proper(std::span<const ObserverModel> observers) {
    std::vector<double> lifetimes;
    for (const auto &o : observers) lifetimes.push_back(o.lifetime());
    return weights_proper(lifetimes);
}

/// weight_k = S_k / sum_m S_m. Identical capacities give exactly 1/N.
inline ObserverWeights weights_entropic(std::span<const ObserverModel> observers,
                                        LogBase base = LogBase::two) {
    detail::require_observers(observers.size());
    std::vector<double> s;
    for (const auto &o : observers) s.push_back(o.entropy(base));
    const double total = std::accumulate(s.begin(), s.end(), 0.0);
    if (!(total > 0.0)) {
        throw ValidationError("observer population", "some S_e > 0", 0.0, 0.0);
    }
    ObserverWeights w;
    w.alpha = 1.0 / total;
    if (std::all_of(s.begin(), s.end(), [&](double x) { return x == s.front(); })) {
        w.weights.assign(s.size(), 1.0 / static_cast<double>(s.size()));
    } else {
        for (double x : s) w.weights.push_back(x / total);
    }
    return w;
}

inline ObserverWeights observer_weights(const AnthropicScheme &scheme,
                                        std::span<const ObserverModel> observers) {
    switch (scheme.variant) {
    case SchemeVariant::weak: return weights_weak(observers);
    case SchemeVariant::proper: return weights_proper(observers);
    case SchemeVariant::entropic: return weights_entropic(observers, scheme.log_base);
    }
    throw StructuralError("unknown anthropic scheme");
}

struct NetTable {
    std::vector<double> weights;
    std::vector<std::vector<double>> gross;
    std::vector<std::vector<double>> net; ///< weight_k * gross_k(i)
    double total = 0.0;
};

/// Gross probabilities per observer must each sum to 1 within tol.
inline NetTable net_table(const AnthropicScheme &scheme, std::span<const ObserverModel> observers,
                          const std::vector<std::vector<double>> &gross,
                          double tol = kDefaultTol) {
    if (gross.size() != observers.size()) {
        throw StructuralError("net_table: one gross distribution per observer required");
    }
    for (std::size_t k = 0; k < gross.size(); ++k) {
        const auto *obs = observers[k].perception();
        if (obs && obs->size() != gross[k].size()) {
            throw StructuralError("net_table: gross distribution of '" + observers[k].id() +
                                  "' has the wrong channel count");
        }
        const double sum = std::accumulate(gross[k].begin(), gross[k].end(), 0.0);
        if (std::abs(sum - 1.0) > tol) {
            throw ValidationError("gross probabilities of '" + observers[k].id() + "'",
                                  "sum to 1", std::abs(sum - 1.0), tol);
        }
    }
    NetTable t;
    t.weights = observer_weights(scheme, observers).weights;
    t.gross = gross;
    for (std::size_t k = 0; k < gross.size(); ++k) {
        std::vector<double> row;
        for (double g : gross[k]) {
            row.push_back(t.weights[k] * g);
            t.total += row.back();
        }
        t.net.push_back(std::move(row));
    }
    return t;
}

struct PerceptionRate {
    double rate;           ///< probability per unit proper time
    double per_perception; ///< rate * perception duration
};

/**
 * Probability rate for observer k. entropic: alpha S_e / duration; proper:
 * 1 / (<tau> N) for everyone; weak: the observer's weight spread over one
 * perception duration.
 */
inline PerceptionRate perception_rate(const AnthropicScheme &scheme,
                                      std::span<const ObserverModel> observers, std::size_t k) {
    if (k >= observers.size()) throw StructuralError("perception_rate: observer index out of range");
    const double dt = observers[k].perception_duration();
    const auto w = observer_weights(scheme, observers);
    double rate = 0.0;
    switch (scheme.variant) {
    case SchemeVariant::entropic:
        rate = w.alpha * observers[k].entropy(scheme.log_base) / dt;
        break;
    case SchemeVariant::proper:
        rate = w.rate;
        break;
    case SchemeVariant::weak:
        rate = w.weights[k] / dt;
        break;
    }
    return {rate, rate * dt};
}

struct LifetimeSegment {
    double duration;            ///< proper time spent in the segment
    double entropy;             ///< S_e per perception
    double perception_duration; ///< Delta_e tau
};

/// Piecewise-constant history of an observer's perception capacity.
class LifetimeProfile {
  public:
    explicit LifetimeProfile(std::vector<LifetimeSegment> segments)
        : segments_(std::move(segments)) {
        if (segments_.empty()) throw StructuralError("lifetime profile has no segments");
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto &s = segments_[i];
            const std::string what = "lifetime segment " + std::to_string(i + 1);
            if (!(s.duration > 0.0)) throw ValidationError(what, "duration > 0", -s.duration, 0.0);
            if (!(s.entropy >= 0.0)) throw ValidationError(what, "S_e >= 0", -s.entropy, 0.0);
            if (!(s.perception_duration > 0.0)) {
                throw ValidationError(what, "perception duration > 0", -s.perception_duration, 0.0);
            }
        }
    }

    const std::vector<LifetimeSegment> &segments() const noexcept { return segments_; }

  private:
    std::vector<LifetimeSegment> segments_;
};

struct LifetimeDistribution {
    std::vector<double> masses;     ///< normalized, proportional to duration * S_e / dtau
    std::vector<double> cumulative;
    std::vector<double> densities;  ///< mass / duration
    std::size_t argmax = 0;         ///< segment with the highest density
};

inline LifetimeDistribution lifetime_distribution(const LifetimeProfile &profile) {
    LifetimeDistribution d;
    double total = 0.0;
    for (const auto &s : profile.segments()) {
        d.masses.push_back(s.duration * s.entropy / s.perception_duration);
        total += d.masses.back();
    }
    if (!(total > 0.0)) {
        throw ValidationError("lifetime profile", "total mass > 0", 0.0, 0.0);
    }
    double running = 0.0;
    for (std::size_t i = 0; i < d.masses.size(); ++i) {
        d.masses[i] /= total;
        running += d.masses[i];
        d.cumulative.push_back(running);
        d.densities.push_back(d.masses[i] / profile.segments()[i].duration);
        if (d.densities[i] > d.densities[d.argmax]) d.argmax = i;
    }
    return d;
}

enum class BranchWeighting { linear, entropic };

/// Anthropic factor of a perception with n branch channels: n (linear) or
/// log n (entropic).
inline double branch_weight(double n_channels, BranchWeighting w, LogBase base = LogBase::two) {
    return w == BranchWeighting::linear ? n_channels : log_in(n_channels, base);
}

} // namespace qprob
