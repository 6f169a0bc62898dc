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

// Boolean (measure-theoretic) eventualities: subsets of a finite sample set.

#pragma once

#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qprob {

class ClassicalModel {
  public:
    ClassicalModel(std::vector<std::string> points, std::vector<double> measure)
        : points_(std::move(points)), measure_(std::move(measure)) {
        if (points_.empty()) {
            throw StructuralError("classical model needs at least one sample point");
        }
        if (points_.size() != measure_.size()) {
            throw StructuralError("classical model: one measure weight per sample point");
        }
        if (std::set<std::string>(points_.begin(), points_.end()).size() != points_.size()) {
            throw StructuralError("classical model: duplicate sample point label");
        }
        double total = 0.0;
        for (double w : measure_) {
            if (!(w >= 0.0 && w <= 1.0)) {
                throw ValidationError("classical model", "weight in [0,1]",
                                      w < 0.0 ? -w : w - 1.0, 0.0);
            }
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw ValidationError("classical model", "sum of measure = 1",
                                  std::abs(total - 1.0), 1e-12);
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<std::string> &points() const noexcept { return points_; }
    const std::vector<double> &measure() const noexcept { return measure_; }

    std::size_t index_of(const std::string &point) const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i] == point) return i;
        }
        throw StructuralError("unknown sample point '" + point + "'");
    }

  private:
    std::vector<std::string> points_;
    std::vector<double> measure_;
};

class ClassicalEventuality {
  public:
    ClassicalEventuality(std::shared_ptr<const ClassicalModel> model,
                         std::vector<bool> members)
        : model_(std::move(model)), members_(std::move(members)) {
        if (!model_) throw StructuralError("classical eventuality without a model");
        if (members_.size() != model_->size()) {
            throw StructuralError("classical eventuality: membership mask size mismatch");
        }
    }

    static ClassicalEventuality of(std::shared_ptr<const ClassicalModel> model,
                                   const std::vector<std::string> &points) {
        std::vector<bool> mask(model->size(), false);
        for (const auto &p : points) mask[model->index_of(p)] = true;
        return {std::move(model), std::move(mask)};
    }
    static ClassicalEventuality null(std::shared_ptr<const ClassicalModel> model) {
        const auto n = model->size();
        return {std::move(model), std::vector<bool>(n, false)};
    }
    static ClassicalEventuality certain(std::shared_ptr<const ClassicalModel> model) {
        const auto n = model->size();
        return {std::move(model), std::vector<bool>(n, true)};
    }

    const ClassicalModel &model() const noexcept { return *model_; }
    const std::shared_ptr<const ClassicalModel> &model_ptr() const noexcept { return model_; }
    const std::vector<bool> &members() const noexcept { return members_; }
    bool contains(std::size_t i) const { return members_.at(i); }

    friend bool operator==(const ClassicalEventuality &a, const ClassicalEventuality &b) {
        return a.model_ == b.model_ && a.members_ == b.members_;
    }

  private:
    std::shared_ptr<const ClassicalModel> model_;
    std::vector<bool> members_;
};

namespace detail {
inline void require_same_model(const ClassicalEventuality &a, const ClassicalEventuality &b) {
    if (a.model_ptr() != b.model_ptr()) {
        throw StructuralError("classical eventualities belong to different models");
    }
}

template <class F>
ClassicalEventuality combine(const ClassicalEventuality &a, const ClassicalEventuality &b, F f) {
    require_same_model(a, b);
    std::vector<bool> out(a.members().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(a.contains(i), b.contains(i));
    return {a.model_ptr(), std::move(out)};
}
} // namespace detail

/// P{e}: the measure summed over members in sample-point order.
inline double classical_prob(const ClassicalEventuality &e) {
    double p = 0.0;
    for (std::size_t i = 0; i < e.members().size(); ++i) {
        if (e.contains(i)) p += e.model().measure()[i];
    }
    return p;
}

inline ClassicalEventuality classical_meet(const ClassicalEventuality &a,
                                           const ClassicalEventuality &b) {
    return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}

inline ClassicalEventuality classical_join(const ClassicalEventuality &a,
                                           const ClassicalEventuality &b) {
    return detail::combine(a, b, [](bool x, bool y) { return x || y; });
}

inline ClassicalEventuality classical_complement(const ClassicalEventuality &e) {
    std::vector<bool> out(e.members().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = !e.contains(i);
    return {e.model_ptr(), std::move(out)};
}

inline bool classical_leq(const ClassicalEventuality &a, const ClassicalEventuality &b) {
    detail::require_same_model(a, b);
    for (std::size_t i = 0; i < a.members().size(); ++i) {
        if (a.contains(i) && !b.contains(i)) return false;
    }
    return true;
}

} // namespace qprob
