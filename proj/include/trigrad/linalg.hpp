#pragma once

#include "trigrad/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace trigrad {

/// Sparse rational vector, entries sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

/// y + s*x.
inline SparseVec axpy(const SparseVec& y, const Rational& s, const SparseVec& x) {
    SparseVec out;
    out.reserve(y.size() + x.size());
    size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, s * x[j].second);
            ++j;
        } else {
            Rational v = y[i].second + s * x[j].second;
            if (v != 0) out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

inline void scale(SparseVec& v, const Rational& s) {
    for (auto& [i, c] : v) c *= s;
}

inline SparseVec unit_vector(int i) { return {{i, Rational(1)}}; }

/// Incremental echelon basis keyed by leading (smallest) index. Each stored
/// row carries a tag vector that is transformed alongside it, which is how
/// kernels and coordinates are recovered.
class Reducer {
public:
    struct Row {
        SparseVec vec;
        SparseVec tag;
    };

    /// Reduces `v` (and its tag) against the stored rows until its leading
    /// index is free.
    void reduce(SparseVec& v, SparseVec& tag) const {
        while (!v.empty()) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) return;
            Rational c = -v.front().second;
            v = axpy(v, c, it->second.vec);
            if (!it->second.tag.empty()) tag = axpy(tag, c, it->second.tag);
        }
    }

    /// Inserts v; returns false when v reduced to zero, leaving the reduced
    /// tag in `tag`.
    bool insert(SparseVec v, SparseVec& tag) {
        reduce(v, tag);
        if (v.empty()) return false;
        Rational inv = 1 / v.front().second;
        scale(v, inv);
        scale(tag, inv);
        int lead = v.front().first;
        rows_.emplace(lead, Row{std::move(v), tag});
        return true;
    }
    bool insert(SparseVec v) {
        SparseVec tag;
        return insert(std::move(v), tag);
    }

    bool contains(SparseVec v) const {
        SparseVec tag;
        reduce(v, tag);
        return v.empty();
    }

    size_t rank() const { return rows_.size(); }

private:
    std::map<int, Row> rows_;
};

/// A linear map given by its columns, with the number of rows.
struct SparseColumns {
    int rows = 0;
    std::vector<SparseVec> cols;
};

inline size_t rank_of(const SparseColumns& m) {
    Reducer r;
    for (const auto& c : m.cols) r.insert(c);
    return r.rank();
}

/// Basis of the kernel, as vectors in the column index space.
inline std::vector<SparseVec> kernel_of(const SparseColumns& m, size_t* rank = nullptr) {
    Reducer r;
    std::vector<SparseVec> ker;
    for (size_t j = 0; j < m.cols.size(); ++j) {
        SparseVec tag = unit_vector(static_cast<int>(j));
        if (!r.insert(m.cols[j], tag)) ker.push_back(std::move(tag));
    }
    if (rank) *rank = r.rank();
    return ker;
}

/// Homology of V --in--> W --out--> X at W, with explicit representatives and
/// a coordinate map for cycles.
class HomologyReducer {
public:
    /// `boundaries` span im(in); `cycles` span ker(out).
    HomologyReducer(const std::vector<SparseVec>& boundaries, const std::vector<SparseVec>& cycles) {
        for (const auto& b : boundaries) reducer_.insert(b);
        for (const auto& z : cycles) {
            SparseVec v = z;
            SparseVec tag;
            reducer_.reduce(v, tag);
            if (v.empty()) continue;
            // the residual itself becomes representative h_id
            SparseVec htag = unit_vector(static_cast<int>(reps_.size()));
            reps_.push_back(v);
            reducer_.insert(std::move(v), htag);
        }
    }

    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<SparseVec>& representatives() const { return reps_; }

    /// Homology coordinates of a cycle; nullopt if it is not in
    /// boundaries + span(representatives).
    std::optional<SparseVec> coordinates(SparseVec cycle) const {
        SparseVec acc;
        SparseVec v = std::move(cycle);
        reducer_.reduce(v, acc);
        if (!v.empty()) return std::nullopt;
        scale(acc, Rational(-1));
        return acc;
    }

private:
    Reducer reducer_;
    std::vector<SparseVec> reps_;
};

}  // namespace trigrad
