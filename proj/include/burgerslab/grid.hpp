#pragma once

#include "burgerslab/util.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace burgerslab {

// Uniform tensor grid in the space variables.  Cell (i_1, ..., i_n) covers
// [origin_k + i_k h_k, origin_k + (i_k + 1) h_k).  Outside the grid the
// solution is the constant 0 (enforced: the outermost cell ring must stay
// zero, otherwise the run aborts).
struct GridSpec {
    std::vector<double> origin;
    std::vector<double> h;
    std::vector<int64_t> counts;

    int dim() const { return static_cast<int>(counts.size()); }

    int64_t cells() const {
        int64_t c = 1;
        for (int64_t m : counts) c *= m;
        return c;
    }

    double cell_volume() const {
        double v = 1.0;
        for (double hk : h) v *= hk;
        return v;
    }

    // Row-major strides, last axis contiguous.
    std::vector<int64_t> strides() const {
        std::vector<int64_t> s(counts.size(), 1);
        for (int k = static_cast<int>(counts.size()) - 2; k >= 0; --k)
            s[static_cast<size_t>(k)] = s[static_cast<size_t>(k) + 1] *
                                        counts[static_cast<size_t>(k) + 1];
        return s;
    }

    void validate() const {
        if (counts.empty() || origin.size() != counts.size() || h.size() != counts.size())
            throw ConfigError("grid: origin/h/counts must have equal nonzero length");
        for (double hk : h)
            if (!(hk > 0.0)) throw ConfigError("grid: cell sizes must be > 0");
        for (double ok : origin)
            if (!std::isfinite(ok)) throw ConfigError("grid: origin must be finite");
        int64_t total = 1;
        for (int64_t m : counts) {
            if (m < 3) throw ConfigError("grid: need at least 3 cells per axis");
            if (m > 100'000'000) throw ConfigError("grid: axis count too large");
            total *= m;
            if (total > 100'000'000) throw ConfigError("grid: total cell count exceeds 1e8");
        }
    }
};

// Cell-average field on a GridSpec, plus the physical time it represents.
struct CellField {
    GridSpec grid;
    double time = 0.0;
    std::vector<double> values;

    int64_t cells() const { return static_cast<int64_t>(values.size()); }
};

// Visits every 1-D line of the grid along `axis` in a fixed lexicographic
// order: f(base_offset, stride, count).
template <class F>
void for_each_line(const GridSpec& g, int axis, F&& f) {
    const auto strides = g.strides();
    const int n = g.dim();
    const int64_t count = g.counts[static_cast<size_t>(axis)];
    const int64_t stride = strides[static_cast<size_t>(axis)];
    std::vector<int64_t> idx(static_cast<size_t>(n), 0);
    while (true) {
        int64_t base = 0;
        for (int k = 0; k < n; ++k)
            if (k != axis) base += idx[static_cast<size_t>(k)] * strides[static_cast<size_t>(k)];
        f(base, stride, count);
        // lexicographic increment over all axes except `axis`
        int k = n - 1;
        for (; k >= 0; --k) {
            if (k == axis) continue;
            if (++idx[static_cast<size_t>(k)] < g.counts[static_cast<size_t>(k)]) break;
            idx[static_cast<size_t>(k)] = 0;
        }
        if (k < 0) break;
    }
}

}  // namespace burgerslab
