#pragma once

#include "burgerslab/util.hpp"

#include <json.hpp>

#include <array>
#include <memory>
#include <vector>

namespace burgerslab {

// Initial-data profile: a closed-under-composition expression tree over a
// few primitive shapes.  Profiles are immutable and cheap to share.
//
//   n_wave(L)            1-D: u(y) = y on (0, L), 0 elsewhere
//   box(h, corner, w)    h on the axis-aligned box, 0 elsewhere
//   cone(h, center, r)   h * max(0, 1 - |y - center| / r)
//   inv_sqrt()           1-D: |y|^{-1/2} on (-1, 1) \ {0}, 0 elsewhere
//   sum(...)             pointwise sum (equal dimensions)
//   clipped(m)           values clamped to [-m, m]
//   scaled(amp, stretch) amp * u(stretch_1 y_1, ..., stretch_n y_n)
class DataProfile {
public:
    static DataProfile n_wave(double L);
    static DataProfile box(double height, std::vector<double> corner,
                           std::vector<double> widths);
    static DataProfile cone(double height, std::vector<double> center, double radius);
    static DataProfile inv_sqrt();
    static DataProfile sum(std::vector<DataProfile> parts);
    DataProfile clipped(double m) const;
    DataProfile scaled(double amp, std::vector<double> stretch) const;

    int dimension() const;
    double operator()(const double* y) const;
    double operator()(const std::vector<double>& y) const;

    // Conservative [min, max] of attained values (including 0 outside the
    // support).  inv_sqrt reports an infinite upper bound until clipped.
    std::array<double, 2> value_bounds() const;
    // Per-axis interval containing the support.
    std::vector<std::array<double, 2>> support_bounds() const;

    nlohmann::json to_json() const;
    static DataProfile from_json(const nlohmann::json& j);

private:
    struct Node;
    explicit DataProfile(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Clamp to [-m, m]; the truncation operator of the scaling experiments.
DataProfile truncate_data(const DataProfile& p, double m);

}  // namespace burgerslab
