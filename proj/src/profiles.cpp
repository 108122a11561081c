#include "burgerslab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace burgerslab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

struct DataProfile::Node {
    enum class Kind { n_wave, box, cone, inv_sqrt, sum, clip, scale } kind;
    // n_wave / box / cone / clip / scale parameters
    double a = 0.0;                 // L, height, height, m, amp
    double b = 0.0;                 // -, -, radius, -, -
    std::vector<double> v0;         // corner / center / stretch
    std::vector<double> v1;         // widths
    std::vector<std::shared_ptr<const Node>> children;

    int dim() const {
        switch (kind) {
            case Kind::n_wave:
            case Kind::inv_sqrt:
                return 1;
            case Kind::box:
            case Kind::cone:
                return static_cast<int>(v0.size());
            case Kind::sum:
            case Kind::clip:
            case Kind::scale:
                return children.front()->dim();
        }
        return 0;
    }

    double eval(const double* y) const {
        switch (kind) {
            case Kind::n_wave:
                return (y[0] > 0.0 && y[0] < a) ? y[0] : 0.0;
            case Kind::box: {
                for (size_t k = 0; k < v0.size(); ++k)
                    if (y[k] < v0[k] || y[k] > v0[k] + v1[k]) return 0.0;
                return a;
            }
            case Kind::cone: {
                double r2 = 0.0;
                for (size_t k = 0; k < v0.size(); ++k) {
                    const double dy = y[k] - v0[k];
                    r2 += dy * dy;
                }
                const double t = 1.0 - std::sqrt(r2) / b;
                return t > 0.0 ? a * t : 0.0;
            }
            case Kind::inv_sqrt: {
                const double r = std::abs(y[0]);
                if (r <= 0.0 || r >= 1.0) return r == 0.0 ? kInf : 0.0;
                return 1.0 / std::sqrt(r);
            }
            case Kind::sum: {
                double s = 0.0;
                for (const auto& c : children) s += c->eval(y);
                return s;
            }
            case Kind::clip: {
                const double v = children.front()->eval(y);
                return std::clamp(v, -a, a);
            }
            case Kind::scale: {
                std::vector<double> z(v0.size());
                for (size_t k = 0; k < v0.size(); ++k) z[k] = v0[k] * y[k];
                return a * children.front()->eval(z.data());
            }
        }
        return 0.0;
    }

    std::array<double, 2> value_bounds() const {
        switch (kind) {
            case Kind::n_wave:
                return {0.0, a};
            case Kind::box:
            case Kind::cone:
                return {std::min(0.0, a), std::max(0.0, a)};
            case Kind::inv_sqrt:
                return {0.0, kInf};
            case Kind::sum: {
                double lo = 0.0, hi = 0.0;
                for (const auto& c : children) {
                    const auto b2 = c->value_bounds();
                    lo += b2[0];
                    hi += b2[1];
                }
                return {lo, hi};
            }
            case Kind::clip: {
                const auto b2 = children.front()->value_bounds();
                return {std::clamp(b2[0], -a, a), std::clamp(b2[1], -a, a)};
            }
            case Kind::scale: {
                const auto b2 = children.front()->value_bounds();
                const double x = a * b2[0], y = a * b2[1];
                return {std::min(std::min(x, y), 0.0), std::max(std::max(x, y), 0.0)};
            }
        }
        return {0.0, 0.0};
    }

    std::vector<std::array<double, 2>> support_bounds() const {
        switch (kind) {
            case Kind::n_wave:
                return {{0.0, a}};
            case Kind::box: {
                std::vector<std::array<double, 2>> s;
                for (size_t k = 0; k < v0.size(); ++k)
                    s.push_back({v0[k], v0[k] + v1[k]});
                return s;
            }
            case Kind::cone: {
                std::vector<std::array<double, 2>> s;
                for (size_t k = 0; k < v0.size(); ++k)
                    s.push_back({v0[k] - b, v0[k] + b});
                return s;
            }
            case Kind::inv_sqrt:
                return {{-1.0, 1.0}};
            case Kind::sum: {
                auto s = children.front()->support_bounds();
                for (size_t c = 1; c < children.size(); ++c) {
                    const auto t = children[c]->support_bounds();
                    for (size_t k = 0; k < s.size(); ++k) {
                        s[k][0] = std::min(s[k][0], t[k][0]);
                        s[k][1] = std::max(s[k][1], t[k][1]);
                    }
                }
                return s;
            }
            case Kind::clip:
                return children.front()->support_bounds();
            case Kind::scale: {
                auto s = children.front()->support_bounds();
                for (size_t k = 0; k < s.size(); ++k) {
                    s[k][0] /= v0[k];
                    s[k][1] /= v0[k];
                    if (s[k][0] > s[k][1]) std::swap(s[k][0], s[k][1]);
                }
                return s;
            }
        }
        return {};
    }
};

DataProfile DataProfile::n_wave(double L) {
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("profile: n_wave needs L > 0");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::n_wave;
    n->a = L;
    return DataProfile(std::move(n));
}

DataProfile DataProfile::box(double height, std::vector<double> corner,
                             std::vector<double> widths) {
    if (corner.empty() || corner.size() != widths.size())
        throw ConfigError("profile: box corner/widths size mismatch");
    for (double w : widths)
        if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("profile: box widths must be > 0");
    if (!std::isfinite(height)) throw ConfigError("profile: box height must be finite");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::box;
    n->a = height;
    n->v0 = std::move(corner);
    n->v1 = std::move(widths);
    return DataProfile(std::move(n));
}

DataProfile DataProfile::cone(double height, std::vector<double> center, double radius) {
    if (center.empty()) throw ConfigError("profile: cone needs a center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ConfigError("profile: cone radius must be > 0");
    if (!std::isfinite(height)) throw ConfigError("profile: cone height must be finite");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::cone;
    n->a = height;
    n->b = radius;
    n->v0 = std::move(center);
    return DataProfile(std::move(n));
}

DataProfile DataProfile::inv_sqrt() {
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::inv_sqrt;
    return DataProfile(std::move(n));
}

DataProfile DataProfile::sum(std::vector<DataProfile> parts) {
    if (parts.empty()) throw ConfigError("profile: sum needs at least one part");
    const int d = parts.front().dimension();
    for (const auto& p : parts)
        if (p.dimension() != d) throw ConfigError("profile: sum parts disagree in dimension");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::sum;
    for (auto& p : parts) n->children.push_back(p.node_);
    return DataProfile(std::move(n));
}

DataProfile DataProfile::clipped(double m) const {
    if (!(m > 0.0) || !std::isfinite(m))
        throw ConfigError("profile: clip level must be positive and finite");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::clip;
    n->a = m;
    n->children.push_back(node_);
    return DataProfile(std::move(n));
}

DataProfile DataProfile::scaled(double amp, std::vector<double> stretch) const {
    if (static_cast<int>(stretch.size()) != dimension())
        throw ConfigError("profile: stretch size must match dimension");
    for (double s : stretch)
        if (!(s > 0.0) || !std::isfinite(s))
            throw ConfigError("profile: stretch factors must be > 0");
    if (!std::isfinite(amp)) throw ConfigError("profile: amplitude must be finite");
    auto n = std::make_shared<DataProfile::Node>();
    n->kind = Node::Kind::scale;
    n->a = amp;
    n->v0 = std::move(stretch);
    n->children.push_back(node_);
    return DataProfile(std::move(n));
}

int DataProfile::dimension() const { return node_->dim(); }

double DataProfile::operator()(const double* y) const { return node_->eval(y); }

double DataProfile::operator()(const std::vector<double>& y) const {
    if (static_cast<int>(y.size()) != dimension())
        throw std::invalid_argument("profile: evaluation point has wrong dimension");
    return node_->eval(y.data());
}

std::array<double, 2> DataProfile::value_bounds() const { return node_->value_bounds(); }

std::vector<std::array<double, 2>> DataProfile::support_bounds() const {
    return node_->support_bounds();
}

DataProfile truncate_data(const DataProfile& p, double m) { return p.clipped(m); }

// ------------------------------------------------------------------- JSON

nlohmann::json DataProfile::to_json() const {
    const Node& n = *node_;
    nlohmann::json j;
    switch (n.kind) {
        case Node::Kind::n_wave:
            j["kind"] = "n_wave";
            j["L"] = n.a;
            break;
        case Node::Kind::box:
            j["kind"] = "box";
            j["height"] = n.a;
            j["corner"] = n.v0;
            j["widths"] = n.v1;
            break;
        case Node::Kind::cone:
            j["kind"] = "cone";
            j["height"] = n.a;
            j["center"] = n.v0;
            j["radius"] = n.b;
            break;
        case Node::Kind::inv_sqrt:
            j["kind"] = "inv_sqrt";
            break;
        case Node::Kind::sum: {
            j["kind"] = "sum";
            nlohmann::json parts = nlohmann::json::array();
            for (const auto& c : n.children) parts.push_back(DataProfile(c).to_json());
            j["parts"] = std::move(parts);
            break;
        }
        case Node::Kind::clip:
            j["kind"] = "clip";
            j["m"] = n.a;
            j["base"] = DataProfile(n.children.front()).to_json();
            break;
        case Node::Kind::scale:
            j["kind"] = "scale";
            j["amp"] = n.a;
            j["stretch"] = n.v0;
            j["base"] = DataProfile(n.children.front()).to_json();
            break;
    }
    return j;
}

DataProfile DataProfile::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("profile: expected an object with a kind");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "n_wave") return n_wave(j.at("L").get<double>());
    if (kind == "box")
        return box(j.at("height").get<double>(), j.at("corner").get<std::vector<double>>(),
                   j.at("widths").get<std::vector<double>>());
    if (kind == "cone")
        return cone(j.at("height").get<double>(), j.at("center").get<std::vector<double>>(),
                    j.at("radius").get<double>());
    if (kind == "inv_sqrt") return inv_sqrt();
    if (kind == "sum") {
        std::vector<DataProfile> parts;
        for (const auto& p : j.at("parts")) parts.push_back(from_json(p));
        return sum(std::move(parts));
    }
    if (kind == "clip") return from_json(j.at("base")).clipped(j.at("m").get<double>());
    if (kind == "scale")
        return from_json(j.at("base"))
            .scaled(j.at("amp").get<double>(), j.at("stretch").get<std::vector<double>>());
    throw ConfigError("profile: unknown kind '" + kind + "'");
}

}  // namespace burgerslab
