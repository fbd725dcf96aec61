#pragma once

#include "trigrad/koszul.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trigrad {

/// Open graph on n strands built from a stack of crossing slots. Slot i sits
/// at left position positions[i] (0-based, bottom to top) and is a wide edge
/// when states[i] is 1, a pair of straight arcs otherwise. Top endpoints are
/// x1..xn, bottom endpoints x(n+1)..x(2n), internal marks follow.
inline ResolutionGraph stacked_graph(int n, const std::vector<int>& positions, const std::vector<int>& states) {
    if (positions.size() != states.size()) throw KoszulError("stacked_graph: size mismatch");
    const int L = static_cast<int>(positions.size());
    ResolutionGraph g;
    const int total = 2 * n + std::max(0, L - 1) * n;
    for (int v = 0; v < total; ++v) g.variables.push_back("x" + std::to_string(v + 1));
    auto var = [&](int level, int pos) {
        if (level == L) return pos;
        if (level == 0) return n + pos;
        return 2 * n + (level - 1) * n + pos;
    };
    if (L == 0) {
        for (int p = 0; p < n; ++p) g.arcs.push_back({var(0, p) + n, p});
        return g;
    }
    for (int i = 0; i < L; ++i) {
        int p = positions[i];
        if (p < 0 || p + 1 >= n) throw KoszulError("stacked_graph: slot position out of range");
        int x1 = var(i + 1, p), x2 = var(i + 1, p + 1), x3 = var(i, p + 1), x4 = var(i, p);
        if (states[i])
            g.wide_edges.push_back({x1, x2, x3, x4});
        else {
            g.arcs.push_back({x4, x1});
            g.arcs.push_back({x3, x2});
        }
        for (int q = 0; q < n; ++q)
            if (q != p && q != p + 1) g.arcs.push_back({var(i, q), var(i + 1, q)});
    }
    return g;
}

/// Joins top endpoint x_i to bottom endpoint x_{i+n} by an arc.
inline ResolutionGraph close_graph(const ResolutionGraph& open, int n) {
    ResolutionGraph g = open;
    for (int i = 0; i < n; ++i) g.arcs.push_back({i, i + n});
    return g;
}

/// Resolutions of the three-crossing diagram with slots (1,2), (2,3), (1,2)
/// from bottom to top. Digits are read top slot first.
inline ResolutionGraph gamma_ijk(int top, int middle, int bottom) {
    return stacked_graph(3, {0, 1, 0}, {bottom, middle, top});
}

inline ResolutionGraph circle_graph() {
    ResolutionGraph g;
    g.variables = {"x1"};
    g.arcs = {{0, 0}};
    return g;
}

inline ResolutionGraph theta_graph() { return close_graph(stacked_graph(2, {0}, {1}), 2); }

/// The four graphs of the third Reidemeister move comparison: e1e2e1, e2,
/// e2e1e2 and e1 on three strands.
inline ResolutionGraph reidemeister3_graph(int which) {
    switch (which) {
        case 1: return stacked_graph(3, {0, 1, 0}, {1, 1, 1});
        case 2: return stacked_graph(3, {1}, {1});
        case 3: return stacked_graph(3, {1, 0, 1}, {1, 1, 1});
        case 4: return stacked_graph(3, {0}, {1});
        default: throw KoszulError("graph index must be 1..4");
    }
}

inline KoszulMatrix upsilon_closure() {
    return close_with_arcs(build_upsilon(), {{"x1", "x4"}, {"x2", "x5"}, {"x3", "x6"}});
}

/// Open factorizations by name: gamma000..gamma111, gamma1..gamma4, upsilon,
/// S (two parallel strands).
inline std::optional<KoszulMatrix> named_open_matrix(const std::string& name) {
    if (name == "upsilon") return build_upsilon();
    if (name == "S") return koszul_of_graph(stacked_graph(2, {}, {}));
    if (name.size() == 8 && name.rfind("gamma", 0) == 0) {
        int d[3];
        for (int i = 0; i < 3; ++i) {
            char ch = name[5 + i];
            if (ch != '0' && ch != '1') return std::nullopt;
            d[i] = ch - '0';
        }
        return koszul_of_graph(gamma_ijk(d[0], d[1], d[2]));
    }
    if (name.size() == 6 && name.rfind("gamma", 0) == 0 && name[5] >= '1' && name[5] <= '4')
        return koszul_of_graph(reidemeister3_graph(name[5] - '0'));
    return std::nullopt;
}

/// Closed factorizations by name: circle, theta, upsilon-closure,
/// gamma1-closure..gamma4-closure.
inline std::optional<KoszulMatrix> named_closed_matrix(const std::string& name) {
    if (name == "circle") return koszul_of_graph(circle_graph());
    if (name == "theta") return koszul_of_graph(theta_graph());
    if (name == "upsilon-closure") return upsilon_closure();
    if (name.size() == 14 && name.rfind("gamma", 0) == 0 && name.substr(6) == "-closure" && name[5] >= '1' &&
        name[5] <= '4')
        return koszul_of_graph(close_graph(reidemeister3_graph(name[5] - '0'), 3));
    return std::nullopt;
}

}  // namespace trigrad
