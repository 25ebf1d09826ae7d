#pragma once

#include "efekit/dag.hpp"

#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

namespace efekit::testing {

/// Reachability-based separation check (Bayes ball). Independent of the
/// trail-enumeration implementation in the library.
inline bool bayes_ball_separated(const Dag& g,
                                 const std::vector<std::size_t>& x,
                                 const std::vector<std::size_t>& y,
                                 const std::vector<std::size_t>& s) {
    const std::size_t n = g.size();
    std::vector<bool> observed(n, false);
    for (std::size_t v : s) observed[v] = true;

    // Observed vertices and their ancestors; colliders bounce only here.
    std::vector<bool> anc(n, false);
    {
        std::deque<std::size_t> queue(s.begin(), s.end());
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            if (anc[v]) continue;
            anc[v] = true;
            for (std::size_t p : g.parents(v)) queue.push_back(p);
        }
    }

    std::vector<bool> is_y(n, false);
    for (std::size_t v : y) is_y[v] = true;

    // Direction encodes how the ball arrived: true means from a child
    // (travelling up), false means from a parent (travelling down).
    std::vector<bool> visited_up(n, false), visited_down(n, false);
    std::deque<std::pair<std::size_t, bool>> queue;
    for (std::size_t v : x) queue.emplace_back(v, true);

    while (!queue.empty()) {
        auto [v, up] = queue.front();
        queue.pop_front();
        auto& seen = up ? visited_up : visited_down;
        if (seen[v]) continue;
        seen[v] = true;
        if (is_y[v]) return false;
        if (up) {
            if (!observed[v]) {
                for (std::size_t p : g.parents(v)) queue.emplace_back(p, true);
                for (std::size_t c : g.children(v)) {
                    queue.emplace_back(c, false);
                }
            }
        } else {
            if (!observed[v]) {
                for (std::size_t c : g.children(v)) {
                    queue.emplace_back(c, false);
                }
            }
            if (anc[v]) {
                for (std::size_t p : g.parents(v)) queue.emplace_back(p, true);
            }
        }
    }
    return true;
}

} // namespace efekit::testing
