#include "efekit/dsep.hpp"

#include "efekit/errors.hpp"

#include <algorithm>
#include <string>

namespace efekit {

namespace {

void check_disjoint(const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b, const char* what) {
    for (std::size_t u : a) {
        if (std::find(b.begin(), b.end(), u) != b.end()) {
            throw OverlappingSetsError(std::string("query sets overlap: ") +
                                       what);
        }
    }
}

} // namespace

void validate_trail(const Dag& g, const Trail& trail) {
    const auto& v = trail.vertices;
    if (v.size() < 2) {
        throw InvalidTrailError("trail needs at least two vertices");
    }
    for (std::size_t u : v) {
        if (u >= g.size()) {
            throw InvalidTrailError("trail vertex out of range");
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) {
                throw InvalidTrailError("trail repeats vertex '" +
                                        g.name(v[i]) + "'");
            }
        }
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!g.has_edge(v[i], v[i + 1]) && !g.has_edge(v[i + 1], v[i])) {
            throw InvalidTrailError("trail vertices '" + g.name(v[i]) +
                                    "' and '" + g.name(v[i + 1]) +
                                    "' are not adjacent");
        }
    }
}

bool is_collider(const Dag& g, const Trail& trail, std::size_t position) {
    const auto& v = trail.vertices;
    if (position == 0 || position + 1 >= v.size()) return false;
    return g.has_edge(v[position - 1], v[position]) &&
           g.has_edge(v[position + 1], v[position]);
}

bool trail_blocked(const Dag& g, const Trail& trail,
                   const std::vector<std::size_t>& s) {
    validate_trail(g, trail);
    auto in_s = [&](std::size_t u) {
        return std::find(s.begin(), s.end(), u) != s.end();
    };

    const auto& v = trail.vertices;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (is_collider(g, trail, i)) {
            if (in_s(v[i])) continue;
            std::vector<bool> desc = g.proper_descendants(v[i]);
            bool descendant_observed = false;
            for (std::size_t u : s) {
                if (desc[u]) {
                    descendant_observed = true;
                    break;
                }
            }
            if (!descendant_observed) return true;
        } else {
            if (in_s(v[i])) return true;
        }
    }
    return false;
}

DsepResult d_separated_witness(const Dag& g, const std::vector<std::size_t>& x,
                               const std::vector<std::size_t>& y,
                               const std::vector<std::size_t>& s) {
    check_disjoint(x, y, "x and y");
    check_disjoint(x, s, "x and s");
    check_disjoint(y, s, "y and s");
    for (std::size_t u : x) {
        if (u >= g.size()) throw UnknownVertexError("x vertex out of range");
    }
    for (std::size_t u : y) {
        if (u >= g.size()) throw UnknownVertexError("y vertex out of range");
    }
    for (std::size_t u : s) {
        if (u >= g.size()) throw UnknownVertexError("s vertex out of range");
    }

    std::vector<bool> is_target(g.size(), false);
    for (std::size_t v : y) is_target[v] = true;

    // Depth-first enumeration of simple trails from each source; a trail
    // is reported as soon as it reaches any target unblocked.
    std::vector<bool> on_trail(g.size(), false);
    std::vector<std::size_t> current;
    DsepResult result;

    auto extend = [&](auto&& self, std::size_t v) -> bool {
        on_trail[v] = true;
        current.push_back(v);
        if (is_target[v] && current.size() >= 2) {
            Trail trail{current};
            if (!trail_blocked(g, trail, s)) {
                result.separated = false;
                result.witness = std::move(trail);
                on_trail[v] = false;
                current.pop_back();
                return true;
            }
        } else if (!is_target[v]) {
            for (std::size_t next : g.neighbors(v)) {
                if (on_trail[next]) continue;
                if (self(self, next)) {
                    on_trail[v] = false;
                    current.pop_back();
                    return true;
                }
            }
        }
        on_trail[v] = false;
        current.pop_back();
        return false;
    };

    for (std::size_t source : x) {
        if (extend(extend, source)) return result;
    }
    return result;
}

bool d_separated(const Dag& g, const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y,
                 const std::vector<std::size_t>& s) {
    return d_separated_witness(g, x, y, s).separated;
}

} // namespace efekit
