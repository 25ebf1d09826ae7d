#pragma once

#include "efekit/dag.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace efekit {

/// Undirected walk through the DAG: consecutive vertices joined by an
/// edge in either direction, no vertex repeated, length >= 2.
struct Trail {
    std::vector<std::size_t> vertices;
};

/// Throws InvalidTrailError unless trail is a simple connected trail in g.
void validate_trail(const Dag& g, const Trail& trail);

/// Whether the interior vertex at the given position has both trail
/// neighbors pointing into it.
bool is_collider(const Dag& g, const Trail& trail, std::size_t position);

/// A trail is blocked by s iff some interior collider is outside s with
/// no proper descendant in s, or some interior non-collider is in s.
/// Length-2 trails have no interior vertex and are never blocked.
bool trail_blocked(const Dag& g, const Trail& trail,
                   const std::vector<std::size_t>& s);

/// Separation verdict plus one unblocked trail as a witness when the
/// sets are not separated.
struct DsepResult {
    bool separated = true;
    std::optional<Trail> witness;
};

/// Exhaustive check over every simple trail between x and y.
/// x, y, s must be pairwise disjoint (OverlappingSetsError otherwise).
DsepResult d_separated_witness(const Dag& g, const std::vector<std::size_t>& x,
                               const std::vector<std::size_t>& y,
                               const std::vector<std::size_t>& s);

bool d_separated(const Dag& g, const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y,
                 const std::vector<std::size_t>& s);

} // namespace efekit
