#pragma once

#include "efekit/categorical.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace efekit {

/// One dimension of a JointTable: a named variable and its domain size.
struct Axis {
    std::string name;
    std::size_t size = 0;
};

/// Dense multi-dimensional probability table, row-major over its axes.
/// Invariants: entries >= 0; axis sizes multiply to values().size();
/// entries sum to 1 within kValidationTol when flagged normalized.
/// Rank-0 tables are allowed and hold a single scalar.
class JointTable {
public:
    JointTable(std::vector<Axis> axes, std::vector<double> values,
               bool normalized = false);

    /// Uniform helper used by builders: zero-filled table of the given shape.
    static JointTable zeros(std::vector<Axis> axes);

    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }
    bool normalized() const { return normalized_; }
    std::size_t rank() const { return axes_.size(); }

    /// Index of the named axis. Throws UnknownAxisError.
    std::size_t axis_index(const std::string& name) const;
    bool has_axis(const std::string& name) const;

    /// Row-major stride of axis i (product of the sizes of later axes).
    std::size_t stride(std::size_t axis) const;

    /// Flat offset of a full multi-index (one coordinate per axis).
    std::size_t flat_index(const std::vector<std::size_t>& multi) const;

    double total_mass() const;

    /// Validates the sum-to-one invariant and flips the normalized flag.
    JointTable& mark_normalized();

    /// Sums out all axes not in keep; preserves the original axis order.
    /// keep may be empty (rank-0 result holding the total mass).
    JointTable marginalize(const std::vector<std::string>& keep) const;

    /// Marginal over a single axis as a Categorical.
    Categorical marginal(const std::string& axis) const;

    /// Slices at the given (axis name, value index) assignments and
    /// renormalizes: P(remaining axes | assignment).
    /// Throws ZeroMassEventError when the sliced mass is zero.
    JointTable condition(
        const std::vector<std::pair<std::string, std::size_t>>& on) const;

    /// Mass of the slice selected by the assignments, without renormalizing.
    double slice_mass(
        const std::vector<std::pair<std::string, std::size_t>>& on) const;

private:
    std::vector<Axis> axes_;
    std::vector<double> values_;
    bool normalized_ = false;
};

} // namespace efekit
