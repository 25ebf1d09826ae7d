#include "efekit/joint_table.hpp"

#include "efekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace efekit {

namespace {

std::size_t shape_product(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const Axis& a : axes) n *= a.size;
    return n;
}

} // namespace

JointTable::JointTable(std::vector<Axis> axes, std::vector<double> values,
                       bool normalized)
    : axes_(std::move(axes)), values_(std::move(values)),
      normalized_(normalized) {
    for (const Axis& a : axes_) {
        if (a.size == 0) {
            throw InvalidDistributionError("axis '" + a.name + "' has size 0");
        }
    }
    if (values_.size() != shape_product(axes_)) {
        std::ostringstream msg;
        msg << "value array length " << values_.size()
            << " does not match axis shape product " << shape_product(axes_);
        throw LengthMismatchError(msg.str());
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0.0) {
            std::ostringstream msg;
            msg << "negative entry " << values_[i] << " at flat index " << i;
            throw NegativeWeightError(msg.str());
        }
    }
    if (normalized_ && std::abs(total_mass() - 1.0) > kValidationTol) {
        std::ostringstream msg;
        msg << "normalized table has mass " << total_mass();
        throw InvalidDistributionError(msg.str());
    }
}

JointTable JointTable::zeros(std::vector<Axis> axes) {
    std::size_t n = shape_product(axes);
    return JointTable(std::move(axes), std::vector<double>(n, 0.0), false);
}

std::size_t JointTable::axis_index(const std::string& name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].name == name) return i;
    }
    throw UnknownAxisError("unknown axis '" + name + "'");
}

bool JointTable::has_axis(const std::string& name) const {
    return std::any_of(axes_.begin(), axes_.end(),
                       [&](const Axis& a) { return a.name == name; });
}

std::size_t JointTable::stride(std::size_t axis) const {
    std::size_t s = 1;
    for (std::size_t i = axis + 1; i < axes_.size(); ++i) s *= axes_[i].size;
    return s;
}

std::size_t JointTable::flat_index(const std::vector<std::size_t>& multi) const {
    if (multi.size() != axes_.size()) {
        throw LengthMismatchError("multi-index rank does not match table rank");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < multi.size(); ++i) {
        flat = flat * axes_[i].size + multi[i];
    }
    return flat;
}

double JointTable::total_mass() const {
    double total = 0.0;
    for (double v : values_) total += v;
    return total;
}

JointTable& JointTable::mark_normalized() {
    if (std::abs(total_mass() - 1.0) > kValidationTol) {
        std::ostringstream msg;
        msg << "cannot mark normalized: mass is " << total_mass();
        throw InvalidDistributionError(msg.str());
    }
    normalized_ = true;
    return *this;
}

JointTable JointTable::marginalize(const std::vector<std::string>& keep) const {
    std::vector<bool> kept(axes_.size(), false);
    for (const std::string& name : keep) kept[axis_index(name)] = true;

    std::vector<Axis> out_axes;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (kept[i]) out_axes.push_back(axes_[i]);
    }

    // Row-major strides of the kept axes within the output table.
    std::vector<std::size_t> out_stride(axes_.size(), 0);
    {
        std::size_t s = 1;
        for (std::size_t i = axes_.size(); i-- > 0;) {
            if (kept[i]) {
                out_stride[i] = s;
                s *= axes_[i].size;
            }
        }
    }

    JointTable out = JointTable::zeros(std::move(out_axes));
    std::vector<double>& acc = out.mutable_values();

    std::vector<std::size_t> multi(axes_.size(), 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        std::size_t out_flat = 0;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            if (kept[i]) out_flat += multi[i] * out_stride[i];
        }
        acc[out_flat] += values_[flat];
        for (std::size_t i = axes_.size(); i-- > 0;) {
            if (++multi[i] < axes_[i].size) break;
            multi[i] = 0;
        }
    }
    if (normalized_) out.normalized_ = true;
    return out;
}

Categorical JointTable::marginal(const std::string& axis) const {
    JointTable m = marginalize({axis});
    return Categorical(m.values());
}

double JointTable::slice_mass(
    const std::vector<std::pair<std::string, std::size_t>>& on) const {
    std::vector<long long> fixed(axes_.size(), -1);
    for (const auto& [name, value] : on) {
        std::size_t idx = axis_index(name);
        if (value >= axes_[idx].size) {
            std::ostringstream msg;
            msg << "assignment " << name << "=" << value << " out of range";
            throw LengthMismatchError(msg.str());
        }
        fixed[idx] = static_cast<long long>(value);
    }
    double mass = 0.0;
    std::vector<std::size_t> multi(axes_.size(), 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        bool match = true;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            if (fixed[i] >= 0 && multi[i] != static_cast<std::size_t>(fixed[i])) {
                match = false;
                break;
            }
        }
        if (match) mass += values_[flat];
        for (std::size_t i = axes_.size(); i-- > 0;) {
            if (++multi[i] < axes_[i].size) break;
            multi[i] = 0;
        }
    }
    return mass;
}

JointTable JointTable::condition(
    const std::vector<std::pair<std::string, std::size_t>>& on) const {
    std::vector<long long> fixed(axes_.size(), -1);
    for (const auto& [name, value] : on) {
        std::size_t idx = axis_index(name);
        if (value >= axes_[idx].size) {
            std::ostringstream msg;
            msg << "assignment " << name << "=" << value << " out of range";
            throw LengthMismatchError(msg.str());
        }
        fixed[idx] = static_cast<long long>(value);
    }

    std::vector<Axis> out_axes;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (fixed[i] < 0) out_axes.push_back(axes_[i]);
    }

    // Walk only the selected slice: offset of the fixed coordinates plus an
    // odometer over the free axes.
    std::size_t base = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (fixed[i] >= 0) {
            base += static_cast<std::size_t>(fixed[i]) * stride(i);
        }
    }
    std::vector<std::size_t> free_axes;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (fixed[i] < 0) free_axes.push_back(i);
    }

    std::size_t slice_size = 1;
    for (std::size_t i : free_axes) slice_size *= axes_[i].size;

    std::vector<double> slice(slice_size, 0.0);
    std::vector<std::size_t> multi(free_axes.size(), 0);
    double mass = 0.0;
    for (std::size_t out = 0; out < slice_size; ++out) {
        std::size_t flat = base;
        for (std::size_t k = 0; k < free_axes.size(); ++k) {
            flat += multi[k] * stride(free_axes[k]);
        }
        slice[out] = values_[flat];
        mass += values_[flat];
        for (std::size_t k = free_axes.size(); k-- > 0;) {
            if (++multi[k] < axes_[free_axes[k]].size) break;
            multi[k] = 0;
        }
    }

    if (mass <= 0.0) {
        throw ZeroMassEventError("conditioning event has zero probability");
    }
    for (double& v : slice) v /= mass;
    return JointTable(std::move(out_axes), std::move(slice), true);
}

} // namespace efekit
