#pragma once

namespace efekit {

/// Execution mode for the bulk kernels (joint-table fills, policy sweeps).
/// Serial and parallel paths produce bit-identical results: each output
/// cell is written by exactly one iteration and there are no cross-thread
/// reductions.
enum class Exec {
    serial,
    parallel,
};

} // namespace efekit
