#pragma once

#include <cstdint>

#include "gspace/machines.hpp"
#include "gspace/oracle.hpp"
#include "gspace/verdict.hpp"

namespace gspace {

// The diagonalization behind every undecidability demonstration here: bit n
// of the result is bit n of the sequence limit while machine l is still
// running after n steps, and bit n of at(regulator(p)) once l has halted at
// step p <= n. Coherent because d(at(regulator(p)), limit) <= 2^-p forces
// agreement on bits 0..p-1. The machine budget is keyed to the shortlex bit
// index, which makes that agreement argument exact.
MarkedGroup diagonal_group(const GroupSequence& seq, MachineIndex l);

// Semi-decides that two oracles differ: Verified carries the first
// disagreeing bit index. Never Refuted. One fuel per oracle query.
Verdict distinguish_semidecide(const MarkedGroup& g, const MarkedGroup& h,
                               std::uint64_t fuel);

}  // namespace gspace
