#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gspace/enumerator.hpp"

namespace gspace {

// Counter machines: INC r / DECJZ r target / HALT over unbounded ℕ-valued
// registers. Register 0 carries input and output. Execution is
// deterministic; a program counter past the end halts.
struct Instruction {
  enum class Op : std::uint8_t { Inc, DecJz, Halt };
  Op op = Op::Halt;
  std::uint32_t reg = 0;
  std::uint32_t target = 0;
};

struct Program {
  std::vector<Instruction> code;
};

using MachineIndex = std::uint64_t;

// Total Gödel numbering: encode/decode are mutually inverse on well-formed
// programs and every natural number decodes to some program.
MachineIndex encode_program(const Program& p);
Program decode_program(MachineIndex n);

// Text format: instructions separated by '/' or newlines, e.g.
// "INC 0 / DECJZ 0 3 / HALT".
Program parse_program(const std::string& text);
std::string print_program(const Program& p);

struct RunResult {
  bool halted = false;
  std::uint64_t output = 0;  // register 0 at halt
  std::uint64_t steps = 0;   // steps executed (= halting step when halted)
};

RunResult run_bounded(const Program& p, std::uint64_t input,
                      std::uint64_t max_steps);
RunResult run_bounded(MachineIndex i, std::uint64_t input,
                      std::uint64_t max_steps);

// Incrementally resumable simulation, so a bit-indexed budget can grow
// without re-running from scratch.
class MachineRun {
 public:
  MachineRun(Program p, std::uint64_t input);
  // Extends the run to at most `steps` total steps; returns the halting step
  // if the machine has halted within the extended budget.
  std::optional<std::uint64_t> halted_by(std::uint64_t steps);
  std::uint64_t output() const { return regs_.empty() ? 0 : regs_[0]; }

 private:
  Program p_;
  std::vector<std::uint64_t> regs_;
  std::uint64_t pc_ = 0;
  std::uint64_t steps_ = 0;
  bool halted_ = false;
};

// Kleene's recursively inseparable pair: P = {n : machine n on input n halts
// with 0}, Q likewise with 1. Enumerated by the dovetail "stage t simulates
// indices 0..t for t steps each"; one enumerator quantum is one stage.
struct PqPair {
  Enumerator<std::uint64_t> p, q;
};
PqPair inseparable_pq();

// Gated families: while machine l runs, the base enumerations flow; if it
// halts at stage s, the streams freeze with the elements emitted so far.
PqPair pq_halting_family(MachineIndex l);
PqPair pq_halting_family(MachineIndex l, const PqPair& base);

// Increasing-extraction families: while machine l runs, elements are emitted
// in strictly increasing order (one per machine step); if it halts after k
// steps, the stream switches to enumerating base ∩ {0..last} unrestricted.
PqPair pq_nct_family(MachineIndex l);
PqPair pq_nct_family(MachineIndex l, const PqPair& base);

// Built-in indices for demos and tests.
MachineIndex looping_machine_index(int variant);      // never halts
MachineIndex halting_machine_index(std::uint64_t p);  // halts at step p exactly
MachineIndex constant_zero_index();  // computes 0 on every input
MachineIndex constant_one_index();   // computes 1 on every input

}  // namespace gspace
