#include "gspace/machines.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "gspace/words.hpp"

namespace gspace {

MachineIndex encode_program(const Program& p) {
  std::vector<std::uint64_t> items;
  for (const Instruction& ins : p.code) {
    switch (ins.op) {
      case Instruction::Op::Inc:
        items.push_back(cantor_pair(0, ins.reg));
        break;
      case Instruction::Op::DecJz:
        items.push_back(cantor_pair(1, cantor_pair(ins.reg, ins.target)));
        break;
      case Instruction::Op::Halt:
        items.push_back(cantor_pair(2, 0));
        break;
    }
  }
  return encode_list(items);
}

Program decode_program(MachineIndex n) {
  Program p;
  for (std::uint64_t item : decode_list(n)) {
    auto [op, arg] = cantor_unpair(item);
    Instruction ins;
    switch (op % 3) {
      case 0:
        ins.op = Instruction::Op::Inc;
        ins.reg = static_cast<std::uint32_t>(arg % (1u << 16));
        break;
      case 1: {
        auto [r, t] = cantor_unpair(arg);
        ins.op = Instruction::Op::DecJz;
        ins.reg = static_cast<std::uint32_t>(r % (1u << 16));
        ins.target = static_cast<std::uint32_t>(t % (1u << 16));
        break;
      }
      default:
        ins.op = Instruction::Op::Halt;
        break;
    }
    p.code.push_back(ins);
  }
  return p;
}

Program parse_program(const std::string& text) {
  Program p;
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), '/', '\n');
  std::stringstream ss(norm);
  std::string line;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    Instruction ins;
    if (op == "INC") {
      ins.op = Instruction::Op::Inc;
      if (!(ls >> ins.reg)) throw SpecError("INC needs a register");
    } else if (op == "DECJZ") {
      ins.op = Instruction::Op::DecJz;
      if (!(ls >> ins.reg >> ins.target)) {
        throw SpecError("DECJZ needs a register and a target");
      }
    } else if (op == "HALT") {
      ins.op = Instruction::Op::Halt;
    } else {
      throw SpecError("unknown instruction '" + op + "'");
    }
    p.code.push_back(ins);
  }
  return p;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const Instruction& ins : p.code) {
    if (!out.empty()) out += " / ";
    switch (ins.op) {
      case Instruction::Op::Inc:
        out += "INC " + std::to_string(ins.reg);
        break;
      case Instruction::Op::DecJz:
        out += "DECJZ " + std::to_string(ins.reg) + " " +
               std::to_string(ins.target);
        break;
      case Instruction::Op::Halt:
        out += "HALT";
        break;
    }
  }
  return out;
}

MachineRun::MachineRun(Program p, std::uint64_t input) : p_(std::move(p)) {
  regs_.assign(1, input);
}

std::optional<std::uint64_t> MachineRun::halted_by(std::uint64_t steps) {
  while (!halted_ && steps_ < steps) {
    if (pc_ >= p_.code.size()) {
      halted_ = true;
      break;
    }
    const Instruction& ins = p_.code[pc_];
    if (regs_.size() <= ins.reg) regs_.resize(ins.reg + 1, 0);
    ++steps_;
    switch (ins.op) {
      case Instruction::Op::Inc:
        ++regs_[ins.reg];
        ++pc_;
        break;
      case Instruction::Op::DecJz:
        if (regs_[ins.reg] == 0) {
          pc_ = ins.target;
        } else {
          --regs_[ins.reg];
          ++pc_;
        }
        break;
      case Instruction::Op::Halt:
        halted_ = true;
        break;
    }
  }
  if (!halted_ && pc_ >= p_.code.size()) halted_ = true;
  return halted_ ? std::optional<std::uint64_t>(steps_) : std::nullopt;
}

RunResult run_bounded(const Program& p, std::uint64_t input,
                      std::uint64_t max_steps) {
  MachineRun run(p, input);
  auto h = run.halted_by(max_steps);
  RunResult r;
  r.halted = h.has_value();
  r.steps = h.value_or(max_steps);
  r.output = run.output();
  return r;
}

RunResult run_bounded(MachineIndex i, std::uint64_t input,
                      std::uint64_t max_steps) {
  return run_bounded(decode_program(i), input, max_steps);
}

// --- dovetail enumerations ---------------------------------------------------

namespace {

// Dovetail over all machine indices on their own index as input: stage t
// advances machines 0..t to budget t. Emissions in ascending index order
// within a stage.
struct Dovetail {
  std::uint64_t stage = 0;
  std::vector<MachineRun> runs;
  std::vector<bool> done;

  // Output value -> indices halting with that value at this stage.
  std::vector<std::pair<MachineIndex, std::uint64_t>> advance_stage() {
    ++stage;
    while (runs.size() <= stage) {
      MachineIndex i = runs.size();
      runs.emplace_back(decode_program(i), i);
      done.push_back(false);
    }
    std::vector<std::pair<MachineIndex, std::uint64_t>> emitted;
    for (MachineIndex i = 0; i <= stage; ++i) {
      if (done[i]) continue;
      if (auto h = runs[i].halted_by(stage)) {
        done[i] = true;
        emitted.emplace_back(i, runs[i].output());
      }
    }
    return emitted;
  }
};

Enumerator<std::uint64_t> dovetail_enumerator(std::uint64_t wanted_output) {
  return make_enumerator<std::uint64_t>([wanted_output]() {
    auto dt = std::make_shared<Dovetail>();
    auto pending = std::make_shared<std::vector<MachineIndex>>();
    return [dt, pending, wanted_output]() -> std::optional<std::uint64_t> {
      if (!pending->empty()) {
        MachineIndex i = pending->front();
        pending->erase(pending->begin());
        return i;
      }
      for (auto [i, out] : dt->advance_stage()) {
        if (out == wanted_output) pending->push_back(i);
      }
      if (!pending->empty()) {
        MachineIndex i = pending->front();
        pending->erase(pending->begin());
        return i;
      }
      return std::nullopt;
    };
  });
}

}  // namespace

PqPair inseparable_pq() {
  return {dovetail_enumerator(0), dovetail_enumerator(1)};
}

namespace {

Enumerator<std::uint64_t> gate_by_machine(Enumerator<std::uint64_t> base,
                                          MachineIndex l) {
  return make_enumerator<std::uint64_t>([base, l]() {
    struct State {
      std::unique_ptr<Stream<std::uint64_t>> stream;
      MachineRun gate;
      std::uint64_t stage = 0;
      bool frozen = false;
      State(const Enumerator<std::uint64_t>& b, MachineIndex l)
          : stream(b.begin_stream()), gate(decode_program(l), 0) {}
    };
    auto st = std::make_shared<State>(base, l);
    return [st]() -> std::optional<std::uint64_t> {
      if (st->frozen) return std::nullopt;
      ++st->stage;
      if (st->gate.halted_by(st->stage)) {
        st->frozen = true;
        return std::nullopt;
      }
      return st->stream->step();
    };
  });
}

Enumerator<std::uint64_t> increasing_extraction(Enumerator<std::uint64_t> base,
                                                MachineIndex l) {
  return make_enumerator<std::uint64_t>([base, l]() {
    struct State {
      std::unique_ptr<Stream<std::uint64_t>> stream;
      MachineRun gate;
      bool halted = false;
      bool have_last = false;
      std::uint64_t last = 0;        // f̂(k-1), the bound after halting
      std::unique_ptr<Stream<std::uint64_t>> tail;  // phase-2 re-enumeration
      std::vector<std::uint64_t> emitted;
      State(const Enumerator<std::uint64_t>& b, MachineIndex l)
          : stream(b.begin_stream()), gate(decode_program(l), 0) {}
    };
    auto st = std::make_shared<State>(base, l);
    auto base_copy = base;
    return [st, base_copy]() -> std::optional<std::uint64_t> {
      if (st->halted) {
        // enumerate base ∩ {0..last} via the unrestricted enumerator
        if (!st->have_last) return std::nullopt;  // froze before any emission
        if (!st->tail) st->tail = base_copy.begin_stream();
        if (auto e = st->tail->step()) {
          if (*e <= st->last &&
              std::find(st->emitted.begin(), st->emitted.end(), *e) ==
                  st->emitted.end()) {
            st->emitted.push_back(*e);
            return *e;
          }
        }
        return std::nullopt;
      }
      // One quantum: scan the base stream for the next element above `last`.
      // The gate machine runs one step per emission, so a machine halting at
      // step k lets exactly k increasing elements through.
      if (auto e = st->stream->step()) {
        if (!st->have_last || *e > st->last) {
          if (st->gate.halted_by(st->emitted.size())) {
            st->halted = true;
            return std::nullopt;
          }
          st->last = *e;
          st->have_last = true;
          st->emitted.push_back(*e);
          return *e;
        }
      }
      return std::nullopt;
    };
  });
}

}  // namespace

PqPair pq_halting_family(MachineIndex l, const PqPair& base) {
  return {gate_by_machine(base.p, l), gate_by_machine(base.q, l)};
}

PqPair pq_halting_family(MachineIndex l) {
  return pq_halting_family(l, inseparable_pq());
}

PqPair pq_nct_family(MachineIndex l, const PqPair& base) {
  return {increasing_extraction(base.p, l), increasing_extraction(base.q, l)};
}

PqPair pq_nct_family(MachineIndex l) {
  return pq_nct_family(l, inseparable_pq());
}

// --- built-ins ----------------------------------------------------------------

MachineIndex looping_machine_index(int variant) {
  // DECJZ on an always-zero register jumps to itself forever; padding with
  // leading INCs on a scratch register yields distinct indices.
  Program p;
  for (int i = 0; i < variant; ++i) {
    p.code.push_back({Instruction::Op::Inc, 7, 0});
  }
  std::uint32_t self = static_cast<std::uint32_t>(variant);
  p.code.push_back({Instruction::Op::DecJz, 6, self});
  return encode_program(p);
}

MachineIndex halting_machine_index(std::uint64_t steps) {
  if (steps < 1) throw SpecError("halting_machine_index requires steps >= 1");
  Program p;
  for (std::uint64_t i = 0; i + 1 < steps; ++i) {
    p.code.push_back({Instruction::Op::Inc, 7, 0});
  }
  p.code.push_back({Instruction::Op::Halt, 0, 0});
  return encode_program(p);
}

MachineIndex constant_zero_index() {
  // Zero register 0 in a two-instruction loop, then fall off the end.
  Program p;
  p.code.push_back({Instruction::Op::DecJz, 0, 2});
  p.code.push_back({Instruction::Op::DecJz, 1, 0});
  return encode_program(p);
}

MachineIndex constant_one_index() {
  Program p;
  p.code.push_back({Instruction::Op::DecJz, 0, 2});
  p.code.push_back({Instruction::Op::DecJz, 1, 0});
  p.code.push_back({Instruction::Op::Inc, 0, 0});
  return encode_program(p);
}

}  // namespace gspace
