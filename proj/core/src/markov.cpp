#include "gspace/markov.hpp"

#include <memory>
#include <mutex>

namespace gspace {

MarkedGroup diagonal_group(const GroupSequence& seq, MachineIndex l) {
  MarkedGroup lim = limit(seq);
  auto at = seq.at;
  auto regulator = seq.regulator;
  // Shared resumable run; write-idempotent, so query order cannot matter.
  struct Gate {
    std::mutex mu;
    MachineRun run;
    explicit Gate(MachineIndex l) : run(decode_program(l), 0) {}
    std::optional<std::uint64_t> halted_by(std::uint64_t n) {
      std::lock_guard<std::mutex> lock(mu);
      return run.halted_by(n);
    }
  };
  auto gate = std::make_shared<Gate>(l);
  std::string name = "diagonal(" + seq.name + "," + std::to_string(l) + ")";
  return MarkedGroup(seq.rank, name,
                     [gate, at, regulator, lim](const Word& w) {
                       std::uint64_t n = shortlex_index(w);
                       if (auto p = gate->halted_by(n)) {
                         return at(regulator(*p)).is_relation(w);
                       }
                       return lim.is_relation(w);
                     });
}

Verdict distinguish_semidecide(const MarkedGroup& g, const MarkedGroup& h,
                               std::uint64_t fuel) {
  if (g.rank() != h.rank()) {
    throw SpecError("distinguish: rank mismatch");
  }
  std::uint64_t spent = 0;
  for (std::uint64_t n = 0; spent + 2 <= fuel; ++n) {
    spent += 2;
    if (g.bit(n) != h.bit(n)) {
      nlohmann::json w;
      w["bit"] = n;
      w["word"] = print_word(shortlex_word(n, g.rank()));
      w["left"] = g.bit(n);
      w["right"] = h.bit(n);
      return Verdict::verified(std::move(w), spent);
    }
  }
  return Verdict::unknown(spent);
}

}  // namespace gspace
