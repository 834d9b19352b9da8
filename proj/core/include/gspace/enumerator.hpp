#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace gspace {

// Single-consumer stateful stream. step() performs one deterministic quantum
// of work and may emit an element. Semi-decidable sources never signal
// exhaustion; callers bound the number of quanta.
template <typename T>
class Stream {
 public:
  virtual ~Stream() = default;
  virtual std::optional<T> step() = 0;
};

template <typename T>
class FunctionStream final : public Stream<T> {
 public:
  explicit FunctionStream(std::function<std::optional<T>()> f)
      : f_(std::move(f)) {}
  std::optional<T> step() override { return f_(); }

 private:
  std::function<std::optional<T>()> f_;
};

// Replayable enumerator: start() yields a fresh stream that replays the same
// emission sequence every time.
template <typename T>
struct Enumerator {
  std::function<std::unique_ptr<Stream<T>>()> start;

  std::unique_ptr<Stream<T>> begin_stream() const { return start(); }

  // First `count` emissions, giving up after `max_quanta` stream steps.
  std::vector<T> take(std::size_t count, std::uint64_t max_quanta) const {
    std::vector<T> out;
    auto s = start();
    for (std::uint64_t q = 0; q < max_quanta && out.size() < count; ++q) {
      if (auto e = s->step()) out.push_back(*e);
    }
    return out;
  }
};

template <typename T, typename F>
Enumerator<T> make_enumerator(F factory) {
  Enumerator<T> e;
  e.start = [factory]() -> std::unique_ptr<Stream<T>> {
    return std::make_unique<FunctionStream<T>>(factory());
  };
  return e;
}

// Enumerator over a fixed list (one element per quantum, then silent).
template <typename T>
Enumerator<T> list_enumerator(std::vector<T> items) {
  return make_enumerator<T>([items]() {
    auto idx = std::make_shared<std::size_t>(0);
    return [items, idx]() -> std::optional<T> {
      if (*idx >= items.size()) return std::nullopt;
      return items[(*idx)++];
    };
  });
}

}  // namespace gspace
