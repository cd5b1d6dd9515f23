#pragma once

// Core enumeration vocabulary: parameterized instances, pull-based solution
// streams, per-solution delay profiles, and the enum-kernel combinator that
// turns a kernelization with an expansion map into a bounded-delay enumerator.

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fptenum/errors.hpp"

namespace fptenum {

// An instance x together with its parameter and its size |x|.
template <class Payload>
class ParamInstance {
 public:
  ParamInstance(Payload payload, std::size_t parameter, std::size_t size)
      : payload_(std::move(payload)), parameter_(parameter), size_(size) {}

  const Payload& payload() const noexcept { return payload_; }
  std::size_t parameter() const noexcept { return parameter_; }
  std::size_t size() const noexcept { return size_; }

 private:
  Payload payload_;
  std::size_t parameter_;
  std::size_t size_;
};

// Pull-based, single-consumer stream of solutions. next() returns nullopt
// once the stream is exhausted and keeps doing so afterwards.
template <class T>
class SolutionStream {
 public:
  using value_type = T;
  using Pull = std::function<std::optional<T>()>;

  SolutionStream() = default;
  explicit SolutionStream(Pull pull) : pull_(std::move(pull)) {}

  static SolutionStream empty() { return SolutionStream(); }

  static SolutionStream from_vector(std::vector<T> items) {
    auto state = std::make_shared<std::pair<std::vector<T>, std::size_t>>(std::move(items), 0);
    return SolutionStream([state]() -> std::optional<T> {
      auto& [vec, pos] = *state;
      if (pos == vec.size()) return std::nullopt;
      return std::move(vec[pos++]);
    });
  }

  std::optional<T> next() {
    if (!pull_) return std::nullopt;
    auto item = pull_();
    if (!item) pull_ = nullptr;
    return item;
  }

  bool exhausted() const noexcept { return !pull_; }

  std::vector<T> collect() {
    std::vector<T> out;
    while (auto item = next()) out.push_back(std::move(*item));
    return out;
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = T;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(SolutionStream* stream) : stream_(stream) { ++*this; }

    const T& operator*() const { return *current_; }
    const T* operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = stream_->next();
      if (!current_) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.stream_ == nullptr; }

   private:
    SolutionStream* stream_ = nullptr;
    std::optional<T> current_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  Pull pull_;
};

// Concatenation of streams produced on demand, one after the other.
template <class T>
SolutionStream<T> chain(std::function<std::optional<SolutionStream<T>>()> next_stream) {
  struct State {
    std::function<std::optional<SolutionStream<T>>()> source;
    SolutionStream<T> current;
  };
  auto state = std::make_shared<State>(State{std::move(next_stream), SolutionStream<T>()});
  return SolutionStream<T>([state]() -> std::optional<T> {
    for (;;) {
      if (auto item = state->current.next()) return item;
      auto upcoming = state->source();
      if (!upcoming) return std::nullopt;
      state->current = std::move(*upcoming);
    }
  });
}

// Delays of one enumeration run, in nanoseconds of a monotonic clock.
// delays()[0] is the precalculation time, delays()[i] the time between the
// i-th and (i+1)-th output, delays()[n] the postcalculation time. With n = 0
// the single entry is both precalculation and postcalculation.
class DelayProfile {
 public:
  using duration = std::chrono::nanoseconds;

  explicit DelayProfile(std::vector<duration> delays) : delays_(std::move(delays)) {
    if (delays_.empty()) throw PreconditionError("delay profile needs at least one duration");
    for (auto d : delays_)
      if (d.count() < 0) throw PreconditionError("negative delay in profile");
  }

  std::size_t solution_count() const noexcept { return delays_.size() - 1; }
  std::span<const duration> delays() const noexcept { return delays_; }
  duration precalc() const noexcept { return delays_.front(); }
  duration postcalc() const noexcept { return delays_.back(); }

  // Inter-solution gaps only (neither precalculation nor postcalculation).
  std::span<const duration> gaps() const noexcept {
    if (delays_.size() < 3) return {};
    return std::span<const duration>(delays_).subspan(1, delays_.size() - 2);
  }

  duration max_gap() const noexcept {
    auto g = gaps();
    return g.empty() ? duration::zero() : *std::ranges::max_element(g);
  }

  duration max_delay() const noexcept { return *std::ranges::max_element(delays_); }

 private:
  std::vector<duration> delays_;
};

template <class T>
struct ProfiledRun {
  std::vector<T> solutions;
  DelayProfile profile;
};

// Runs factory(instance) to exhaustion, handing each solution to sink.
// Time spent inside sink is excluded from the recorded delays. Stream
// construction counts towards the precalculation time.
template <class Payload, class Factory, class Sink>
  requires std::invocable<Factory&, const ParamInstance<Payload>&>
DelayProfile profile_stream(Factory&& factory, const ParamInstance<Payload>& instance, Sink&& sink) {
  using clock = std::chrono::steady_clock;
  std::vector<DelayProfile::duration> delays;
  auto mark = clock::now();
  auto stream = std::invoke(factory, instance);
  for (;;) {
    auto item = stream.next();
    auto now = clock::now();
    delays.push_back(std::chrono::duration_cast<DelayProfile::duration>(now - mark));
    if (!item) break;
    std::invoke(sink, std::move(*item));
    mark = clock::now();
  }
  return DelayProfile(std::move(delays));
}

template <class Payload, class Factory>
  requires std::invocable<Factory&, const ParamInstance<Payload>&>
auto run_with_profile(Factory&& factory, const ParamInstance<Payload>& instance) {
  using Stream = std::invoke_result_t<Factory&, const ParamInstance<Payload>&>;
  using T = typename Stream::value_type;
  std::vector<T> solutions;
  auto profile = profile_stream(factory, instance, [&](T&& s) { solutions.push_back(std::move(s)); });
  return ProfiledRun<T>{std::move(solutions), std::move(profile)};
}

// Records the search tree of a guarded backtracking enumerator: one node per
// entered branch, with the number of solutions emitted inside its subtree.
class SearchTrace {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  std::size_t enter(std::size_t parent) {
    parent_.push_back(parent);
    emissions_.push_back(0);
    return parent_.size() - 1;
  }

  void emit(std::size_t node) {
    for (auto n = node; n != kNoParent; n = parent_[n]) ++emissions_[n];
  }

  std::size_t nodes() const noexcept { return parent_.size(); }
  std::size_t emissions(std::size_t node) const { return emissions_.at(node); }

  // Nodes whose subtree produced nothing.
  std::size_t dead_branches() const {
    return static_cast<std::size_t>(std::ranges::count(emissions_, std::size_t{0}));
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> emissions_;
};

// The (K, h, f, A_f) contract of an enum-kernelization.
//   kernelize      x -> K(x), polynomial time
//   kernel_size    |K(x)| in the problem's own size measure
//   size_bound     h(parameter); kernel_size must never exceed it
//   kernel_solver  Sol(K(x)), exhaustively
//   expander       (x, K(x), w) -> stream of f(x, w)
// Expanders of distinct kernel solutions must be disjoint and jointly cover
// Sol(x).
template <class Payload, class Kernel, class KernelSolution, class Solution>
struct EnumKernelizer {
  using instance_type = ParamInstance<Payload>;

  std::function<Kernel(const instance_type&)> kernelize;
  std::function<std::size_t(const Kernel&)> kernel_size;
  std::function<std::size_t(std::size_t)> size_bound;
  std::function<std::vector<KernelSolution>(const Kernel&)> kernel_solver;
  std::function<SolutionStream<Solution>(const instance_type&, const Kernel&, const KernelSolution&)> expander;
};

// A solution together with the position of the kernel solution whose
// expansion produced it.
template <class Solution>
struct Tagged {
  std::size_t kernel_index;
  Solution solution;
};

// Computes K(x) and Sol(K(x)) on the first pull, then runs the expander for
// each kernel solution in ascending order. Kernel solutions are deduplicated.
template <class Payload, class Kernel, class KernelSolution, class Solution>
  requires std::totally_ordered<KernelSolution>
SolutionStream<Tagged<Solution>> kernel_enumerate_tagged(
    EnumKernelizer<Payload, Kernel, KernelSolution, Solution> kz, ParamInstance<Payload> instance) {
  struct State {
    EnumKernelizer<Payload, Kernel, KernelSolution, Solution> kz;
    ParamInstance<Payload> instance;
    std::optional<Kernel> kernel;
    std::vector<KernelSolution> kernel_solutions;
    std::size_t next_index = 0;
  };
  auto state = std::make_shared<State>(State{std::move(kz), std::move(instance), std::nullopt, {}, 0});

  return chain<Tagged<Solution>>([state]() -> std::optional<SolutionStream<Tagged<Solution>>> {
    if (!state->kernel) {
      state->kernel = state->kz.kernelize(state->instance);
      auto size = state->kz.kernel_size(*state->kernel);
      auto bound = state->kz.size_bound(state->instance.parameter());
      if (size > bound)
        throw KernelBudgetExceeded("kernel size " + std::to_string(size) + " exceeds bound " + std::to_string(bound));
      auto sols = state->kz.kernel_solver(*state->kernel);
      std::ranges::sort(sols);
      auto dup = std::ranges::unique(sols);
      sols.erase(dup.begin(), dup.end());
      state->kernel_solutions = std::move(sols);
    }
    if (state->next_index == state->kernel_solutions.size()) return std::nullopt;
    std::size_t index = state->next_index++;
    auto inner = std::make_shared<SolutionStream<Solution>>(
        state->kz.expander(state->instance, *state->kernel, state->kernel_solutions[index]));
    return SolutionStream<Tagged<Solution>>([inner, index]() -> std::optional<Tagged<Solution>> {
      auto s = inner->next();
      if (!s) return std::nullopt;
      return Tagged<Solution>{index, std::move(*s)};
    });
  });
}

template <class Payload, class Kernel, class KernelSolution, class Solution>
  requires std::totally_ordered<KernelSolution>
SolutionStream<Solution> kernel_enumerate(EnumKernelizer<Payload, Kernel, KernelSolution, Solution> kz,
                                          ParamInstance<Payload> instance) {
  auto tagged = std::make_shared<SolutionStream<Tagged<Solution>>>(
      kernel_enumerate_tagged(std::move(kz), std::move(instance)));
  return SolutionStream<Solution>([tagged]() -> std::optional<Solution> {
    auto t = tagged->next();
    if (!t) return std::nullopt;
    return std::move(t->solution);
  });
}

}  // namespace fptenum
