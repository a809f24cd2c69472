#pragma once

/// @file problems.hpp
/// Benchmark problems with patch-based incremental evaluation: OneMax and
/// planted random MAX-3SAT.

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fastga/bitstring.hpp"
#include "fastga/random.hpp"

namespace fastga {

using Fitness = std::int64_t;

/// Incrementally evaluated search state, as consumed by the algorithms.
///
/// `evaluate` returns the fitness of `current() XOR patch` without changing
/// anything observable; `commit` applies the patch and adopts the fitness
/// previously returned by `evaluate` for the same patch.
template <class S>
concept FitnessState = requires(S& s, const S& cs, PatchView p, Fitness f) {
  { cs.size() } -> std::convertible_to<std::size_t>;
  { cs.fitness() } -> std::convertible_to<Fitness>;
  { cs.optimum() } -> std::convertible_to<Fitness>;
  { cs.current() } -> std::convertible_to<const BitString&>;
  { cs.evaluate(p) } -> std::convertible_to<Fitness>;
  s.commit(p, f);
};

// ---------------------------------------------------------------- OneMax

Fitness onemax_eval(const BitString& x) noexcept;

class OneMaxState {
 public:
  explicit OneMaxState(BitString start);

  std::size_t size() const noexcept { return current_.size(); }
  Fitness fitness() const noexcept { return fitness_; }
  Fitness optimum() const noexcept { return static_cast<Fitness>(current_.size()); }
  const BitString& current() const noexcept { return current_; }

  /// O(|patch|). Throws std::invalid_argument on an out-of-range index.
  Fitness evaluate(PatchView patch) const;
  void commit(PatchView patch, Fitness new_fitness);

  /// True iff the cached fitness matches a full recount.
  bool check_invariants() const;

 private:
  BitString current_;
  Fitness fitness_;
};

// ------------------------------------------------------------- MAX-3SAT

/// Three distinct variables with their literal signs (true = positive).
struct Clause {
  std::array<BitIndex, 3> vars{};
  std::array<bool, 3> positive{};

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// One appearance of a variable in a clause, packed as (clause << 1) | sign.
struct Occurrence {
  std::uint32_t packed;

  std::uint32_t clause() const noexcept { return packed >> 1; }
  bool positive() const noexcept { return (packed & 1U) != 0; }
};

/// One appearance of a variable together with the other two literals of its
/// clause: bits [0,29) and [29,58) hold the other variables; bits 58, 59 and
/// 60 are set when the variable itself, the first and the second other
/// literal are negated.
struct LiteralContext {
  std::uint64_t packed;

  static constexpr unsigned kVarBits = 29;
  static constexpr std::uint64_t kVarMask = (std::uint64_t{1} << kVarBits) - 1;

  BitIndex first() const noexcept { return static_cast<BitIndex>(packed & kVarMask); }
  BitIndex second() const noexcept { return static_cast<BitIndex>((packed >> kVarBits) & kVarMask); }
  bool own_positive() const noexcept { return ((packed >> 58) & 1U) == 0; }
  bool first_positive() const noexcept { return ((packed >> 59) & 1U) == 0; }
  bool second_positive() const noexcept { return ((packed >> 60) & 1U) == 0; }
};

/// Immutable 3-CNF formula with a per-variable occurrence index.
class SatInstance {
 public:
  /// Largest supported variable count.
  static constexpr std::size_t kMaxVars = std::size_t{1} << LiteralContext::kVarBits;

  /// Throws std::invalid_argument if n < 3 or n > kMaxVars, a clause repeats
  /// a variable, a variable is out of range, or a clause is all-negative
  /// (unsatisfied by the all-ones assignment).
  SatInstance(std::size_t n, std::vector<Clause> clauses);

  std::size_t num_vars() const noexcept { return n_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  std::span<const Clause> clauses() const noexcept { return clauses_; }
  std::span<const Occurrence> occurrences(BitIndex var) const noexcept {
    return {occ_.data() + occ_offset_[var], occ_.data() + occ_offset_[var + 1]};
  }
  /// Same order as occurrences(var).
  std::span<const LiteralContext> contexts(BitIndex var) const noexcept {
    return {ctx_.data() + occ_offset_[var], ctx_.data() + occ_offset_[var + 1]};
  }

 private:
  std::size_t n_;
  std::vector<Clause> clauses_;
  std::vector<std::size_t> occ_offset_;
  std::vector<Occurrence> occ_;
  std::vector<LiteralContext> ctx_;
};

/// Number of clauses used for n variables: round(4 n ln n).
std::size_t planted_clause_count(std::size_t n);

/// Planted random instance with round(4 n ln n) clauses satisfied by all-ones.
/// Throws std::invalid_argument if n < 3.
SatInstance generate_sat_instance(std::size_t n, Rng& rng);

/// Number of satisfied clauses. Throws std::invalid_argument on size mismatch.
Fitness maxsat_eval(const SatInstance& inst, const BitString& x);

class MaxSatState {
 public:
  /// Throws std::invalid_argument if the string length differs from the
  /// instance's variable count.
  MaxSatState(std::shared_ptr<const SatInstance> instance, BitString start);

  std::size_t size() const noexcept { return current_.size(); }
  Fitness fitness() const noexcept { return fitness_; }
  Fitness optimum() const noexcept { return static_cast<Fitness>(instance_->num_clauses()); }
  const BitString& current() const noexcept { return current_; }
  const SatInstance& instance() const noexcept { return *instance_; }
  /// Number of true literals per clause under current().
  std::span<const std::uint8_t> satisfied_literals() const noexcept { return sat_count_; }

  /// O(sum of occurrence-list lengths of the patched variables).
  /// Throws std::invalid_argument on an out-of-range index.
  Fitness evaluate(PatchView patch) const;
  void commit(PatchView patch, Fitness new_fitness);

  /// True iff the cached counts and fitness match a from-scratch recount.
  bool check_invariants() const;

 private:
  std::shared_ptr<const SatInstance> instance_;
  BitString current_;
  std::vector<std::uint8_t> sat_count_;
  Fitness fitness_ = 0;
  // Evaluation scratch: membership bitset of the patch being evaluated.
  mutable std::vector<std::uint64_t> in_patch_;
};

static_assert(FitnessState<OneMaxState>);
static_assert(FitnessState<MaxSatState>);

/// Fitness of (state.current() XOR patch); the state is left unchanged.
template <FitnessState S>
Fitness eval_patch(const S& state, const Patch& patch) {
  return state.evaluate(patch.view());
}

template <FitnessState S>
void commit_patch(S& state, const Patch& patch, Fitness new_fitness) {
  state.commit(patch.view(), new_fitness);
}

}  // namespace fastga
