#include "fastga/problems.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fastga {

namespace {

void check_index(BitIndex i, std::size_t n) {
  if (i >= n) {
    throw std::invalid_argument("patch index " + std::to_string(i) +
                                " out of range for problem size " + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------- OneMax

Fitness onemax_eval(const BitString& x) noexcept {
  return static_cast<Fitness>(x.count_ones());
}

OneMaxState::OneMaxState(BitString start)
    : current_(std::move(start)), fitness_(onemax_eval(current_)) {}

Fitness OneMaxState::evaluate(PatchView patch) const {
  Fitness f = fitness_;
  for (BitIndex i : patch) {
    check_index(i, current_.size());
    f += current_.get(i) ? -1 : 1;
  }
  return f;
}

void OneMaxState::commit(PatchView patch, Fitness new_fitness) {
  current_.apply(patch);
  fitness_ = new_fitness;
  assert(check_invariants());
}

bool OneMaxState::check_invariants() const { return fitness_ == onemax_eval(current_); }

// ------------------------------------------------------------- MAX-3SAT

SatInstance::SatInstance(std::size_t n, std::vector<Clause> clauses)
    : n_(n), clauses_(std::move(clauses)) {
  if (n < 3) throw std::invalid_argument("MAX-3SAT needs at least 3 variables");
  if (n > kMaxVars) throw std::invalid_argument("too many variables for the occurrence index");
  if (clauses_.size() >= (std::size_t{1} << 31)) {
    throw std::invalid_argument("too many clauses for the occurrence index");
  }

  occ_offset_.assign(n + 1, 0);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const Clause& cl = clauses_[c];
    for (BitIndex v : cl.vars) {
      if (v >= n) throw std::invalid_argument("clause variable out of range");
    }
    if (cl.vars[0] == cl.vars[1] || cl.vars[0] == cl.vars[2] || cl.vars[1] == cl.vars[2]) {
      throw std::invalid_argument("clause " + std::to_string(c) + " repeats a variable");
    }
    if (!cl.positive[0] && !cl.positive[1] && !cl.positive[2]) {
      throw std::invalid_argument("clause " + std::to_string(c) +
                                  " is not satisfied by the all-ones assignment");
    }
    for (BitIndex v : cl.vars) ++occ_offset_[v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) occ_offset_[v + 1] += occ_offset_[v];

  occ_.resize(occ_offset_[n]);
  ctx_.resize(occ_offset_[n]);
  std::vector<std::size_t> fill(occ_offset_.begin(), occ_offset_.end() - 1);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const Clause& cl = clauses_[c];
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3;
      const int b = (k + 2) % 3;
      const std::size_t slot = fill[cl.vars[k]]++;
      occ_[slot] = Occurrence{static_cast<std::uint32_t>((c << 1) | (cl.positive[k] ? 1U : 0U))};
      ctx_[slot] = LiteralContext{std::uint64_t{cl.vars[a]} |
                                  (std::uint64_t{cl.vars[b]} << LiteralContext::kVarBits) |
                                  (std::uint64_t{!cl.positive[k]} << 58) |
                                  (std::uint64_t{!cl.positive[a]} << 59) |
                                  (std::uint64_t{!cl.positive[b]} << 60)};
    }
  }
}

std::size_t planted_clause_count(std::size_t n) {
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::llround(4.0 * nd * std::log(nd)));
}

SatInstance generate_sat_instance(std::size_t n, Rng& rng) {
  if (n < 3) throw std::invalid_argument("MAX-3SAT needs at least 3 variables");
  const std::size_t m = planted_clause_count(n);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  while (clauses.size() < m) {
    Clause cl;
    const auto a = static_cast<BitIndex>(uniform_below(rng, n));
    BitIndex b;
    do {
      b = static_cast<BitIndex>(uniform_below(rng, n));
    } while (b == a);
    BitIndex c;
    do {
      c = static_cast<BitIndex>(uniform_below(rng, n));
    } while (c == a || c == b);
    cl.vars = {a, b, c};
    const std::uint64_t signs = uniform_below(rng, 8);
    cl.positive = {(signs & 1U) != 0, (signs & 2U) != 0, (signs & 4U) != 0};
    // An all-negative draw is unsatisfied by the planted optimum: redraw the
    // whole clause.
    if (signs == 0) continue;
    clauses.push_back(cl);
  }
  return SatInstance(n, std::move(clauses));
}

Fitness maxsat_eval(const SatInstance& inst, const BitString& x) {
  if (x.size() != inst.num_vars()) {
    throw std::invalid_argument("assignment length " + std::to_string(x.size()) +
                                " does not match variable count " +
                                std::to_string(inst.num_vars()));
  }
  Fitness satisfied = 0;
  for (const Clause& cl : inst.clauses()) {
    for (int k = 0; k < 3; ++k) {
      if (x.get(cl.vars[k]) == cl.positive[k]) {
        ++satisfied;
        break;
      }
    }
  }
  return satisfied;
}

MaxSatState::MaxSatState(std::shared_ptr<const SatInstance> instance, BitString start)
    : instance_(std::move(instance)), current_(std::move(start)) {
  if (!instance_) throw std::invalid_argument("MAX-3SAT state needs an instance");
  if (current_.size() != instance_->num_vars()) {
    throw std::invalid_argument("start point length does not match variable count");
  }
  const auto clauses = instance_->clauses();
  sat_count_.resize(clauses.size());
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    std::uint8_t cnt = 0;
    for (int k = 0; k < 3; ++k) {
      if (current_.get(clauses[c].vars[k]) == clauses[c].positive[k]) ++cnt;
    }
    sat_count_[c] = cnt;
    if (cnt > 0) ++fitness_;
  }
  in_patch_.assign((current_.size() + 63) / 64, 0);
}

Fitness MaxSatState::evaluate(PatchView patch) const {
  const std::size_t n = current_.size();
  for (BitIndex v : patch) check_index(v, n);
  const std::uint64_t* bits = current_.words().data();
  std::uint64_t* marks = in_patch_.data();
  for (BitIndex v : patch) marks[v >> 6] |= std::uint64_t{1} << (v & 63);

  // Literal values are 0/1 integers: a literal is true iff its bit differs
  // from its negation flag. Each clause touched by the patch is charged to
  // its smallest patched variable so that it counts once.
  std::int64_t change = 0;
  for (BitIndex v : patch) {
    const std::uint64_t own = (bits[v >> 6] >> (v & 63)) & 1U;
    for (LiteralContext o : instance_->contexts(v)) {
      const std::uint64_t p = o.packed;
      const auto a = static_cast<BitIndex>(p & LiteralContext::kVarMask);
      const auto b = static_cast<BitIndex>((p >> LiteralContext::kVarBits) & LiteralContext::kVarMask);
      const std::uint64_t fa = (marks[a >> 6] >> (a & 63)) & 1U;
      const std::uint64_t fb = (marks[b >> 6] >> (b & 63)) & 1U;
      const std::uint64_t lo = own ^ ((p >> 58) & 1U);
      const std::uint64_t la = ((bits[a >> 6] >> (a & 63)) & 1U) ^ ((p >> 59) & 1U);
      const std::uint64_t lb = ((bits[b >> 6] >> (b & 63)) & 1U) ^ ((p >> 60) & 1U);
      const std::uint64_t before = lo | la | lb;
      const std::uint64_t after = (lo ^ 1U) | (la ^ fa) | (lb ^ fb);
      const std::uint64_t owner = 1U ^ ((fa & static_cast<std::uint64_t>(a < v)) | (fb & static_cast<std::uint64_t>(b < v)));
      change += static_cast<std::int64_t>(owner & after) - static_cast<std::int64_t>(owner & before);
    }
  }

  for (BitIndex v : patch) marks[v >> 6] = 0;
  return fitness_ + change;
}

void MaxSatState::commit(PatchView patch, Fitness new_fitness) {
  Fitness f = fitness_;
  for (BitIndex v : patch) {
    const bool bit = current_.get(v);
    for (Occurrence o : instance_->occurrences(v)) {
      std::uint8_t& cnt = sat_count_[o.clause()];
      if (bit == o.positive()) {
        if (--cnt == 0) --f;
      } else {
        if (cnt++ == 0) ++f;
      }
    }
  }
  current_.apply(patch);
  assert(f == new_fitness);
  (void)new_fitness;
  fitness_ = f;
}

bool MaxSatState::check_invariants() const {
  const auto clauses = instance_->clauses();
  Fitness f = 0;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    std::uint8_t cnt = 0;
    for (int k = 0; k < 3; ++k) {
      if (current_.get(clauses[c].vars[k]) == clauses[c].positive[k]) ++cnt;
    }
    if (cnt != sat_count_[c]) return false;
    if (cnt > 0) ++f;
  }
  return f == fitness_ && f == maxsat_eval(*instance_, current_);
}

}  // namespace fastga
