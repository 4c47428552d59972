// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapforge/construction.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace gapforge {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::smooth_phase: return "smooth_phase";
    case Phase::unit_phase: return "unit_phase";
    case Phase::cover_phase: return "cover_phase";
    case Phase::default_zero: return "default_zero";
  }
  return "default_zero";
}

void ResidueAssignment::assign(u64 p, u64 residue, Phase phase) {
  if (p < 2) throw std::invalid_argument("ResidueAssignment: modulus " + std::to_string(p) + " is not prime");
  if (residue >= p)
    throw std::invalid_argument("ResidueAssignment: residue " + std::to_string(residue) +
                                " out of range for p = " + std::to_string(p));
  if (!entries_.emplace(p, Entry{residue, phase}).second)
    throw std::invalid_argument("ResidueAssignment: prime " + std::to_string(p) + " assigned twice");
}

std::optional<ResidueAssignment::Entry> ResidueAssignment::find(u64 p) const {
  auto it = entries_.find(p);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResidueAssignment::merge(const ResidueAssignment& other) {
  for (const auto& [p, e] : other.entries_) assign(p, e.residue, e.phase);
}

void ResidueAssignment::fill_default_zero(std::span<const u64> primes) {
  for (u64 p : primes)
    if (!contains(p)) entries_.emplace(p, Entry{0, Phase::default_zero});
}

bool SurvivorSet::contains(u64 n) const { return std::binary_search(values_.begin(), values_.end(), n); }

std::vector<bool> SurvivorSet::to_bits() const {
  if (U_ >= (u64{1} << 32)) throw std::length_error("SurvivorSet::to_bits: U too large for a bit-vector");
  std::vector<bool> bits(U_ + 1, false);
  for (u64 v : values_) bits[v] = true;
  return bits;
}

// --------------------------------------------------------------------------
// Phases 1 and 2

SurvivorSet sieve_survivors(u64 U, u64 y, u64 z, u64 M) {
  std::vector<u64> out;
  if (U == 0) return SurvivorSet(0, {});

  const auto unit_primes = primes_coprime_to(y, M);
  std::vector<u64> zero_primes;
  if (z > y)
    for (u64 p : primes_in_range(y, z))
      if (M % p != 0) zero_primes.push_back(p);

  const std::size_t segment = kDefaultSegmentSize;
  std::vector<char> alive(segment);
  for (u64 lo = 1; lo <= U;) {
    const u64 hi = std::min<u64>(U, lo + segment - 1);
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::fill(alive.begin(), alive.begin() + len, 1);
    for (u64 p : unit_primes) {
      // first n >= lo with n == 1 (mod p)
      u64 n = lo + ((1 + p - lo % p) % p);
      for (; n <= hi; n += p) alive[n - lo] = 0;
    }
    for (u64 p : zero_primes) {
      if (p > hi) break;
      u64 n = (lo + p - 1) / p * p;
      for (; n <= hi; n += p) alive[n - lo] = 0;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (alive[i]) out.push_back(lo + i);
    if (hi == U) break;
    lo = hi + 1;
  }
  return SurvivorSet(U, std::move(out));
}

PhaseResult run_phases(const SieveParams& params) {
  PhaseResult result;
  for (u64 p : primes_coprime_to(params.y, params.M)) result.assignment.assign(p, 1 % p, Phase::unit_phase);
  if (params.z > params.y)
    for (u64 p : primes_in_range(params.y, params.z))
      if (params.M % p != 0) result.assignment.assign(p, 0, Phase::smooth_phase);
  result.survivors = sieve_survivors(params.U, params.y, params.z, params.M);
  return result;
}

// --------------------------------------------------------------------------
// Classification

std::size_t SurvivorClassification::Rm_total() const {
  std::size_t n = 0;
  for (const auto& [m, ps] : Rm) n += ps.size();
  return n;
}

std::vector<u64> SurvivorClassification::all() const {
  std::vector<u64> out(R0.begin(), R0.end());
  for (const auto& [m, ps] : Rm)
    for (u64 p : ps) out.push_back(m * p);
  out.insert(out.end(), E.begin(), E.end());
  std::sort(out.begin(), out.end());
  return out;
}

SurvivorClassification classify_survivors(const SieveParams& params, const SurvivorSet& survivors) {
  SurvivorClassification c;
  c.U = survivors.U();
  const auto small = primes_in_range(0, params.y);
  std::vector<u64> exceptional;  // p | M with y < p <= z
  for (const auto& f : factorize(params.M))
    if (f.prime > params.y && f.prime <= params.z) exceptional.push_back(f.prime);

  for (u64 n : survivors.values()) {
    u64 rough = n;
    for (u64 p : small) {
      if (rough == 1) break;
      while (rough % p == 0) rough /= p;
    }
    if (rough == 1) {
      c.R0.push_back(n);
      continue;
    }
    const bool in_E = std::any_of(exceptional.begin(), exceptional.end(), [n](u64 p) { return n % p == 0; });
    if (in_E) {
      c.E.push_back(n);
      continue;
    }
    if (rough > params.z && is_prime_u64(rough)) {
      c.Rm[n / rough].push_back(rough);
      continue;
    }
    throw ClassificationError("classify_survivors: survivor " + std::to_string(n) +
                              " is neither smooth, smooth times a prime > z, nor in E");
  }
  return c;
}

// --------------------------------------------------------------------------
// Greedy covering

namespace {

struct BestClass {
  u64 count = 0;
  u64 residue = 0;
};

// Most populated residue class mod q among values (smallest residue on ties).
BestClass best_class(std::span<const u64> values, u64 q, std::vector<u64>& scratch) {
  scratch.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) scratch[i] = values[i] % q;
  std::sort(scratch.begin(), scratch.end());
  BestClass best;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    if (j - i > best.count) best = {j - i, scratch[i]};
    i = j;
  }
  return best;
}

struct Candidate {
  u64 bound;
  u64 q;
};

// Max-heap order: larger bound first, then smaller prime.
struct CandidateLess {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.q > b.q;
  }
};

}  // namespace

CoverResult greedy_cover(std::span<const u64> values, std::span<const u64> cover_primes) {
  CoverResult result;
  std::vector<u64> uncovered(values.begin(), values.end());
  std::sort(uncovered.begin(), uncovered.end());
  uncovered.erase(std::unique(uncovered.begin(), uncovered.end()), uncovered.end());

  std::vector<u64> scratch;
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> heap;
  for (u64 q : cover_primes) {
    const auto b = best_class(uncovered, q, scratch);
    if (b.count > 0) heap.push({b.count, q});
  }

  // Coverage counts only shrink as values get covered, so a stale bound is
  // an upper bound and the first candidate whose fresh value still beats the
  // heap top is the exact greedy choice.
  while (!uncovered.empty() && !heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    const auto fresh = best_class(uncovered, top.q, scratch);
    if (fresh.count == 0) continue;
    if (!heap.empty() && CandidateLess{}(Candidate{fresh.count, top.q}, heap.top())) {
      heap.push({fresh.count, top.q});
      continue;
    }
    result.extension.assign(top.q, fresh.residue, Phase::cover_phase);
    std::erase_if(uncovered, [&](u64 v) { return v % top.q == fresh.residue; });
  }
  result.complete = uncovered.empty();
  result.uncovered = std::move(uncovered);
  return result;
}

CoverResult greedy_cover(const SurvivorClassification& classification, std::span<const u64> cover_primes) {
  const auto values = classification.all();
  return greedy_cover(std::span<const u64>(values), cover_primes);
}

std::vector<u64> cover_primes_for(u64 x, u64 z, u64 M) {
  std::vector<u64> out;
  if (x <= z) return out;
  for (u64 p : primes_in_range(z, x))
    if (M % p != 0) out.push_back(p);
  return out;
}

CoverageRun cover_interval(const SieveParams& params) {
  CoverageRun run;
  auto phases = run_phases(params);
  const auto cover = cover_primes_for(params.x, params.z, params.M);
  auto greedy = greedy_cover(std::span<const u64>(phases.survivors.values()), cover);
  run.complete = greedy.complete;
  run.uncovered = std::move(greedy.uncovered);
  run.assignment = std::move(phases.assignment);
  run.assignment.merge(greedy.extension);
  if (run.complete) {
    const auto all = primes_coprime_to(params.x, params.M);
    run.assignment.fill_default_zero(all);
  }
  run.survivors = std::move(phases.survivors);
  return run;
}

MaxCoverResult max_covered_U(const SieveParams& params) {
  MaxCoverResult result;
  SieveParams probe = params;
  auto attempt = [&](u64 U) {
    probe.U = U;
    ++result.probes;
    return cover_interval(probe);
  };

  // lo is coverable (0 trivially), hi is not.
  u64 lo = 0;
  ResidueAssignment lo_assignment;
  {
    SieveParams empty = params;
    empty.U = 0;
    auto run = cover_interval(empty);
    lo_assignment = std::move(run.assignment);
  }
  u64 hi = std::max<u64>(params.z, 1);
  constexpr u64 kCeiling = u64{1} << 40;
  while (true) {
    auto run = attempt(hi);
    if (!run.complete) break;
    lo = hi;
    lo_assignment = std::move(run.assignment);
    if (hi >= kCeiling) throw std::runtime_error("max_covered_U: coverage did not fail below 2^40");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    auto run = attempt(mid);
    if (run.complete) {
      lo = mid;
      lo_assignment = std::move(run.assignment);
    } else {
      hi = mid;
    }
  }
  result.U_max = lo;
  result.assignment = std::move(lo_assignment);
  return result;
}

std::vector<u64> covering_primes(const ResidueAssignment& assignment, u64 U) {
  std::vector<u64> witness(U + 1, 0);
  for (const auto& [p, e] : assignment.entries()) {
    for (u64 j = e.residue == 0 ? p : e.residue; j <= U; j += p)
      if (witness[j] == 0) witness[j] = p;
  }
  witness.erase(witness.begin());
  return witness;
}

}  // namespace gapforge
