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

#ifndef GAPFORGE_CONSTRUCTION_HPP
#define GAPFORGE_CONSTRUCTION_HPP

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gapforge/params.hpp"
#include "gapforge/primes.hpp"

namespace gapforge {

enum class Phase { smooth_phase, unit_phase, cover_phase, default_zero };

const char* to_string(Phase p);

// Residue class a_p (mod p) chosen for each sieving prime.
class ResidueAssignment {
 public:
  struct Entry {
    u64 residue;
    Phase phase;
  };

  // Throws std::invalid_argument on a repeated prime or residue >= p.
  void assign(u64 p, u64 residue, Phase phase);

  bool contains(u64 p) const { return entries_.count(p) != 0; }
  std::optional<Entry> find(u64 p) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Ascending by prime.
  const std::map<u64, Entry>& entries() const { return entries_; }

  // Adds every entry of other; primes must be disjoint.
  void merge(const ResidueAssignment& other);

  // Assigns a_p = 0 (default_zero) to each listed prime not already present.
  void fill_default_zero(std::span<const u64> primes);

 private:
  std::map<u64, Entry> entries_;
};

// Integers of [1, U] not removed by a residue assignment, ascending.
class SurvivorSet {
 public:
  SurvivorSet() = default;
  SurvivorSet(u64 U, std::vector<u64> values) : U_(U), values_(std::move(values)) {}

  u64 U() const { return U_; }
  const std::vector<u64>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(u64 n) const;

  // bits[n] is true iff n survives; bits[0] is always false. Requires U < 2^32.
  std::vector<bool> to_bits() const;

 private:
  u64 U_ = 0;
  std::vector<u64> values_;
};

struct PhaseResult {
  ResidueAssignment assignment;
  SurvivorSet survivors;
};

// Phase 1 (a_p = 0 for y < p <= z) and phase 2 (a_p = 1 for p <= y), over
// primes not dividing M; survivors of [1, params.U].
PhaseResult run_phases(const SieveParams& params);

// Survivors of [1, U] for the primes not dividing M, given y, z.
SurvivorSet sieve_survivors(u64 U, u64 y, u64 z, u64 M);

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurvivorClassification {
  u64 U = 0;
  std::vector<u64> R0;                      // y-smooth survivors
  std::map<u64, std::vector<u64>> Rm;       // m -> primes p > z with m*p a survivor
  std::vector<u64> E;                       // divisible by some p | M in (y, z]

  std::size_t Rm_total() const;
  // Every classified survivor, ascending.
  std::vector<u64> all() const;
};

SurvivorClassification classify_survivors(const SieveParams& params, const SurvivorSet& survivors);

struct CoverResult {
  bool complete = false;
  ResidueAssignment extension;   // cover_phase entries
  std::vector<u64> uncovered;    // ascending; empty iff complete
};

// Greedy maximum coverage: each round picks the (prime q, residue c) covering
// the most uncovered values, ties to smallest q then smallest c. Each prime is
// used at most once.
CoverResult greedy_cover(std::span<const u64> values, std::span<const u64> cover_primes);

CoverResult greedy_cover(const SurvivorClassification& classification,
                         std::span<const u64> cover_primes);

// Primes in (z, x] not dividing M.
std::vector<u64> cover_primes_for(u64 x, u64 z, u64 M);

struct CoverageRun {
  bool complete = false;
  ResidueAssignment assignment;  // phases 1-2 plus greedy extension plus default zeros
  SurvivorSet survivors;
  std::vector<u64> uncovered;
};

// Phases plus greedy for a fixed U. On success the assignment holds a residue
// for every prime p <= x with p not dividing M.
CoverageRun cover_interval(const SieveParams& params);

struct MaxCoverResult {
  u64 U_max = 0;
  ResidueAssignment assignment;
  u64 probes = 0;  // number of U values tried
};

// Largest U for which phases plus greedy cover [1, U], by exponential
// bracketing from z followed by binary search. params.U is ignored.
MaxCoverResult max_covered_U(const SieveParams& params);

// The prime of smallest magnitude in the assignment covering each j in
// [1, U]; 0 where nothing covers j.
std::vector<u64> covering_primes(const ResidueAssignment& assignment, u64 U);

}  // namespace gapforge

#endif  // GAPFORGE_CONSTRUCTION_HPP
