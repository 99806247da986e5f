#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normeu/nonresidue.hpp"

namespace normeu {

// Decides whether a field (ell, f) is proven not norm-Euclidean and
// reports exactly which criterion fired, with enough witness data to
// re-evaluate the verdict from the report alone.
//
// Criterion identifiers (stable output vocabulary):
//   T8-1  congruence system r*q2*k != f (mod q1^2), k = 1..q1-1, plus
//         (q1-1)(q2*r - 1) <= f, all in exact integer arithmetic
//   T8-2  q1 not in {2,3},   3   q1 q2 r log q1 < f
//   T8-3  q1 not in {2,3,7}, 2.1 q1 q2 r log q1 < f
//   T8-4  q1 = 2, q2 != 3,   3 q2 r < f
//   T8-5  q1 = 3, q2 != 5,   5 q2 r < f
//   P9-1  (q1,q2) = (2,3),   72 (ell-1) sqrt(f) log(4f) + 35 <= f
//   P9-2  (q1,q2) = (3,5),   507 (ell-1) sqrt(f) log(9f) + 448 <= f
//
// All logarithms are natural. Floating-point left-hand sides are
// multiplied by (1 + 2^-40) before comparing, so an Excluded verdict is
// robust against rounding.

enum class Outcome : uint8_t { Excluded, Inconclusive };

struct InequalityRecord {
    std::string label;
    double lhs = 0;
    double rhs = 0;
    bool strict = true;  // lhs < rhs required; otherwise lhs <= rhs
    bool holds = false;
};

struct ExclusionVerdict {
    uint32_t ell = 0;
    uint64_t f = 0;
    Outcome outcome = Outcome::Inconclusive;
    std::string fired_condition;             // one of the identifiers above; empty if inconclusive
    std::optional<NonResidueData> data;      // absent only when short-circuited (f = ell^2)
    std::vector<InequalityRecord> witnesses; // the fired condition's evaluated inequalities
    std::vector<std::string> failure_log;    // per-condition reasons when inconclusive
    std::string note;
    std::vector<std::string> findings;       // empirical GRH-bound violations, if any

    bool excluded() const { return outcome == Outcome::Excluded; }
};

// Individual criteria. Each optionally records every inequality it
// evaluates (with both sides as numbers) into *rec.
bool check_t8_condition_1(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec = nullptr);
bool check_t8_condition_2(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec = nullptr);
bool check_t8_condition_3(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec = nullptr);
bool check_t8_condition_4(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec = nullptr);
bool check_t8_condition_5(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec = nullptr);

// The small-pair criteria; (q1,q2) must be (2,3) or (3,5), anything else
// raises WrongPairing.
bool check_p9_special(uint32_t ell, uint64_t f, uint64_t q1, uint64_t q2,
                      std::vector<InequalityRecord>* rec = nullptr);

// Conductor-size sufficient conditions, used to derive the threshold
// table (bounds.hpp) and as standalone checks.
//
//   log6:  38 (ell-1)^2 (log f)^6 log log f < f          (f > e)
//   bach:  26.25 (ell-1)^2 t^2 log(t) (log f)^4 <= f,
//          t = 1.17 log f - 6.3                          (t > 1)
//   log4:  5825 (ell-1)^2 (log f)^4 < f, valid once q1 < 100
double log6_threshold_lhs(uint32_t ell, double f);
double bach_threshold_lhs(uint32_t ell, double f);
double log4_threshold_lhs(uint32_t ell, double f);
bool log6_threshold_check(uint32_t ell, double f);
bool bach_threshold_check(uint32_t ell, double f);
bool log4_threshold_check(uint32_t ell, double f);

// Full pipeline: build the character, find (q1, q2, r), then apply the
// matching criterion. Pairs (2,3) and (3,5) go to P9 exclusively; all
// other pairs try T8 conditions in the order 3, 2, 1, 4, 5 and stop at
// the first success. f = ell^2 short-circuits to Inconclusive with a
// note (the criteria need gcd(f, ell) = 1).
ExclusionVerdict evaluate_exclusion(uint32_t ell, uint64_t f, const SearchCaps& caps = {});

}  // namespace normeu
