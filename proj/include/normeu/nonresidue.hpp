#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "normeu/characters.hpp"

namespace normeu {

// Search caps. Both sit far above the GRH predictions for conductors up
// to 10^12 (q1 stays below (1.17 log f - 6.36)^2 < 1100, q2 below
// 2.5 (log f)^2 < 1910, r below 2.5 (ell-1)^2 (log f)^2); hitting a cap
// on genuine inputs signals a misconfiguration and raises
// SearchExhausted.
struct SearchCaps {
    uint64_t q_cap = 1'000'000;
    uint64_t r_cap = 10'000'000;
};

// The triple every exclusion condition consumes: the two smallest inert
// primes q1 < q2 (chi != 1 on both, chi = 1 on every other prime below
// q2), the least r >= 1 coprime to q1*q2 with chi(r) = chi(q2)^-1, and
// the exponent of that target root of unity.
struct NonResidueData {
    uint64_t q1 = 0;
    uint64_t q2 = 0;
    uint32_t omega_exponent = 0;  // exponent of chi(q2)^-1, in [1, ell)
    uint64_t r = 0;
};

// Least prime q with chi(q) != 1, ascending through 2, 3, 5, ...
// The conductor itself (chi = 0, ramified) is skipped.
uint64_t find_q1(const OrderEllCharacter& chr, const SearchCaps& caps = {});

// Least prime q > q1 with chi(q) != 1.
uint64_t find_q2(const OrderEllCharacter& chr, uint64_t q1, const SearchCaps& caps = {});

// Minimal r >= 1 with gcd(r, q1*q2) = 1 and chi(r*q2) = 1, together with
// omega_exponent = (ell - exponent(chi(q2))) mod ell. The search runs
// over all integers coprime to q1*q2, not just primes.
std::pair<uint64_t, uint32_t> find_r(const OrderEllCharacter& chr, uint64_t q1, uint64_t q2,
                                     const SearchCaps& caps = {});

// Bundles the three searches and re-checks chi(r*q2) = 1 on the result.
NonResidueData nonresidue_data(const OrderEllCharacter& chr, const SearchCaps& caps = {});

// Empirical GRH validation: q1, q2, r against their conditional bounds
// (applicable from f >= 1e8 / 1e9 / 1e8 respectively). A violation would
// contradict the GRH; it is returned as a finding string, never dropped.
std::vector<std::string> grh_findings(const OrderEllCharacter& chr, const NonResidueData& data);

}  // namespace normeu
