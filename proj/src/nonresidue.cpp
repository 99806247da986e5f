#include "normeu/nonresidue.hpp"

#include <numeric>

#include "normeu/bounds.hpp"
#include "normeu/modmath.hpp"

namespace normeu {

namespace {

// Iterate primes ascending until fn returns true; fn(p) for p < cap.
// Fast path is the static table below 1000; the sieve escalation is
// effectively dead code for genuine conductors (q1 < 70 throughout the
// surveyed ranges) but keeps adversarial caps honest.
template <typename F>
bool for_primes_ascending(uint64_t cap, F&& fn) {
    for (uint32_t p : small_primes_1k()) {
        if (p >= cap) return false;
        if (fn(p)) return true;
    }
    if (cap <= 1000) return false;
    if (cap > 0xFFFFFFFFull) {
        throw Error("RangeError", "prime search cap exceeds 2^32 - 1");
    }
    const auto primes = simple_sieve(static_cast<uint32_t>(cap - 1));
    for (uint32_t p : primes) {
        if (p < 1000) continue;
        if (fn(p)) return true;
    }
    return false;
}

}  // namespace

uint64_t find_q1(const OrderEllCharacter& chr, const SearchCaps& caps) {
    const uint64_t f = chr.conductor();
    uint64_t found = 0;
    for_primes_ascending(caps.q_cap, [&](uint64_t p) {
        if (p % f == 0) return false;  // ramified
        if (!chr.eval(p).is_one()) {
            found = p;
            return true;
        }
        return false;
    });
    if (found == 0) {
        throw Error("SearchExhausted", "no inert prime below " + std::to_string(caps.q_cap) +
                                           " for f = " + std::to_string(f));
    }
    return found;
}

uint64_t find_q2(const OrderEllCharacter& chr, uint64_t q1, const SearchCaps& caps) {
    const uint64_t f = chr.conductor();
    uint64_t found = 0;
    for_primes_ascending(caps.q_cap, [&](uint64_t p) {
        if (p <= q1 || p % f == 0) return false;
        if (!chr.eval(p).is_one()) {
            found = p;
            return true;
        }
        return false;
    });
    if (found == 0) {
        throw Error("SearchExhausted", "no second inert prime below " +
                                           std::to_string(caps.q_cap) + " for f = " +
                                           std::to_string(f));
    }
    return found;
}

std::pair<uint64_t, uint32_t> find_r(const OrderEllCharacter& chr, uint64_t q1, uint64_t q2,
                                     const SearchCaps& caps) {
    const CharValue vq2 = chr.eval(q2);
    if (!(vq2.tag == CharValue::Tag::Root) || vq2.exponent == 0) {
        throw Error("DomainError", "q2 = " + std::to_string(q2) +
                                       " is not inert, chi(q2)^-1 is trivial");
    }
    const uint32_t omega_exponent = (chr.ell() - vq2.exponent) % chr.ell();
    const uint64_t qq = q1 * q2;
    const uint64_t f = chr.conductor();
    for (uint64_t r = 1; r < caps.r_cap; ++r) {
        if (std::gcd(r, qq) != 1) continue;
        // chi(r) = chi(q2)^-1  <=>  chi(r*q2) = 1
        const uint64_t n = static_cast<uint64_t>(
            (static_cast<unsigned __int128>(r) * q2) % f);
        if (chr.eval(n).is_one()) return {r, omega_exponent};
    }
    throw Error("SearchExhausted", "no admissible r below " + std::to_string(caps.r_cap) +
                                       " for f = " + std::to_string(f));
}

NonResidueData nonresidue_data(const OrderEllCharacter& chr, const SearchCaps& caps) {
    NonResidueData d;
    d.q1 = find_q1(chr, caps);
    d.q2 = find_q2(chr, d.q1, caps);
    auto [r, omega] = find_r(chr, d.q1, d.q2, caps);
    d.r = r;
    d.omega_exponent = omega;
    // post-hoc re-check of the defining identity
    const uint64_t f = chr.conductor();
    const uint64_t n = static_cast<uint64_t>(
        (static_cast<unsigned __int128>(d.r) * d.q2) % f);
    if (!chr.eval(n).is_one()) {
        throw Error("DomainError", "internal inconsistency: chi(r*q2) != 1");
    }
    return d;
}

std::vector<std::string> grh_findings(const OrderEllCharacter& chr, const NonResidueData& data) {
    std::vector<std::string> findings;
    const double f = static_cast<double>(chr.conductor());
    auto report = [&](const char* what, uint64_t value, double bound) {
        findings.push_back("GRH bound violated for f = " + std::to_string(chr.conductor()) +
                           ": " + what + " = " + std::to_string(value) +
                           " >= " + std::to_string(bound));
    };
    if (f >= 1e8) {
        const double b = bach_q1_bound(f);
        if (static_cast<double>(data.q1) >= b) report("q1", data.q1, b);
    }
    if (f >= 1e9) {
        const double b = q2_bound(f);
        if (static_cast<double>(data.q2) >= b) report("q2", data.q2, b);
    }
    if (f >= 1e8) {
        const double b = r_bound(chr.ell(), f);
        if (static_cast<double>(data.r) >= b) report("r", data.r, b);
    }
    return findings;
}

}  // namespace normeu
