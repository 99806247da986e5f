#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "normeu/errors.hpp"

namespace normeu {

// Overflow-safe modular arithmetic for 64-bit moduli. Products go through
// 128-bit intermediates, so results are exact for any modulus < 2^64;
// the rest of the toolkit only ever needs moduli below 2^63.
struct Modulus {
    uint64_t value;

    explicit Modulus(uint64_t m) : value(m) {
        if (m < 2) throw Error("DomainError", "modulus must be >= 2");
    }
};

// (a * b) mod m. Operands are reduced on entry.
inline uint64_t mul_mod(uint64_t a, uint64_t b, Modulus m) {
    a %= m.value;
    b %= m.value;
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m.value);
}

// b^e mod m; e = 0 gives 1 mod m.
uint64_t pow_mod(uint64_t b, uint64_t e, Modulus m);

// Deterministic Miller-Rabin, exact for all n < 2^64 (witness set
// {2,3,...,37} is known sufficient for n < 3.3e24).
bool is_prime_u64(uint64_t n);

// Distinct prime factors of n, ascending. Trial division up to 10^6, then
// Brent-cycle rho on the cofactor; a cofactor the rho loop cannot split
// within its iteration budget raises FactorizationFailure.
std::vector<uint64_t> distinct_prime_factors(uint64_t n);

// Least g >= 2 generating (Z/fZ)^* for prime f, verified against the
// factorization of f-1. f = 2 returns 1 (trivial group).
uint64_t primitive_root(uint64_t f);

// The 168 primes below 1000; the fast path for non-residue searches.
std::span<const uint32_t> small_primes_1k();

// Primes <= n, ascending.
std::vector<uint32_t> simple_sieve(uint32_t n);

}  // namespace normeu
