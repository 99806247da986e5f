#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// shift-add modular multiply (no 128-bit intermediates), trial-division
// primality, brute-force power-residue sets, and an Euler-Maclaurin
// corrected log-series for zeta'(2).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracles {

// (a*b) mod m via double-and-add; works for any m < 2^63.
inline uint64_t mulmod_shift_add(uint64_t a, uint64_t b, uint64_t m) {
    a %= m;
    b %= m;
    uint64_t acc = 0;
    while (b) {
        if (b & 1) {
            acc += a;
            if (acc >= m) acc -= m;
        }
        a <<= 1;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return acc;
}

inline uint64_t powmod_shift_add(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) acc = mulmod_shift_add(acc, b, m);
        b = mulmod_shift_add(b, b, m);
        e >>= 1;
    }
    return acc;
}

inline bool trial_division_is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// mask[n] = 1 iff n is an ell-th power residue mod f (n in [0, f))
inline std::vector<uint8_t> power_residue_mask(uint64_t f, uint32_t ell) {
    std::vector<uint8_t> mask(f, 0);
    for (uint64_t x = 1; x < f; ++x) {
        mask[powmod_shift_add(x, ell, f)] = 1;
    }
    return mask;
}

struct BruteNonResidues {
    uint64_t q1, q2, r;
};

// (q1, q2, r) scanned directly off the residue mask
inline BruteNonResidues brute_nonresidues(uint64_t f, uint32_t ell) {
    const auto mask = power_residue_mask(f, ell);
    auto inert = [&](uint64_t p) { return p % f != 0 && !mask[p % f]; };
    uint64_t q1 = 2;
    while (!(trial_division_is_prime(q1) && inert(q1))) ++q1;
    uint64_t q2 = q1 + 1;
    while (!(trial_division_is_prime(q2) && inert(q2))) ++q2;
    uint64_t r = 1;
    while (!(std::gcd(r, q1 * q2) == 1 && mask[(r * q2) % f])) ++r;
    return {q1, q2, r};
}

// zeta'(2) = -sum_{n>=2} log(n)/n^2, tail corrected by Euler-Maclaurin;
// divide by zeta(2) = pi^2/6 for the logarithmic derivative.
inline double zeta_log_deriv_2_series() {
    constexpr double N = 1e6;
    double s = 0;
    for (double n = 2; n < N; ++n) s += std::log(n) / (n * n);
    const double logN = std::log(N);
    s += (logN + 1.0) / N;                       // integral tail
    s += 0.5 * logN / (N * N);                   // half-term
    s -= (1.0 - 2.0 * logN) / (N * N * N) / 12;  // -f'(N)/12
    const double zeta2 = M_PI * M_PI / 6.0;
    return -s / zeta2;
}

}  // namespace oracles
