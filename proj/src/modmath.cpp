#include "normeu/modmath.hpp"

#include <algorithm>
#include <numeric>

namespace normeu {

namespace {

inline uint64_t mul_mod_raw(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod_raw(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) acc = mul_mod_raw(acc, b, m);
        b = mul_mod_raw(b, b, m);
        e >>= 1;
    }
    return acc;
}

// One Miller-Rabin round; n odd, n > 2, n - 1 = d * 2^s.
bool mr_witness_passes(uint64_t n, uint64_t a, uint64_t d, int s) {
    a %= n;
    if (a == 0) return true;
    uint64_t x = pow_mod_raw(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod_raw(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

uint64_t rho_brent(uint64_t n) {
    // Brent's cycle variant; n odd composite, not a prime power of a tiny prime.
    for (uint64_t c = 1; c < 64; ++c) {
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
        const uint64_t m = 128;
        uint64_t r = 1;
        auto step = [&](uint64_t v) { return (mul_mod_raw(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = step(y);
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                const uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mul_mod_raw(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
            if (r > (uint64_t{1} << 24)) break;  // restart with another offset
        }
        if (d == n) {
            // backtrack to the first colliding iterate
            do {
                ys = step(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != 1 && d != n) return d;
    }
    throw Error("FactorizationFailure",
                "rho failed to split " + std::to_string(n));
}

void factor_into(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const uint64_t d = rho_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

uint64_t pow_mod(uint64_t b, uint64_t e, Modulus m) {
    return pow_mod_raw(b, e, m.value);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!mr_witness_passes(n, a, d, s)) return false;
    }
    return true;
}

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}}) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    // 2,3,5-wheel trial division up to 10^6
    static constexpr uint32_t wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    uint64_t p = 7;
    int w = 0;
    while (p <= 1'000'000 && p * p <= n) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) {
        std::vector<uint64_t> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t primitive_root(uint64_t f) {
    if (!is_prime_u64(f)) {
        throw Error("NotPrime", std::to_string(f) + " is not prime");
    }
    if (f == 2) return 1;
    const uint64_t order = f - 1;
    const std::vector<uint64_t> ps = distinct_prime_factors(order);
    const Modulus m{f};
    for (uint64_t g = 2; g < f; ++g) {
        bool generates = true;
        for (uint64_t p : ps) {
            if (pow_mod(g, order / p, m) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw Error("FactorizationFailure",
                "no generator found mod " + std::to_string(f));
}

std::vector<uint32_t> simple_sieve(uint32_t n) {
    std::vector<uint32_t> primes;
    if (n < 2) return primes;
    std::vector<uint8_t> composite(n + 1, 0);
    for (uint32_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            for (uint64_t j = uint64_t{i} * i; j <= n; j += i) composite[j] = 1;
        }
    }
    return primes;
}

std::span<const uint32_t> small_primes_1k() {
    static const std::vector<uint32_t> primes = simple_sieve(999);
    return primes;
}

}  // namespace normeu
