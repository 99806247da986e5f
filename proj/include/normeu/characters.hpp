#pragma once

#include <cstdint>
#include <vector>

#include "normeu/errors.hpp"

namespace normeu {

// Degree/conductor pair for a Galois field of odd prime degree ell. The
// conductor is a prime f = 1 (mod ell); the field discriminant is
// f^(ell-1) and is only ever handled as the pair (f, ell-1). The Dedekind
// zeta function of such a field is the product of zeta(s) and the
// L-functions of the ell-1 non-trivial powers of an order-ell character
// mod f; the toolkit relies on that factorization only through the
// closed-form bounds in bounds.hpp, never numerically.
struct FieldParams {
    uint32_t ell = 0;       // odd prime, 3..97
    uint64_t conductor = 0; // prime, = 1 (mod ell)

    uint32_t discriminant_exponent() const { return ell - 1; }
};

// A character value: 0 on multiples of the conductor, otherwise the
// ell-th root of unity zeta^exponent. Keeping exponents in Z/ell makes
// every predicate on values (chi(n) != 1, chi(r) = chi(q2)^-1) exact
// integer arithmetic.
struct CharValue {
    enum class Tag : uint8_t { Zero, Root };

    Tag tag = Tag::Zero;
    uint32_t exponent = 0;  // in [0, ell); meaningful when tag == Root

    static CharValue zero() { return {}; }
    static CharValue root(uint32_t j) { return {Tag::Root, j}; }

    bool is_zero() const { return tag == Tag::Zero; }
    bool is_one() const { return tag == Tag::Root && exponent == 0; }

    friend bool operator==(const CharValue&, const CharValue&) = default;
};

// The primitive Dirichlet character mod f of order ell that sends the
// least primitive root g to exponent 1. Evaluation computes
// n^((f-1)/ell) mod f and locates the result in the precomputed table of
// the ell distinct values h^j, h = g^((f-1)/ell). Immutable after
// construction; eval is pure, so instances are freely shared across
// threads.
class OrderEllCharacter {
public:
    const FieldParams& params() const { return params_; }
    uint32_t ell() const { return params_.ell; }
    uint64_t conductor() const { return params_.conductor; }
    uint64_t cofactor_exponent() const { return cofactor_exponent_; }
    const std::vector<uint64_t>& subgroup_table() const { return table_; }

    // Zero iff f | n; otherwise Root(j) with n^((f-1)/ell) = h^j (mod f).
    CharValue eval(uint64_t n) const;

    // True iff n is an ell-th power residue mod f. Throws
    // ArgumentNotCoprime when f | n.
    bool is_residue(uint64_t n) const;

private:
    friend OrderEllCharacter build_character(uint32_t ell, uint64_t f);
    FieldParams params_{};
    uint64_t cofactor_exponent_ = 0;
    std::vector<uint64_t> table_;  // h^j mod f, j in [0, ell)
};

// Validates ell (odd prime <= 97, NotOddPrime/DomainError), f (prime,
// NotPrime; note f = ell^2 is composite and lands there) and the
// congruence f = 1 (mod ell) (BadCongruence), then precomputes the
// subgroup table.
OrderEllCharacter build_character(uint32_t ell, uint64_t f);

}  // namespace normeu
