#include "normeu/characters.hpp"

#include "normeu/modmath.hpp"

namespace normeu {

OrderEllCharacter build_character(uint32_t ell, uint64_t f) {
    if (ell < 3 || ell % 2 == 0 || !is_prime_u64(ell)) {
        throw Error("NotOddPrime", "ell = " + std::to_string(ell) + " is not an odd prime");
    }
    if (ell > 97) {
        throw Error("DomainError", "ell = " + std::to_string(ell) + " exceeds the supported range (<= 97)");
    }
    if (!is_prime_u64(f)) {
        throw Error("NotPrime", "conductor " + std::to_string(f) + " is not prime");
    }
    if (f % ell != 1) {
        throw Error("BadCongruence",
                    "conductor " + std::to_string(f) + " is not 1 mod " + std::to_string(ell));
    }

    OrderEllCharacter chr;
    chr.params_ = FieldParams{ell, f};
    chr.cofactor_exponent_ = (f - 1) / ell;

    const uint64_t g = primitive_root(f);
    const Modulus m{f};
    const uint64_t h = pow_mod(g, chr.cofactor_exponent_, m);
    chr.table_.reserve(ell);
    uint64_t v = 1;
    for (uint32_t j = 0; j < ell; ++j) {
        chr.table_.push_back(v);
        v = mul_mod(v, h, m);
    }
    // h has exact order ell: h^ell = 1 and the table entries are distinct
    if (v != 1) {
        throw Error("DomainError", "subgroup generator does not have order ell");
    }
    return chr;
}

CharValue OrderEllCharacter::eval(uint64_t n) const {
    const uint64_t f = params_.conductor;
    n %= f;
    if (n == 0) return CharValue::zero();
    const uint64_t t = pow_mod(n, cofactor_exponent_, Modulus{f});
    for (uint32_t j = 0; j < params_.ell; ++j) {
        if (table_[j] == t) return CharValue::root(j);
    }
    // unreachable for a prime conductor: n^((f-1)/ell) lies in the order-ell subgroup
    throw Error("DomainError", "character value outside the subgroup table");
}

bool OrderEllCharacter::is_residue(uint64_t n) const {
    if (n % params_.conductor == 0) {
        throw Error("ArgumentNotCoprime",
                    std::to_string(n) + " shares a factor with the conductor " +
                        std::to_string(params_.conductor));
    }
    return eval(n).is_one();
}

}  // namespace normeu
