#include "normeu/exclusion.hpp"

#include <cmath>
#include <cstdio>

#include "normeu/modmath.hpp"

namespace normeu {

namespace {

// Upward rounding of floating left-hand sides: a verdict must survive a
// relative nudge of 2^-40 before it counts.
constexpr double kNudge = 1.0 + 0x1p-40;

bool fp_holds(double lhs, double rhs, bool strict) {
    const double padded = lhs * kNudge;
    return strict ? padded < rhs : padded <= rhs;
}

void record(std::vector<InequalityRecord>* rec, std::string label, double lhs, double rhs,
            bool strict, bool holds) {
    if (rec) rec->push_back({std::move(label), lhs, rhs, strict, holds});
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// weighted product conditions T8-2 / T8-3 share this shape
bool weighted_product(double constant, uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                      const char* label, std::vector<InequalityRecord>* rec) {
    const double lhs = constant * static_cast<double>(q1) * static_cast<double>(q2) *
                       static_cast<double>(r) * std::log(static_cast<double>(q1));
    const bool ok = fp_holds(lhs, static_cast<double>(f), /*strict=*/true);
    record(rec, label, lhs, static_cast<double>(f), true, ok);
    return ok;
}

void require_odd_prime(uint32_t ell) {
    if (ell < 3 || ell % 2 == 0 || !is_prime_u64(ell)) {
        throw Error("DomainError", "ell must be an odd prime, got " + std::to_string(ell));
    }
}

}  // namespace

bool check_t8_condition_1(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec) {
    // exact integer arithmetic throughout
    using u128 = unsigned __int128;
    const u128 q1sq = static_cast<u128>(q1) * q1;
    const u128 rq2 = static_cast<u128>(r) * q2;
    const u128 fres = static_cast<u128>(f) % q1sq;
    for (uint64_t k = 1; k < q1; ++k) {
        if ((rq2 * k) % q1sq == fres) {
            record(rec, "r*q2*k = f (mod q1^2) at k=" + std::to_string(k), 1, 0, false, false);
            return false;
        }
    }
    record(rec, "r*q2*k != f (mod q1^2) for k=1.." + std::to_string(q1 - 1), 0, 0, false, true);
    const u128 prod = static_cast<u128>(q1 - 1) * (rq2 - 1);
    const bool ok = prod <= static_cast<u128>(f);
    record(rec, "(q1-1)(q2*r-1) <= f", static_cast<double>(prod), static_cast<double>(f), false,
           ok);
    return ok;
}

// Guards are recorded as indicator rows (0 when the guard is met, 1 when
// not) so witnesses re-evaluate uniformly as lhs <= rhs.
bool check_t8_condition_2(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec) {
    const bool guard = q1 != 2 && q1 != 3;
    record(rec, "guard q1 not in {2,3}", guard ? 0 : 1, 0, false, guard);
    if (!guard) return false;
    return weighted_product(3.0, f, q1, q2, r, "3 q1 q2 r log(q1) < f", rec);
}

bool check_t8_condition_3(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec) {
    const bool guard = q1 != 2 && q1 != 3 && q1 != 7;
    record(rec, "guard q1 not in {2,3,7}", guard ? 0 : 1, 0, false, guard);
    if (!guard) return false;
    return weighted_product(2.1, f, q1, q2, r, "2.1 q1 q2 r log(q1) < f", rec);
}

bool check_t8_condition_4(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec) {
    const bool guard = q1 == 2 && q2 != 3;
    record(rec, "guard q1=2, q2 != 3", guard ? 0 : 1, 0, false, guard);
    if (!guard) return false;
    using u128 = unsigned __int128;
    const u128 lhs = static_cast<u128>(3) * q2 * r;
    const bool ok = lhs < static_cast<u128>(f);
    record(rec, "3 q2 r < f", static_cast<double>(lhs), static_cast<double>(f), true, ok);
    return ok;
}

bool check_t8_condition_5(uint64_t f, uint64_t q1, uint64_t q2, uint64_t r,
                          std::vector<InequalityRecord>* rec) {
    const bool guard = q1 == 3 && q2 != 5;
    record(rec, "guard q1=3, q2 != 5", guard ? 0 : 1, 0, false, guard);
    if (!guard) return false;
    using u128 = unsigned __int128;
    const u128 lhs = static_cast<u128>(5) * q2 * r;
    const bool ok = lhs < static_cast<u128>(f);
    record(rec, "5 q2 r < f", static_cast<double>(lhs), static_cast<double>(f), true, ok);
    return ok;
}

bool check_p9_special(uint32_t ell, uint64_t f, uint64_t q1, uint64_t q2,
                      std::vector<InequalityRecord>* rec) {
    require_odd_prime(ell);
    const double fd = static_cast<double>(f);
    if (q1 == 2 && q2 == 3) {
        const double lhs = 72.0 * (ell - 1) * std::sqrt(fd) * std::log(4.0 * fd) + 35.0;
        const bool ok = fp_holds(lhs, fd, /*strict=*/false);
        record(rec, "72 (ell-1) sqrt(f) log(4f) + 35 <= f", lhs, fd, false, ok);
        return ok;
    }
    if (q1 == 3 && q2 == 5) {
        const double lhs = 507.0 * (ell - 1) * std::sqrt(fd) * std::log(9.0 * fd) + 448.0;
        const bool ok = fp_holds(lhs, fd, /*strict=*/false);
        record(rec, "507 (ell-1) sqrt(f) log(9f) + 448 <= f", lhs, fd, false, ok);
        return ok;
    }
    throw Error("WrongPairing", "(q1,q2) = (" + std::to_string(q1) + "," + std::to_string(q2) +
                                    ") matches neither special pair");
}

double log6_threshold_lhs(uint32_t ell, double f) {
    require_odd_prime(ell);
    if (!(f > M_E)) throw Error("DomainError", "log6 threshold needs f > e, got " + fmt(f));
    const double lf = std::log(f);
    const double em1 = static_cast<double>(ell - 1);
    return 38.0 * em1 * em1 * std::pow(lf, 6) * std::log(lf);
}

double bach_threshold_lhs(uint32_t ell, double f) {
    require_odd_prime(ell);
    if (!(f > 1)) throw Error("DomainError", "conductor must exceed 1, got " + fmt(f));
    const double lf = std::log(f);
    const double t = 1.17 * lf - 6.3;
    if (!(t > 1)) {
        throw Error("DomainError", "inner logarithm argument <= 1 at f = " + fmt(f));
    }
    const double em1 = static_cast<double>(ell - 1);
    return 26.25 * em1 * em1 * t * t * std::log(t) * std::pow(lf, 4);
}

double log4_threshold_lhs(uint32_t ell, double f) {
    require_odd_prime(ell);
    if (!(f > 1)) throw Error("DomainError", "conductor must exceed 1, got " + fmt(f));
    const double em1 = static_cast<double>(ell - 1);
    return 5825.0 * em1 * em1 * std::pow(std::log(f), 4);
}

bool log6_threshold_check(uint32_t ell, double f) {
    return fp_holds(log6_threshold_lhs(ell, f), f, /*strict=*/true);
}

bool bach_threshold_check(uint32_t ell, double f) {
    return fp_holds(bach_threshold_lhs(ell, f), f, /*strict=*/false);
}

bool log4_threshold_check(uint32_t ell, double f) {
    return fp_holds(log4_threshold_lhs(ell, f), f, /*strict=*/true);
}

ExclusionVerdict evaluate_exclusion(uint32_t ell, uint64_t f, const SearchCaps& caps) {
    require_odd_prime(ell);
    if (ell > 97) {
        throw Error("DomainError",
                    "ell = " + std::to_string(ell) + " exceeds the supported range (<= 97)");
    }

    ExclusionVerdict v;
    v.ell = ell;
    v.f = f;

    if (f == static_cast<uint64_t>(ell) * ell) {
        v.outcome = Outcome::Inconclusive;
        v.note = "f = ell^2: the inert-prime criteria require gcd(f, ell) = 1; "
                 "no verdict from this pipeline";
        v.failure_log.push_back("all conditions: skipped, f = ell^2");
        return v;
    }

    const OrderEllCharacter chr = build_character(ell, f);
    v.data = nonresidue_data(chr, caps);
    v.findings = grh_findings(chr, *v.data);
    const NonResidueData& d = *v.data;

    auto attempt = [&](const char* name, auto&& fn) {
        std::vector<InequalityRecord> rec;
        if (fn(&rec)) {
            v.outcome = Outcome::Excluded;
            v.fired_condition = name;
            v.witnesses = std::move(rec);
            return true;
        }
        std::string why = name;
        why += ":";
        for (const auto& iq : rec) {
            why += " [" + iq.label + ": " + fmt(iq.lhs) + (iq.strict ? " < " : " <= ") +
                   fmt(iq.rhs) + (iq.holds ? " holds]" : " fails]");
        }
        v.failure_log.push_back(std::move(why));
        return false;
    };

    const bool special_pair = (d.q1 == 2 && d.q2 == 3) || (d.q1 == 3 && d.q2 == 5);
    if (special_pair) {
        const char* name = (d.q1 == 2) ? "P9-1" : "P9-2";
        attempt(name, [&](std::vector<InequalityRecord>* rec) {
            return check_p9_special(ell, f, d.q1, d.q2, rec);
        });
    } else {
        const bool fired =
            attempt("T8-3", [&](auto* rec) { return check_t8_condition_3(f, d.q1, d.q2, d.r, rec); }) ||
            attempt("T8-2", [&](auto* rec) { return check_t8_condition_2(f, d.q1, d.q2, d.r, rec); }) ||
            attempt("T8-1", [&](auto* rec) { return check_t8_condition_1(f, d.q1, d.q2, d.r, rec); }) ||
            attempt("T8-4", [&](auto* rec) { return check_t8_condition_4(f, d.q1, d.q2, d.r, rec); }) ||
            attempt("T8-5", [&](auto* rec) { return check_t8_condition_5(f, d.q1, d.q2, d.r, rec); });
        (void)fired;
    }
    return v;
}

}  // namespace normeu
