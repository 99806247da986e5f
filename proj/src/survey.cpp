#include "normeu/survey.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "normeu/bounds.hpp"
#include "normeu/characters.hpp"
#include "normeu/modmath.hpp"
#include "normeu/nonresidue.hpp"

namespace normeu {

namespace {

constexpr uint64_t kScanCap = 1'000'000'000'000ull;  // sieve design range

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void validate(const SurveyConfig& cfg) {
    if (cfg.ell < 3 || cfg.ell % 2 == 0 || !is_prime_u64(cfg.ell) || cfg.ell > 97) {
        throw Error("DomainError", "ell must be an odd prime <= 97, got " + std::to_string(cfg.ell));
    }
    if (!(cfg.f_min < cfg.f_max)) {
        throw Error("RangeError", "need f_min < f_max");
    }
    if (cfg.f_max > kScanCap) {
        throw Error("RangeError", "f_max exceeds the sieve design range 1e12");
    }
    if (cfg.segment_size < (uint64_t{1} << 16)) {
        throw Error("RangeError", "segment_size must be at least 2^16");
    }
    if (cfg.workers < 1) {
        throw Error("RangeError", "workers must be >= 1");
    }
}

void sieve_with_base(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& base,
                     std::vector<uint64_t>& out) {
    out.clear();
    if (hi <= lo) return;
    std::vector<uint8_t> comp(hi - lo, 0);
    for (uint64_t n = lo; n < hi && n < 2; ++n) comp[n - lo] = 1;
    for (uint32_t p : base) {
        const uint64_t p64 = p;
        const uint64_t psq = p64 * p64;
        if (psq >= hi) break;
        uint64_t m = ((lo + p64 - 1) / p64) * p64;
        if (m < psq) m = psq;
        for (; m < hi; m += p64) comp[m - lo] = 1;
    }
    for (uint64_t n = lo; n < hi; ++n) {
        if (!comp[n - lo]) out.push_back(n);
    }
}

// Least prime p with p^((f-1)/ell) != 1 (mod f). The pow test is
// equivalent to chi(p) != 1 for any order-ell character mod f, so no
// primitive root is needed on this hot path.
uint64_t q1_for_conductor(uint64_t f, uint32_t ell, uint64_t q_cap) {
    const uint64_t e = (f - 1) / ell;
    const Modulus m{f};
    for (uint32_t p : small_primes_1k()) {
        if (p % f == 0) continue;
        if (pow_mod(p, e, m) != 1) return p;
    }
    for (uint64_t c = 1001; c < q_cap; c += 2) {
        if (!is_prime_u64(c) || c % f == 0) continue;
        if (pow_mod(c, e, m) != 1) return c;
    }
    throw Error("SearchExhausted",
                "no non-residue prime below " + std::to_string(q_cap) + " for f = " +
                    std::to_string(f));
}

struct SegmentOut {
    std::vector<std::pair<uint64_t, uint64_t>> fq;  // (conductor, q1), ascending
};

// Segments are computed by workers in any order and handed to `consume`
// strictly in ascending order. `segment_done(next_f)` fires after each
// segment has been fully consumed.
void scan_ordered(const SurveyConfig& cfg,
                  const std::function<void(uint64_t, uint64_t)>& consume,
                  const std::function<void(uint64_t)>& segment_done) {
    const uint64_t span = cfg.f_max - cfg.f_min;
    const uint64_t nseg = (span + cfg.segment_size - 1) / cfg.segment_size;
    const auto base = simple_sieve(static_cast<uint32_t>(isqrt_u64(cfg.f_max - 1)));

    std::mutex mu;
    std::condition_variable cv_space, cv_ready;
    std::map<uint64_t, SegmentOut> ready;
    uint64_t next_consume = 0;
    std::atomic<uint64_t> next_seg{0};
    std::exception_ptr err;
    const uint64_t window = uint64_t{cfg.workers} * 2 + 2;

    auto seg_bounds = [&](uint64_t k) {
        const uint64_t lo = cfg.f_min + k * cfg.segment_size;
        const uint64_t hi = std::min(lo + cfg.segment_size, cfg.f_max);
        return std::pair{lo, hi};
    };

    auto worker = [&] {
        std::vector<uint64_t> primes;
        for (;;) {
            const uint64_t k = next_seg.fetch_add(1);
            if (k >= nseg) return;
            {
                std::unique_lock lk(mu);
                cv_space.wait(lk, [&] { return err || k < next_consume + window; });
                if (err) return;
            }
            try {
                const auto [lo, hi] = seg_bounds(k);
                sieve_with_base(lo, hi, base, primes);
                SegmentOut out;
                for (uint64_t f : primes) {
                    if (f % cfg.ell != 1) continue;
                    out.fq.emplace_back(f, q1_for_conductor(f, cfg.ell, cfg.q_cap));
                }
                std::lock_guard lk(mu);
                ready.emplace(k, std::move(out));
                cv_ready.notify_all();
            } catch (...) {
                std::lock_guard lk(mu);
                if (!err) err = std::current_exception();
                cv_ready.notify_all();
                cv_space.notify_all();
                return;
            }
        }
    };

    const unsigned nworkers =
        static_cast<unsigned>(std::min<uint64_t>(cfg.workers, nseg ? nseg : 1));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);

    for (uint64_t k = 0; k < nseg; ++k) {
        SegmentOut out;
        {
            std::unique_lock lk(mu);
            cv_ready.wait(lk, [&] { return err || ready.count(k); });
            if (err) break;
            out = std::move(ready.at(k));
            ready.erase(k);
            next_consume = k + 1;
            cv_space.notify_all();
        }
        try {
            for (const auto& [f, q1] : out.fq) consume(f, q1);
            if (segment_done) segment_done(seg_bounds(k).second);
        } catch (...) {
            std::lock_guard lk(mu);
            if (!err) err = std::current_exception();
            cv_space.notify_all();
            break;
        }
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

void emit_finding(const ScanCallbacks& cb, const std::string& s) {
    if (cb.on_finding) {
        cb.on_finding(s);
    } else {
        std::cerr << "finding: " << s << "\n";
    }
}

// per-conductor empirical GRH check on the scan path
void check_q1_bound(const ScanCallbacks& cb, uint64_t f, uint64_t q1) {
    if (f < 100'000'000) return;
    const double b = bach_q1_bound(static_cast<double>(f));
    if (static_cast<double>(q1) >= b) {
        emit_finding(cb, "GRH bound violated for f = " + std::to_string(f) +
                             ": q1 = " + std::to_string(q1) + " >= " + std::to_string(b));
    }
}

struct Checkpoint {
    uint32_t ell = 0;
    uint64_t next_f = 0;
    uint64_t current_record = 0;
};

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Checkpoint cp;
    char buf[256];
    if (!in.getline(buf, sizeof(buf))) {
        throw Error("DomainError", "unreadable checkpoint file " + path);
    }
    unsigned long long ell = 0, nf = 0, rec = 0;
    if (std::sscanf(buf, "ell=%llu next_f=%llu current_record=%llu", &ell, &nf, &rec) != 3) {
        throw Error("DomainError", "malformed checkpoint file " + path);
    }
    cp.ell = static_cast<uint32_t>(ell);
    cp.next_f = nf;
    cp.current_record = rec;
    return cp;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("RangeError", "cannot write checkpoint " + tmp);
        out << "ell=" << cp.ell << " next_f=" << cp.next_f
            << " current_record=" << cp.current_record << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw Error("RangeError", "cannot rename checkpoint into place at " + path);
    }
}

}  // namespace

std::vector<uint64_t> primes_in_segment(uint64_t lo, uint64_t hi, uint64_t max_span) {
    if (hi < lo) throw Error("RangeError", "need lo <= hi");
    if (hi > kScanCap) throw Error("RangeError", "hi exceeds the sieve design range 1e12");
    if (hi - lo > max_span) throw Error("RangeError", "segment wider than the configured span");
    std::vector<uint64_t> out;
    if (hi <= lo) return out;
    const auto base = simple_sieve(hi >= 2 ? static_cast<uint32_t>(isqrt_u64(hi - 1)) : 1);
    sieve_with_base(lo, hi, base, out);
    return out;
}

std::vector<RecordEntry> scan_records(const SurveyConfig& cfg, const ScanCallbacks& cb) {
    validate(cfg);
    SurveyConfig run = cfg;
    uint64_t current = 0;
    if (!cfg.checkpoint_path.empty()) {
        if (auto cp = read_checkpoint(cfg.checkpoint_path)) {
            if (cp->ell != cfg.ell) {
                throw Error("DomainError", "checkpoint was written for ell = " +
                                               std::to_string(cp->ell));
            }
            run.f_min = std::max(run.f_min, cp->next_f);
            current = cp->current_record;
        }
    }
    std::vector<RecordEntry> records;
    if (run.f_min >= run.f_max) return records;  // resumed past the end

    scan_ordered(
        run,
        [&](uint64_t f, uint64_t q1) {
            check_q1_bound(cb, f, q1);
            if (q1 <= current) return;
            // independent confirmation through the character pipeline
            const OrderEllCharacter chr = build_character(run.ell, f);
            if (find_q1(chr) != q1) {
                throw Error("DomainError",
                            "record re-verification failed at f = " + std::to_string(f));
            }
            records.push_back({f, q1});
            current = q1;
            if (cb.on_record) cb.on_record(records.back());
        },
        [&](uint64_t next_f) {
            if (!run.checkpoint_path.empty()) {
                write_checkpoint(run.checkpoint_path, {run.ell, next_f, current});
            }
        });
    return records;
}

CeilingReport verify_q1_ceiling(const SurveyConfig& cfg, const ScanCallbacks& cb) {
    validate(cfg);
    if (!cfg.q1_ceiling) {
        throw Error("DomainError", "verification mode requires q1_ceiling");
    }
    CeilingReport rep;
    scan_ordered(
        cfg,
        [&](uint64_t f, uint64_t q1) {
            check_q1_bound(cb, f, q1);
            if (q1 > rep.max_q1) {
                rep.max_q1 = q1;
                rep.argmax_f = f;
            }
            if (q1 > *cfg.q1_ceiling) rep.violations.push_back({f, q1});
        },
        {});
    return rep;
}

RecordEntry spot_check(uint32_t ell, uint64_t f) {
    const OrderEllCharacter chr = build_character(ell, f);
    return {f, find_q1(chr)};
}

}  // namespace normeu
