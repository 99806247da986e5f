#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "normeu/errors.hpp"

namespace normeu {

// Range scan over prime conductors f = 1 (mod ell), computing the least
// inert prime q1 for each. Work is split into segments handled by
// independent workers; results are replayed in ascending conductor order
// by a single reducer, so record extraction and all reports are
// deterministic regardless of worker count or segment size.
struct SurveyConfig {
    uint32_t ell = 3;
    uint64_t f_min = 2;  // the record list conventionally starts from the
                         // smallest conductor; 2 scans everything
    uint64_t f_max = 0;
    uint64_t segment_size = uint64_t{1} << 22;
    unsigned workers = 1;
    std::optional<uint64_t> q1_ceiling;  // set for verification mode
    std::string checkpoint_path;         // empty disables checkpointing
    uint64_t q_cap = 1'000'000;          // q1 search cap per conductor
};

struct RecordEntry {
    uint64_t f = 0;
    uint64_t q1 = 0;
};

// Exactly the primes in [lo, hi), ascending. The span is capped (the
// segment contract) and hi must stay within the sieve's design range of
// 10^12. (10, 10) is an empty interval, not an error.
std::vector<uint64_t> primes_in_segment(uint64_t lo, uint64_t hi,
                                        uint64_t max_span = uint64_t{1} << 22);

struct ScanCallbacks {
    // invoked in ascending f as records are confirmed
    std::function<void(const RecordEntry&)> on_record;
    // empirical GRH-bound violations; defaults to stderr when unset
    std::function<void(const std::string&)> on_finding;
};

// Walks the range and keeps every (f, q1) whose q1 strictly exceeds all
// previous values. Each emitted record is re-verified through the full
// character pipeline before it is published. With a checkpoint path the
// scan resumes from the stored position and rewrites the checkpoint
// atomically after every completed segment
// ("ell=<l> next_f=<f> current_record=<q1>").
std::vector<RecordEntry> scan_records(const SurveyConfig& cfg, const ScanCallbacks& cb = {});

struct CeilingReport {
    uint64_t max_q1 = 0;
    uint64_t argmax_f = 0;  // first conductor attaining max_q1
    std::vector<RecordEntry> violations;
};

// Scans the range and reports the maximum q1, where it occurs, and every
// conductor whose q1 exceeds cfg.q1_ceiling.
CeilingReport verify_q1_ceiling(const SurveyConfig& cfg, const ScanCallbacks& cb = {});

// Single-conductor evaluation; validation errors propagate from
// character construction.
RecordEntry spot_check(uint32_t ell, uint64_t f);

}  // namespace normeu
