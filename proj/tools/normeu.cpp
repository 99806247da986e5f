// normeu — command-line surface for the norm-Euclidean exclusion toolkit.
//
// Subcommands: char, nonres, exclude, bounds, ctable, audit, records,
// verify-q1, spot. Every data stream is deterministic: identical
// invocations produce byte-identical stdout; timing and findings go to
// stderr.
//
// Exit codes: 0 success (for `exclude`: Excluded; for `audit`: all steps
// pass), 1 usage error, 2 mathematically negative outcome (Inconclusive,
// failed audit step, ceiling violation, reference-table mismatch),
// 3 computational error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "normeu/bounds.hpp"
#include "normeu/characters.hpp"
#include "normeu/exclusion.hpp"
#include "normeu/modmath.hpp"
#include "normeu/nonresidue.hpp"
#include "normeu/survey.hpp"

using json = nlohmann::ordered_json;
using namespace normeu;

namespace {

std::string fd(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw CLI::ValidationError("--format must be text, csv or json");
}

unsigned default_workers() {
    if (const char* env = std::getenv("NORMEU_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::trunc);
            if (!file) throw Error("RangeError", "cannot open output file " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

json to_json(const CharValue& v) {
    json j;
    j["tag"] = v.is_zero() ? "Zero" : "Root";
    if (!v.is_zero()) j["exponent"] = v.exponent;
    return j;
}

json to_json(const NonResidueData& d) {
    return json{{"q1", d.q1}, {"q2", d.q2}, {"omega_exponent", d.omega_exponent}, {"r", d.r}};
}

json to_json(const InequalityRecord& iq) {
    return json{{"label", iq.label},
                {"lhs", iq.lhs},
                {"rhs", iq.rhs},
                {"relation", iq.strict ? "<" : "<="},
                {"holds", iq.holds}};
}

const char* match_name(TableMatch m) {
    switch (m) {
        case TableMatch::Both: return "both";
        case TableMatch::Log6: return "log6";
        case TableMatch::Bach: return "bach";
        default: return "neither";
    }
}

void emit_findings_stderr(const std::vector<std::string>& findings) {
    for (const auto& s : findings) std::cerr << "finding: " << s << "\n";
}

// ---------------------------------------------------------------- char

int run_char(uint32_t ell, uint64_t f, uint64_t n, Format fmt) {
    const auto chr = build_character(ell, f);
    const auto v = chr.eval(n);
    switch (fmt) {
        case Format::Text:
            std::cout << "ell=" << ell << " f=" << f << " n=" << n
                      << " chi=" << (v.is_zero() ? "Zero" : "Root");
            if (!v.is_zero()) std::cout << " exponent=" << v.exponent;
            std::cout << "\n";
            break;
        case Format::Csv:
            std::cout << "ell,f,n,tag,exponent\n"
                      << ell << "," << f << "," << n << ","
                      << (v.is_zero() ? "Zero" : "Root") << ",";
            if (!v.is_zero()) std::cout << v.exponent;
            std::cout << "\n";
            break;
        case Format::Json: {
            json j{{"ell", ell}, {"f", f}, {"n", n}, {"value", to_json(v)}};
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return 0;
}

// -------------------------------------------------------------- nonres

int run_nonres(uint32_t ell, uint64_t f, Format fmt) {
    const auto chr = build_character(ell, f);
    const auto d = nonresidue_data(chr);
    emit_findings_stderr(grh_findings(chr, d));
    switch (fmt) {
        case Format::Text:
            std::cout << "ell=" << ell << " f=" << f << " q1=" << d.q1 << " q2=" << d.q2
                      << " r=" << d.r << " omega_exponent=" << d.omega_exponent << "\n";
            break;
        case Format::Csv:
            std::cout << "ell,f,q1,q2,r,omega_exponent\n"
                      << ell << "," << f << "," << d.q1 << "," << d.q2 << "," << d.r << ","
                      << d.omega_exponent << "\n";
            break;
        case Format::Json: {
            json j{{"ell", ell}, {"f", f}, {"data", to_json(d)}};
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return 0;
}

// ------------------------------------------------------------- exclude

int run_exclude(uint32_t ell, uint64_t f, Format fmt) {
    const auto v = evaluate_exclusion(ell, f);
    emit_findings_stderr(v.findings);
    const char* outcome = v.excluded() ? "Excluded" : "Inconclusive";
    switch (fmt) {
        case Format::Text:
            std::cout << "ell=" << v.ell << " f=" << v.f << " outcome=" << outcome;
            if (v.excluded()) std::cout << " fired=" << v.fired_condition;
            std::cout << "\n";
            if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
            if (v.data) {
                std::cout << "q1=" << v.data->q1 << " q2=" << v.data->q2 << " r=" << v.data->r
                          << " omega_exponent=" << v.data->omega_exponent << "\n";
            }
            for (const auto& iq : v.witnesses) {
                std::cout << "witness: " << iq.label << " : " << fd(iq.lhs)
                          << (iq.strict ? " < " : " <= ") << fd(iq.rhs) << " : "
                          << (iq.holds ? "holds" : "fails") << "\n";
            }
            for (const auto& s : v.failure_log) std::cout << "failed " << s << "\n";
            break;
        case Format::Csv:
            std::cout << "ell,f,outcome,fired_condition,q1,q2,r,omega_exponent\n"
                      << v.ell << "," << v.f << "," << outcome << "," << v.fired_condition << ",";
            if (v.data) {
                std::cout << v.data->q1 << "," << v.data->q2 << "," << v.data->r << ","
                          << v.data->omega_exponent;
            } else {
                std::cout << ",,,";
            }
            std::cout << "\n";
            break;
        case Format::Json: {
            json j{{"ell", v.ell}, {"f", v.f}, {"outcome", outcome}};
            j["fired_condition"] = v.excluded() ? json(v.fired_condition) : json(nullptr);
            j["data"] = v.data ? to_json(*v.data) : json(nullptr);
            json w = json::array();
            for (const auto& iq : v.witnesses) w.push_back(to_json(iq));
            j["witnesses"] = w;
            j["failure_log"] = v.failure_log;
            j["note"] = v.note;
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return v.excluded() ? 0 : 2;
}

// -------------------------------------------------------------- bounds

int run_bounds(uint32_t ell, uint64_t f, Format fmt) {
    const double fv = static_cast<double>(f);
    const auto& c = analytic_constants();
    std::optional<double> q1b, q2b, rb;
    if (fv >= 1e8) q1b = bach_q1_bound(fv);
    if (fv >= 1e9) q2b = q2_bound(fv);
    if (fv >= 1e8) rb = r_bound(ell, fv);
    const double chi_half = zero_sum_bound_chi(fv, 0.5);
    const double k_half = zero_sum_bound_K(ell, fv, 0.5);

    auto opt = [&](const std::optional<double>& v) { return v ? fd(*v) : std::string(); };
    switch (fmt) {
        case Format::Text:
            std::cout << "psi_Q(3/2) = " << fd(c.psiQ_3_2) << "\n"
                      << "zeta'(2)/zeta(2) = " << fd(c.zeta_log_deriv_2) << "\n"
                      << "gamma = " << fd(c.gamma_euler) << "\n"
                      << "bach_q1_bound(f) = " << (q1b ? fd(*q1b) : "n/a (needs f >= 1e8)") << "\n"
                      << "q2_bound(f) = " << (q2b ? fd(*q2b) : "n/a (needs f >= 1e9)") << "\n"
                      << "r_bound(ell, f) = " << (rb ? fd(*rb) : "n/a (needs f >= 1e8)") << "\n"
                      << "zero_sum_bound_chi(f, 1/2) = " << fd(chi_half) << "\n"
                      << "zero_sum_bound_K(ell, f, 1/2) = " << fd(k_half) << "\n";
            break;
        case Format::Csv:
            std::cout << "name,value\n"
                      << "psi_Q_3_2," << fd(c.psiQ_3_2) << "\n"
                      << "zeta_log_deriv_2," << fd(c.zeta_log_deriv_2) << "\n"
                      << "gamma," << fd(c.gamma_euler) << "\n"
                      << "bach_q1_bound," << opt(q1b) << "\n"
                      << "q2_bound," << opt(q2b) << "\n"
                      << "r_bound," << opt(rb) << "\n"
                      << "zero_sum_bound_chi_half," << fd(chi_half) << "\n"
                      << "zero_sum_bound_K_half," << fd(k_half) << "\n";
            break;
        case Format::Json: {
            auto jopt = [](const std::optional<double>& v) {
                return v ? json(*v) : json(nullptr);
            };
            json j{{"ell", ell},
                   {"f", f},
                   {"psi_Q_3_2", c.psiQ_3_2},
                   {"zeta_log_deriv_2", c.zeta_log_deriv_2},
                   {"gamma", c.gamma_euler},
                   {"bach_q1_bound", jopt(q1b)},
                   {"q2_bound", jopt(q2b)},
                   {"r_bound", jopt(rb)},
                   {"zero_sum_bound_chi_half", chi_half},
                   {"zero_sum_bound_K_half", k_half}};
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return 0;
}

// -------------------------------------------------------------- ctable

int run_ctable(std::vector<uint32_t> ells, Format fmt) {
    if (ells.empty()) {
        const auto all = table_ells();
        ells.assign(all.begin(), all.end());
    }
    const auto reports = derive_C_table(ells);
    bool all_match = true;
    for (const auto& r : reports) {
        if (r.match_flag == TableMatch::Neither) all_match = false;
        if (!r.min_matches_reference()) {
            std::cerr << "finding: ell=" << r.ell << " min crossover 10^"
                      << std::min(r.crossover_log6, r.crossover_bach)
                      << " differs from the reference 10^" << r.reference_pow10 << "\n";
        }
    }
    switch (fmt) {
        case Format::Text:
            for (const auto& r : reports) {
                std::cout << "ell=" << r.ell << " crossover_log6=10^" << r.crossover_log6
                          << " crossover_bach=10^" << r.crossover_bach << " reference=10^"
                          << r.reference_pow10 << " match=" << match_name(r.match_flag) << "\n";
            }
            break;
        case Format::Csv:
            std::cout << "ell,crossover_log6,crossover_bach,reference,match\n";
            for (const auto& r : reports) {
                std::cout << r.ell << "," << r.crossover_log6 << "," << r.crossover_bach << ","
                          << r.reference_pow10 << "," << match_name(r.match_flag) << "\n";
            }
            break;
        case Format::Json: {
            json arr = json::array();
            for (const auto& r : reports) {
                arr.push_back(json{{"ell", r.ell},
                                   {"crossover_log6", r.crossover_log6},
                                   {"crossover_bach", r.crossover_bach},
                                   {"reference", r.reference_pow10},
                                   {"match", match_name(r.match_flag)}});
            }
            std::cout << arr.dump() << "\n";
            break;
        }
    }
    return all_match ? 0 : 2;
}

// --------------------------------------------------------------- audit

int run_audit(const std::string& which, uint32_t ell, uint64_t f, Format fmt) {
    ProofAuditReport rep;
    if (which == "q2") {
        rep = audit_q2_proof(static_cast<double>(f));
    } else if (which == "r") {
        rep = audit_r_proof(ell, static_cast<double>(f));
    } else {
        throw CLI::ValidationError("--which must be q2 or r");
    }
    const char* ctx = rep.context == AuditContext::Q2Proof ? "q2" : "r";
    switch (fmt) {
        case Format::Text:
            std::cout << "context=" << ctx;
            if (rep.context == AuditContext::RProof) std::cout << " ell=" << rep.ell;
            std::cout << " f=" << fd(rep.f) << " x=" << fd(rep.x) << "\n";
            for (const auto& s : rep.steps) {
                std::cout << (s.pass ? "[ok]   " : "[FAIL] ") << s.label << " : recomputed "
                          << fd(s.recomputed) << " claimed " << fd(s.claimed) << "\n";
            }
            std::cout << (rep.all_pass() ? "all steps pass" : "chain broken") << "\n";
            break;
        case Format::Csv:
            std::cout << "label,recomputed,claimed,pass\n";
            for (const auto& s : rep.steps) {
                std::cout << "\"" << s.label << "\"," << fd(s.recomputed) << "," << fd(s.claimed)
                          << "," << (s.pass ? "true" : "false") << "\n";
            }
            break;
        case Format::Json: {
            json steps = json::array();
            for (const auto& s : rep.steps) {
                steps.push_back(json{{"label", s.label},
                                     {"recomputed", s.recomputed},
                                     {"claimed", s.claimed},
                                     {"pass", s.pass}});
            }
            json j{{"context", ctx}, {"f", rep.f}, {"x", rep.x}, {"steps", steps},
                   {"all_pass", rep.all_pass()}};
            if (rep.context == AuditContext::RProof) j["ell"] = rep.ell;
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return rep.all_pass() ? 0 : 2;
}

// ------------------------------------------------------------- records

int run_records(const SurveyConfig& cfg, Format fmt, const std::string& out_path, bool verbose) {
    OutStream out(out_path);
    const auto t0 = std::chrono::steady_clock::now();

    ScanCallbacks cb;
    cb.on_finding = [](const std::string& s) { std::cerr << "finding: " << s << "\n"; };
    if (fmt == Format::Text) {
        cb.on_record = [&](const RecordEntry& r) {
            out.get() << "Record: f=" << r.f << ", q1=" << r.q1 << "\n";
            out.get().flush();
        };
    } else if (fmt == Format::Csv) {
        out.get() << "f,q1\n";
        cb.on_record = [&](const RecordEntry& r) {
            out.get() << r.f << "," << r.q1 << "\n";
            out.get().flush();
        };
    }
    const auto records = scan_records(cfg, cb);
    if (fmt == Format::Json) {
        json arr = json::array();
        for (const auto& r : records) arr.push_back(json{{"f", r.f}, {"q1", r.q1}});
        out.get() << arr.dump() << "\n";
    }
    if (verbose) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << "scanned [" << cfg.f_min << ", " << cfg.f_max << ") with " << cfg.workers
                  << " worker(s) in " << ms << " ms, " << records.size() << " record(s)\n";
    }
    return 0;
}

// ----------------------------------------------------------- verify-q1

int run_verify(const SurveyConfig& cfg, Format fmt, const std::string& out_path, bool verbose) {
    OutStream out(out_path);
    const auto t0 = std::chrono::steady_clock::now();
    ScanCallbacks cb;
    cb.on_finding = [](const std::string& s) { std::cerr << "finding: " << s << "\n"; };
    const auto rep = verify_q1_ceiling(cfg, cb);
    switch (fmt) {
        case Format::Text:
            out.get() << "max_q1=" << rep.max_q1 << " at f=" << rep.argmax_f
                      << " violations=" << rep.violations.size() << "\n";
            for (const auto& v : rep.violations) {
                out.get() << "violation: f=" << v.f << " q1=" << v.q1 << "\n";
            }
            break;
        case Format::Csv:
            out.get() << "max_q1,argmax_f,violations\n"
                      << rep.max_q1 << "," << rep.argmax_f << "," << rep.violations.size() << "\n";
            break;
        case Format::Json: {
            json viol = json::array();
            for (const auto& v : rep.violations) viol.push_back(json{{"f", v.f}, {"q1", v.q1}});
            json j{{"max_q1", rep.max_q1}, {"argmax_f", rep.argmax_f}, {"violations", viol}};
            out.get() << j.dump() << "\n";
            break;
        }
    }
    if (verbose) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << "scanned [" << cfg.f_min << ", " << cfg.f_max << ") in " << ms << " ms\n";
    }
    return rep.violations.empty() ? 0 : 2;
}

// ---------------------------------------------------------------- spot

int run_spot(uint32_t ell, uint64_t f, Format fmt) {
    const auto r = spot_check(ell, f);
    switch (fmt) {
        case Format::Text:
            std::cout << "Record: f=" << r.f << ", q1=" << r.q1 << "\n";
            break;
        case Format::Csv:
            std::cout << "f,q1\n" << r.f << "," << r.q1 << "\n";
            break;
        case Format::Json:
            std::cout << json{{"f", r.f}, {"q1", r.q1}}.dump() << "\n";
            break;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "toolkit for norm-Euclidean exclusion computations on Galois fields of odd prime degree"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "run metadata on stderr");

    int exit_code = 0;

    // char
    uint32_t c_ell = 3;
    uint64_t c_f = 0, c_n = 0;
    std::string c_fmt = "text";
    auto* sub_char = app.add_subcommand("char", "evaluate the order-ell character at n");
    sub_char->add_option("--ell", c_ell, "odd prime order")->required();
    sub_char->add_option("--f", c_f, "prime conductor, 1 mod ell")->required();
    sub_char->add_option("--n", c_n, "argument")->required();
    sub_char->add_option("--format", c_fmt, "text|csv|json");
    sub_char->callback([&] { exit_code = run_char(c_ell, c_f, c_n, parse_format(c_fmt)); });

    // nonres
    uint32_t n_ell = 3;
    uint64_t n_f = 0;
    std::string n_fmt = "text";
    auto* sub_nonres = app.add_subcommand("nonres", "least inert primes q1 < q2 and auxiliary r");
    sub_nonres->add_option("--ell", n_ell)->required();
    sub_nonres->add_option("--f", n_f)->required();
    sub_nonres->add_option("--format", n_fmt, "text|csv|json");
    sub_nonres->callback([&] { exit_code = run_nonres(n_ell, n_f, parse_format(n_fmt)); });

    // exclude
    uint32_t e_ell = 3;
    uint64_t e_f = 0;
    std::string e_fmt = "text";
    auto* sub_excl = app.add_subcommand(
        "exclude", "decide non-norm-Euclideanity (exit 0) or report Inconclusive (exit 2)");
    sub_excl->add_option("--ell", e_ell)->required();
    sub_excl->add_option("--f", e_f)->required();
    sub_excl->add_option("--format", e_fmt, "text|csv|json");
    sub_excl->callback([&] { exit_code = run_exclude(e_ell, e_f, parse_format(e_fmt)); });

    // bounds
    uint32_t b_ell = 3;
    uint64_t b_f = 0;
    std::string b_fmt = "text";
    auto* sub_bounds =
        app.add_subcommand("bounds", "analytic constants and conditional bound values");
    sub_bounds->add_option("--ell", b_ell)->required();
    sub_bounds->add_option("--f", b_f)->required();
    sub_bounds->add_option("--format", b_fmt, "text|csv|json");
    sub_bounds->callback([&] { exit_code = run_bounds(b_ell, b_f, parse_format(b_fmt)); });

    // ctable
    std::vector<uint32_t> t_ells;
    std::string t_fmt = "text";
    auto* sub_ctable = app.add_subcommand(
        "ctable", "derive conductor thresholds and compare with the reference table");
    sub_ctable->add_option("--ell", t_ells, "restrict to these odd primes (default: all below 100)");
    sub_ctable->add_option("--format", t_fmt, "text|csv|json");
    sub_ctable->callback([&] { exit_code = run_ctable(t_ells, parse_format(t_fmt)); });

    // audit
    std::string a_which;
    uint32_t a_ell = 3;
    uint64_t a_f = 0;
    std::string a_fmt = "text";
    auto* sub_audit =
        app.add_subcommand("audit", "replay a bound-proof inequality chain step by step");
    sub_audit->add_option("--which", a_which, "q2 or r")->required();
    sub_audit->add_option("--ell", a_ell, "odd prime (r chain only)");
    sub_audit->add_option("--f", a_f)->required();
    sub_audit->add_option("--format", a_fmt, "text|csv|json");
    sub_audit->callback([&] { exit_code = run_audit(a_which, a_ell, a_f, parse_format(a_fmt)); });

    // records
    SurveyConfig r_cfg;
    r_cfg.workers = default_workers();
    std::string r_fmt = "text", r_out, r_checkpoint;
    auto* sub_rec =
        app.add_subcommand("records", "scan a conductor range and emit record values of q1");
    sub_rec->add_option("--ell", r_cfg.ell, "odd prime order (default 3)");
    sub_rec->add_option("--min", r_cfg.f_min, "range start (default 2)");
    sub_rec->add_option("--max", r_cfg.f_max, "range end, exclusive")->required();
    sub_rec->add_option("--workers", r_cfg.workers,
                        "worker threads (default $NORMEU_WORKERS or 1)");
    sub_rec->add_option("--segment-size", r_cfg.segment_size,
                        "sieve segment length (default 2^22)");
    sub_rec->add_option("--checkpoint", r_checkpoint, "resumable checkpoint file");
    sub_rec->add_option("--format", r_fmt, "text|csv|json");
    sub_rec->add_option("--out", r_out, "write the data stream to a file instead of stdout");
    sub_rec->callback([&] {
        r_cfg.checkpoint_path = r_checkpoint;
        exit_code = run_records(r_cfg, parse_format(r_fmt), r_out, verbose);
    });

    // verify-q1
    SurveyConfig v_cfg;
    v_cfg.workers = default_workers();
    uint64_t v_ceiling = 0;
    std::string v_fmt = "text", v_out;
    auto* sub_ver = app.add_subcommand("verify-q1", "scan a range and check q1 against a ceiling");
    sub_ver->add_option("--ell", v_cfg.ell);
    sub_ver->add_option("--min", v_cfg.f_min);
    sub_ver->add_option("--max", v_cfg.f_max)->required();
    sub_ver->add_option("--ceiling", v_ceiling, "expected upper bound on q1")->required();
    sub_ver->add_option("--workers", v_cfg.workers);
    sub_ver->add_option("--segment-size", v_cfg.segment_size);
    sub_ver->add_option("--format", v_fmt, "text|csv|json");
    sub_ver->add_option("--out", v_out);
    sub_ver->callback([&] {
        v_cfg.q1_ceiling = v_ceiling;
        exit_code = run_verify(v_cfg, parse_format(v_fmt), v_out, verbose);
    });

    // spot
    uint32_t s_ell = 3;
    uint64_t s_f = 0;
    std::string s_fmt = "text";
    auto* sub_spot = app.add_subcommand("spot", "q1 for a single conductor");
    sub_spot->add_option("--ell", s_ell)->required();
    sub_spot->add_option("--f", s_f)->required();
    sub_spot->add_option("--format", s_fmt, "text|csv|json");
    sub_spot->callback([&] { exit_code = run_spot(s_ell, s_f, parse_format(s_fmt)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
