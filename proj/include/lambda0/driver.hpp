#ifndef LAMBDA0_DRIVER_HPP
#define LAMBDA0_DRIVER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lambda0/annihilator.hpp"
#include "lambda0/gras.hpp"
#include "lambda0/ideal.hpp"
#include "lambda0/quadfield.hpp"

namespace lambda0 {

struct RunConfig {
    uint64_t f_min = 0;
    uint64_t f_max = 0;
    unsigned level_max = 7;
    unsigned exp_start = 0;  // 0 = automatic (level + 2)
    unsigned primes = 64;
    unsigned window = 5;
    unsigned bits = 512;
    unsigned jobs = 1;
    std::string out;
    bool resume = false;
    std::string verify_lower = "auto";  // auto | gras | none
    std::string orientation = "auto";   // auto | gamma | gamma-inv

    /* the part of the config that determines journal content */
    std::string fingerprint() const;
};

struct CertificationInfo {
    unsigned primes_used = 0;   // consumed at the deepest level
    bool window_met = false;    // saturation window reached at every level
    std::string lower;          // "class-number@0" | "trivial@0" | "embeddings@m"
    int verify_level = -1;      // level of the verified lower bound
    unsigned a = 0;             // rigorous lower: #C_m >= 3^a
    bool lemma_applied = false;
    FinitenessWitness witness;  // valid when lemma_applied
    bool exact = false;         // C(f) = Lambda/J certified (lower == upper)
    bool certified = false;     // finiteness certified by some route
};

struct FieldResult {
    uint64_t f = 0;
    unsigned residue3 = 0;
    Variant variant = Variant::omega;
    bool resolved = false;
    std::string status;  // "ok" or "unresolved: <reason>"
    std::vector<std::vector<int64_t>> j_generators;  // symmetric lifts
    unsigned e = 0;       // coefficient exponent of the stored context
    unsigned n_stab = 0;
    unsigned tk = 0;
    unsigned order_log3 = 0;
    Orientation orientation = Orientation::gamma_inverse;
    CertificationInfo cert;
    double seconds = 0;

    /* rebuild the canonical ideal at level n_stab from the stored generators */
    TruncatedLambdaIdeal rebuild_ideal() const;
};

/* full pipeline for one discriminant: level loop with exponent escalation,
 * stabilization detection, and a finiteness certification route (rigorous
 * class-number/trivial lower bound first, unit-embedding verification when
 * that is not enough) */
FieldResult compute_field(const FundamentalDiscriminant& fd, const RunConfig& cfg);

/* fundamental discriminants in [f_min, f_max) */
std::vector<uint64_t> enumerate_discriminants(uint64_t f_min, uint64_t f_max);

/* scan the configured range; deterministic output order (ascending f)
 * independent of the parallel schedule; journal written to cfg.out when set
 * (appending when cfg.resume, skipping already-journaled discriminants) */
std::vector<FieldResult> scan_range(const RunConfig& cfg,
                                    const std::function<void(const FieldResult&)>& progress = {});

/* journal serialization: one JSON record per line, "#cfg " header */
std::string result_to_json(const FieldResult& r);
FieldResult result_from_json(const std::string& line);
void write_journal(std::ostream& os, const RunConfig& cfg, const std::vector<FieldResult>& rs);
std::vector<FieldResult> read_journal(std::istream& is, std::string* cfg_fingerprint = nullptr);

/* aggregate counts per residue class: (n_stab, k) cell -> count over the
 * results with C(f) nonzero; separate totals for C(f) = 0 and for the
 * maximal ideal (3, T) */
struct ClassTable {
    std::map<std::pair<unsigned, unsigned>, unsigned> cells;
    unsigned zero = 0;        // C(f) = 0
    unsigned maximal = 0;     // J = (3, T)
    unsigned unresolved = 0;
    unsigned total = 0;       // all fields in the class
    unsigned nonzero = 0;     // fields counted in `cells`
};

std::map<unsigned, ClassTable> aggregate_tables(const std::vector<FieldResult>& rs);
void print_tables(std::ostream& os, const std::map<unsigned, ClassTable>& tabs);

/* golden expectation list: lines "f; gen1, gen2, ...; n; k" with integer
 * polynomials in T ('^' powers); '#' comments */
struct GoldenEntry {
    uint64_t f = 0;
    std::vector<std::vector<int64_t>> gens;
    unsigned n = 0;
    unsigned k = 0;
};

std::vector<int64_t> parse_poly(const std::string& s);
std::vector<GoldenEntry> parse_golden(std::istream& is);

struct GoldenVerdict {
    uint64_t f = 0;
    bool found = false;
    bool ideal_match = false;  // equality of canonical forms, either orientation
    bool n_match = false;
    bool k_match = false;
    bool involuted = false;    // matched only after the orientation involution
    std::string note;
    bool pass() const { return found && ideal_match && n_match && k_match; }
};

std::vector<GoldenVerdict> golden_check(const std::vector<FieldResult>& rs,
                                        const std::vector<GoldenEntry>& entries);

} // namespace lambda0

#endif
