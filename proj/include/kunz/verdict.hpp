#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kunz/dsl.hpp"
#include "kunz/frobenius.hpp"

namespace kunz {

inline constexpr const char* kEngineVersion = "0.1.0";

// Flatness of alpha itself (A as an R-module), decided only on the
// module-finite presentations the engine can build.
enum class Flatness { Flat, NotFlat, NotDecided };

std::string to_string(Flatness f); // "flat" | "not-flat" | "not-decided"

// Unset optionals mean "not decided" (budget ran out before the field was
// computed).  The boolean fields never disagree with each other: a decided
// omega_zero != frob_surjective raises KunzViolation instead of filling in.
struct Verdict {
    std::string map_id;
    std::optional<bool> omega_zero;
    std::optional<bool> frob_surjective;
    std::optional<bool> frob_injective;
    std::optional<bool> frob_iso;
    std::optional<bool> iterate_coherent; // verdicts agree for e = 1..e_max
    Flatness flatness = Flatness::NotDecided;
    std::string flatness_note;
    std::string classification;
    std::vector<std::string> witnesses;
    bool complete = false;
};

// Pure function of the decided fields; never looks at the map.
std::string classification_label(const std::optional<bool>& omega_zero,
                                 const std::optional<bool>& frob_iso, Flatness flatness);

// A as an R-module via Fitting ideals, constant rank 0..free_rank.  Outside
// the module-finite case the answer is NotDecided, never a guess.
Flatness restricted_flatness(const AlgebraMap& alpha, std::string& note,
                             std::vector<std::string>& witnesses, Budget& budget);

Verdict classify(const AlgebraMap& alpha, unsigned e_max, Budget& budget);

// ---------------------------------------------------------------------------
// Corpus.
// ---------------------------------------------------------------------------

struct ExpectedVerdict {
    std::optional<bool> omega_zero;
    std::optional<bool> frob_surjective;
    std::optional<bool> frob_injective;
    std::optional<bool> frob_iso;
    std::optional<Flatness> flatness;
    std::string classification_contains; // empty = unconstrained
};

// extras certify case-specific side facts; they append human-readable notes
// and return false on any miss.
using CaseExtras = std::function<bool(const Elaboration&, std::vector<std::string>&, Budget&)>;

struct CorpusCase {
    std::string name;
    std::string dsl_source; // declares exactly one map; classify runs on it
    std::string notes;
    std::vector<std::string> colimit_claims; // printed, never machine-checked
    ExpectedVerdict expected;
    CaseExtras extras;
};

// Fixed registry, sorted by name.
const std::vector<CorpusCase>& corpus();

// Truncation families behind the registry entries, exposed with their level
// parameters so harnesses can sweep them.
CorpusCase idemquot_trunc(unsigned n);                 // p = 3, 2-power root tower
CorpusCase frobquot_trunc(unsigned n);                 // p = 2, p-power root tower
CorpusCase perftower_trunc(unsigned stage, unsigned level); // p = 2
CorpusCase pbasis_field(unsigned n);                   // p = 2

// Raw certified facts for the truncation families.
struct IdemquotFacts {
    std::uint64_t dim_frobenius_quotient = 0; // fp-dim of R/a^[p]
    std::uint64_t dim_quotient = 0;           // fp-dim of R/a
    bool canonical_injective = true;          // R/a^[p] -> R/a
    bool ideal_square_equal = true;           // a^2 == a
};
IdemquotFacts idemquot_facts(Budget& budget);

struct FrobquotFacts {
    bool deficient = false;              // a^[p] != a
    std::uint64_t witness_degree = 0;    // degree of nf(generator) mod a^[p]
    std::string witness;
};
FrobquotFacts frobquot_facts(unsigned n, Budget& budget);

struct PerftowerFacts {
    bool nilpotent_witness = false;      // nonzero residue with zero p-th power
    bool interior_surjective = false;    // interior roots land in the p-th powers
    bool transition_well_defined = false;
};
PerftowerFacts perftower_facts(unsigned stage, unsigned level, Budget& budget);

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct CaseResult {
    std::string name;
    std::string status; // pass | fail | not-decided
    Verdict verdict;
    std::vector<std::string> notes;
    std::vector<std::string> colimit_claims;
    std::vector<std::string> mismatches;
    std::int64_t millis = 0;
};

// Fresh budget per case; KunzViolation and InternalError halt the run.
CaseResult run_case(const CorpusCase& c, unsigned e_max, std::uint64_t budget_limit);

struct CorpusReport {
    std::vector<CaseResult> results; // sorted by case name
    bool all_pass = false;
};

// filter = substring of the case name; empty selects everything.
CorpusReport corpus_run(const std::string& filter, unsigned e_max, std::uint64_t budget_limit);

// Biconditional table: omega_zero vs frob_surjective per case.
std::string kunz_crosscheck_table(const CorpusReport& report);

// Verdict fields as a stable-key JSON object; unset optionals become null.
nlohmann::ordered_json verdict_to_json(const Verdict& v);

// One JSON document, stable key order; millis only when timings is set so
// that same-seed runs stay byte-identical.
std::string report_to_json(const CorpusReport& report, std::uint64_t seed, bool timings);

} // namespace kunz
