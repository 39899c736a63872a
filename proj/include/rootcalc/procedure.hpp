#pragma once

#include "rootcalc/aahss.hpp"
#include "rootcalc/expr.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rootcalc {

struct CatalogError : std::runtime_error {
    CatalogError(const std::string& source, int line, const std::string& why);
    int line;
};

struct CatalogEntry {
    enum class Perm { Unknown, Permanent, NotPermanent };
    ExtName name;
    long stem = 0;
    int filtration = 0;
    std::string order;
    Perm perm = Perm::Unknown;
    TowerSet tower = TowerSet::None;
    std::optional<ExtName> lambda, mu;
    std::string provenance;
    int line = 0;
};

/*
 * Line format:  name | stem | filtration | order | flags | provenance
 * flags: comma list of perm, nonperm, tower1(lambda; mu), tower2(lambda; mu), or '-'.
 * tower1: alpha1 lambda = gamma and <gamma, alpha1 x (p-1)> = mu
 * tower2: <lambda, alpha1 x (p-1)> = gamma and alpha1 gamma = mu
 * Opaque labels (eta1) are declared by an entry whose name is the bare label
 * before any product uses them.  '@prime <p>' sets the prime.
 */
class Catalog {
public:
    static Catalog parse(std::istream& in, const std::string& source = "<catalog>", int p = 3);
    static Catalog load(const std::string& path);
    // $ROOTCALC_CATALOG, else the bundled p = 3 file
    static std::string default_path();

    int prime() const { return p_; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const ExtName& n) const;
    std::optional<ExtName> opaque(const std::string& label) const;
    ExtName name(const std::string& s) const;

private:
    int p_ = 3;
    std::vector<CatalogEntry> entries_;
};

// how condition (3) of the forward filter reads the congruence of n_i
enum class CongruenceMode {
    Stated,     // n_i = 0 or 1 mod q, candidate sits on cell -n_i
    CellForm,   // n_i = 0 or -1 mod q; forced cells that are not 0,-1 mod q get rejected
};

// where the backward filter puts a candidate
enum class KillerCellMode {
    StemMatched,  // cell chosen so the candidate sits one stem above beta[-N]
    Stated,       // n_i = -N + |alpha| - k_i + 1
};

struct Rejection {
    std::string name;
    std::string condition;
};

struct Candidates {
    std::vector<CellClass> classes;
    std::vector<const CatalogEntry*> entries;
    std::vector<Rejection> rejected;
    std::vector<std::string> warnings;
};

struct ProcedureInput {
    ExtName alpha;
    ExtName beta;
    long N = 0;
    // filtration bound; defaults to the filtration of beta
    std::optional<int> k;
    int bound() const { return k ? *k : beta.filtration(); }
};

Candidates step1_candidates(const ProcedureInput& in, const Catalog& cat, CongruenceMode mode = CongruenceMode::Stated);

struct LedgerRow {
    enum class Annotation { NotPermanent, Killed, Supports, Unresolved };
    CellClass candidate;
    Annotation annotation = Annotation::Unresolved;
    std::optional<DifferentialRecord> record;
    std::string subcase;
    std::vector<std::string> notes;

    std::string mark() const;  // (1), (2) or (?)
    bool operator==(const LedgerRow& o) const;
};

std::vector<LedgerRow> step23_annotate(const Candidates& c, const Catalog& cat, const ProcedureInput& in);

struct Step4Result {
    Candidates candidates;
    std::vector<DifferentialRecord> incoming;  // rule-engine records landing on beta[-N]
    std::optional<BetaSurvivalReport> beta_report;
};

Step4Result step4_candidates(const ProcedureInput& in, const Catalog& cat, KillerCellMode mode = KillerCellMode::StemMatched);

struct Ledger {
    int p = 3;
    ProcedureInput input;
    std::vector<LedgerRow> rows;
    bool operator==(const Ledger& o) const;
};

Ledger run_procedure(const ProcedureInput& in, const Catalog& cat, CongruenceMode mode = CongruenceMode::Stated);

enum class LedgerFormat { Text, Records, Table };
LedgerFormat parse_format(const std::string& s);
constexpr int kRecordSchema = 1;

void sort_rows(std::vector<LedgerRow>& rows);
std::string emit_ledger(const Ledger& l, LedgerFormat f);
// inverse of the Records format
Ledger read_ledger_records(const std::string& doc, const Catalog& cat);

}  // namespace rootcalc
