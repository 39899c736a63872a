#include "rootcalc/procedure.hpp"

#include <algorithm>
#include <sstream>

namespace rootcalc {

namespace {

long pmod(long a, long m) { return Cell::mod(a, m); }

bool valid_cell(long n, int q) {
    long r = pmod(n, q);
    return r == 0 || r == q - 1;
}

}  // namespace

Candidates step1_candidates(const ProcedureInput& in, const Catalog& cat, CongruenceMode mode) {
    int p = cat.prime(), q = 2 * (p - 1);
    (void)Cell(-in.N, p);
    long a = in.alpha.stem(), b = in.beta.stem();
    int k = in.bound();
    Candidates out;
    bool window_nonempty = false;
    for (auto& e : cat.entries()) {
        std::string nm = e.name.str();
        if (!(p * a < e.stem && e.stem < b)) {
            out.rejected.push_back({nm, "stem outside (p|alpha|, |beta|)"});
            continue;
        }
        window_nonempty = true;
        long n = e.stem - a + 1;
        long r = pmod(n, q);
        bool congruent = mode == CongruenceMode::Stated ? (r == 0 || r == 1) : (r == 0 || r == q - 1);
        if (!congruent) {
            out.rejected.push_back({nm, "n_i = " + std::to_string(n) + " has the wrong residue mod q"});
            continue;
        }
        if (!valid_cell(-n, q)) {
            out.rejected.push_back({nm, "forced cell " + std::to_string(-n) + " is not 0 or -1 mod q"});
            continue;
        }
        int need = r == 0 ? k + 1 : k;
        if (!(e.filtration > need)) {
            out.rejected.push_back({nm, "filtration " + std::to_string(e.filtration) + " <= " + std::to_string(need)});
            continue;
        }
        out.classes.push_back(at(e.name, -n, p));
        out.entries.push_back(&e);
    }
    if (!window_nonempty) {
        std::ostringstream os;
        os << "catalog has no entries with stem in (" << p * a << ", " << b << ")";
        out.warnings.push_back(os.str());
    }
    return out;
}

std::string LedgerRow::mark() const {
    switch (annotation) {
    case Annotation::NotPermanent: return "(1)";
    case Annotation::Killed:
    case Annotation::Supports: return "(2)";
    case Annotation::Unresolved: return "(?)";
    }
    return "(?)";
}

bool LedgerRow::operator==(const LedgerRow& o) const {
    if (!(candidate == o.candidate) || annotation != o.annotation || subcase != o.subcase || notes != o.notes)
        return false;
    if (record.has_value() != o.record.has_value())
        return false;
    return !record || record->str() == o.record->str();
}

std::vector<LedgerRow> step23_annotate(const Candidates& c, const Catalog& cat, const ProcedureInput& in) {
    int p = cat.prime();
    std::vector<LedgerRow> rows;
    for (size_t i = 0; i < c.classes.size(); ++i) {
        const CellClass& cc = c.classes[i];
        const CatalogEntry* e = i < c.entries.size() ? c.entries[i] : cat.find(cc.name);
        LedgerRow row;
        row.candidate = cc;
        if (e && e->perm == CatalogEntry::Perm::NotPermanent) {
            row.annotation = LedgerRow::Annotation::NotPermanent;
        } else if (e && e->tower != TowerSet::None) {
            auto v = beta_tower_classify(cc.name, *e->lambda, *e->mu, e->tower, cc.cell.n(), p);
            if (v.kind == TowerVerdict::Kind::NotApplicable) {
                row.notes.push_back("tower flags present but no verdict: " + v.subcase);
            } else {
                row.annotation = v.kind == TowerVerdict::Kind::Killed ? LedgerRow::Annotation::Killed
                                                                      : LedgerRow::Annotation::Supports;
                row.record = v.record;
                row.subcase = v.subcase;
                long hi = v.record->source.cell.n(), lo = v.record->target.cell.n();
                if (lo < -in.N && -in.N < hi)
                    row.notes.push_back("unresolved: this differential crosses " + in.beta.str() + "[" +
                                        Cell(-in.N, p).str() + "]; whether it persists depends on the Toda bracket <alpha1, p, " +
                                        in.beta.str() + ">, which is not evaluated");
            }
        } else {
            row.notes.push_back("no permanence or tower data in the catalog");
        }
        rows.push_back(std::move(row));
    }
    sort_rows(rows);
    return rows;
}

Step4Result step4_candidates(const ProcedureInput& in, const Catalog& cat, KillerCellMode mode) {
    int p = cat.prime(), q = 2 * (p - 1);
    Cell top(-in.N, p);
    long a = in.alpha.stem(), b = in.beta.stem();
    int k = in.bound();
    int smax = top.top() ? k - 1 : k;
    Step4Result res;
    CellClass target = at(in.beta, -in.N, p);
    for (auto& e : cat.entries()) {
        std::string nm = e.name.str();
        if (e.stem > b) {
            res.candidates.rejected.push_back({nm, "stem above |beta|"});
            continue;
        }
        if (e.filtration > smax) {
            res.candidates.rejected.push_back({nm, "filtration above " + std::to_string(smax)});
            continue;
        }
        long n = mode == KillerCellMode::StemMatched ? b - in.N + 1 - e.stem : -in.N + a - e.stem + 1;
        if (!valid_cell(n, q)) {
            res.candidates.rejected.push_back({nm, "cell " + std::to_string(n) + " is not 0 or -1 mod q"});
            continue;
        }
        CellClass cc = at(e.name, n, p);
        res.candidates.classes.push_back(cc);
        res.candidates.entries.push_back(&e);
        for (auto& r : all_rules(cc))
            if (r.target == target)
                res.incoming.push_back(r);
    }
    if (in.beta.kind() == ExtName::Kind::Beta && top.top()) {
        const Atom& at0 = in.beta.factors().begin()->first;
        res.beta_report = beta_not_killed(at0.i, at0.j, top.m(), p);
    }
    return res;
}

bool Ledger::operator==(const Ledger& o) const {
    return p == o.p && input.alpha == o.input.alpha && input.beta == o.input.beta && input.N == o.input.N &&
           input.bound() == o.input.bound() && rows == o.rows;
}

Ledger run_procedure(const ProcedureInput& in, const Catalog& cat, CongruenceMode mode) {
    Ledger l;
    l.p = cat.prime();
    l.input = in;
    l.rows = step23_annotate(step1_candidates(in, cat, mode), cat, in);
    return l;
}

}  // namespace rootcalc
