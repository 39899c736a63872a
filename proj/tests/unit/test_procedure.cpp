#include "doctest.h"
#include "rootcalc/procedure.hpp"

#include <set>
#include <sstream>

using namespace rootcalc;

namespace {

const Catalog& bundled() {
    static Catalog cat = Catalog::load(Catalog::default_path());
    return cat;
}

ProcedureInput input(const std::string& a, const std::string& b, long N) {
    return ProcedureInput{bundled().name(a), bundled().name(b), N, {}};
}

std::set<std::string> names(const std::vector<CellClass>& cs) {
    std::set<std::string> out;
    for (auto& c : cs)
        out.insert(c.str());
    return out;
}

}  // namespace

TEST_CASE("step 1 is a pure filter with reasons") {
    auto& cat = bundled();
    for (auto [a, b, N] : std::vector<std::tuple<const char*, const char*, long>>{
             {"alpha3", "beta3", 32}, {"alpha5", "beta5", 56}, {"alpha6", "beta6", 68}}) {
        auto c = step1_candidates(input(a, b, N), cat);
        CHECK(c.classes.size() + c.rejected.size() == cat.entries().size());
        CHECK(c.classes.size() == c.entries.size());
        for (auto& r : c.rejected)
            CHECK_FALSE(r.condition.empty());
        for (size_t i = 0; i < c.classes.size(); ++i) {
            CHECK(cat.find(c.classes[i].name) == c.entries[i]);
            // the candidate sits one stem below alpha
            CHECK(c.classes[i].total_stem() == input(a, b, N).alpha.stem() - 1);
        }
    }
}

TEST_CASE("step 1 rejection reasons name the condition") {
    auto c = step1_candidates(input("alpha3", "beta3", 32), bundled());
    auto reason = [&](const std::string& n) {
        for (auto& r : c.rejected)
            if (r.name == n)
                return r.condition;
        return std::string();
    };
    CHECK(reason("beta1").find("stem outside") != std::string::npos);
    for (auto& r : c.rejected)
        CHECK_FALSE(r.condition.empty());
    CHECK(reason("beta2*beta1").find("residue") != std::string::npos);
}

TEST_CASE("alpha3 row") {
    auto l = run_procedure(input("alpha3", "beta3", 32), bundled());
    REQUIRE(l.rows.size() == 1);
    auto& row = l.rows[0];
    CHECK(row.candidate.str() == "beta2*beta1*alpha1[-7q-1]");
    CHECK(row.mark() == "(2)");
    REQUIRE(row.record);
    CHECK(row.record->target.str() == "beta2*beta1^2[-9q-1]");
    REQUIRE(row.notes.size() == 1);
    CHECK(row.notes[0].find("Toda bracket <alpha1, p, beta3>") != std::string::npos);
}

TEST_CASE("empty rows render a dash") {
    auto l = run_procedure(input("alpha1", "beta1", 8), bundled());
    CHECK(l.rows.empty());
    auto text = emit_ledger(l, LedgerFormat::Text);
    CHECK(text.find("---") != std::string::npos);
    auto tex = emit_ledger(l, LedgerFormat::Table);
    CHECK(tex.find("---") != std::string::npos);
}

TEST_CASE("cell-form congruence switch") {
    auto stated = step1_candidates(input("alpha5", "beta5", 56), bundled(), CongruenceMode::Stated);
    auto cell = step1_candidates(input("alpha5", "beta5", 56), bundled(), CongruenceMode::CellForm);
    // every cell-form candidate sits on a legal cell, as do the stated ones
    for (auto& c : cell.classes)
        CHECK(c.total_stem() == ExtName::alpha(3, 5).stem() - 1);
    CHECK(names(stated.classes) != names(cell.classes));
}

TEST_CASE("step 4 reproduces the killer families for beta1^p") {
    auto& cat = bundled();
    // beta = beta1^3 on cell -(p^2-p-1)q-1 = -21
    ProcedureInput in{ExtName::beta(3, 1), ExtName::beta(3, 1).pow(3), 21, {}};
    auto r = step4_candidates(in, cat);
    auto got = names(r.candidates.classes);
    std::set<std::string> family;
    // beta_k[-(k-1)(p+1)q]
    for (int k = 1; k <= 2; ++k)
        family.insert(at(ExtName::beta(3, k), -(k - 1) * 4 * 4, 3).str());
    // alpha_{k/l}[-(k-p)q-1]
    for (int k = 1; k <= 7; ++k)
        for (int l = 1; l <= nu(k, 3) + 1; ++l)
            family.insert(at(ExtName::alpha(3, k, l), -(k - 3) * 4 - 1, 3).str());
    for (auto& f : family)
        CHECK(got.count(f) == 1);
    // anything else is a decomposable
    for (auto& c : r.candidates.classes)
        if (!family.count(c.str()))
            CHECK(c.name.kind() == ExtName::Kind::Product);
    CHECK(r.incoming.empty());
    CHECK(r.candidates.classes.size() + r.candidates.rejected.size() == cat.entries().size());
}

TEST_CASE("step 4 beta audit") {
    auto r = step4_candidates(input("alpha{6/2}", "beta{6/2}", 64), bundled());
    REQUIRE(r.beta_report);
    CHECK(r.beta_report->ok());
    CHECK(r.incoming.empty());
}

TEST_CASE("trivial window") {
    std::istringstream in("beta5 | 74 | 2 | 3 | - | x\n");
    auto cat = Catalog::parse(in);
    ProcedureInput pin{ExtName::alpha(3, 1), ExtName::beta(3, 1), 8, {}};
    auto c = step1_candidates(pin, cat);
    CHECK(c.classes.empty());
    CHECK(c.warnings.size() == 1);
    auto r = step4_candidates(pin, cat);
    CHECK(r.candidates.classes.empty());
}

TEST_CASE("ledger round trip and determinism") {
    for (auto [a, b, N] : std::vector<std::tuple<const char*, const char*, long>>{
             {"alpha1", "beta1", 8}, {"alpha3", "beta3", 32}, {"alpha5", "beta5", 56}, {"alpha{6/2}", "beta{6/2}", 64}}) {
        auto l = run_procedure(input(a, b, N), bundled());
        auto doc = emit_ledger(l, LedgerFormat::Records);
        CHECK(read_ledger_records(doc, bundled()) == l);
        CHECK(emit_ledger(run_procedure(input(a, b, N), bundled()), LedgerFormat::Records) == doc);
        CHECK(doc.find("\"schema\":1") != std::string::npos);
    }
}

TEST_CASE("rows are sorted by cell then stem") {
    auto l = run_procedure(input("alpha6", "beta6", 68), bundled());
    for (size_t i = 1; i < l.rows.size(); ++i)
        CHECK(l.rows[i - 1].candidate.cell.n() >= l.rows[i].candidate.cell.n());
}

TEST_CASE("format tags") {
    CHECK(parse_format("jsonl") == LedgerFormat::Records);
    CHECK(parse_format("tex") == LedgerFormat::Table);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
}

TEST_CASE("bad schema is rejected") {
    CHECK_THROWS(read_ledger_records("{\"schema\":99,\"type\":\"ledger\"}\n", bundled()));
    CHECK_THROWS(read_ledger_records("", bundled()));
}
