#include "doctest.h"
#include "rootcalc/procedure.hpp"

#include <sstream>

using namespace rootcalc;

namespace {

Catalog parse(const std::string& text) {
    std::istringstream in(text);
    return Catalog::parse(in, "test");
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const CatalogError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("bundled catalog loads") {
    auto cat = Catalog::load(Catalog::default_path());
    CHECK(cat.prime() == 3);
    CHECK(cat.entries().size() > 100);
    auto* b1 = cat.find(ExtName::beta(3, 1));
    REQUIRE(b1);
    CHECK(b1->stem == 10);
    CHECK(b1->filtration == 2);
    auto eta = cat.opaque("eta1");
    REQUIRE(eta);
    CHECK(eta->stem() == 57);
    auto* b4 = cat.find(ExtName::beta(3, 4));
    REQUIRE(b4);
    CHECK(b4->perm == CatalogEntry::Perm::NotPermanent);
    for (auto& e : cat.entries())
        CHECK_FALSE(e.provenance.empty());
}

TEST_CASE("tower flags") {
    auto cat = parse("beta1 | 10 | 2 | 3 | - | x\n"
                     "beta1*alpha1 | 13 | 3 | 3 | tower1(beta1; beta1^2) | x\n"
                     "beta1^2 | 20 | 4 | 3 | tower2(beta1*alpha1; beta1^2*alpha1) | x\n");
    auto* e = cat.find(cat.name("beta1*alpha1"));
    REQUIRE(e);
    CHECK(e->tower == TowerSet::AlphaTimesLambda);
    CHECK(*e->mu == cat.name("beta1^2"));
    CHECK(cat.find(cat.name("beta1^2"))->tower == TowerSet::BracketOfLambda);
}

TEST_CASE("line-numbered errors") {
    CHECK(error_line("beta1 | 10 | 2 | 3 | - | x\nbeta2 | 26 | 2 | 3 | -\n") == 2);
    CHECK(error_line("# c\n\nbeta1 | 11 | 2 | 3 | - | x\n") == 3);
    CHECK(error_line("beta1 | ten | 2 | 3 | - | x\n") == 1);
    CHECK(error_line("beta1 | 10 | 2 | 3 | - | x\nbeta1 | 10 | 2 | 3 | - | y\n") == 2);
    CHECK(error_line("beta1 | 10 | 2 | 3 | shiny | x\n") == 1);
    CHECK(error_line("beta1 | 10 | 2 | 3 | perm, nonperm | x\n") == 1);
    CHECK(error_line("gamma{1/1} | 10 | 2 | 3 | - | x\n") == 1);
    CHECK(error_line("beta1*eta1 | 10 | 2 | 3 | - | x\n") == 1);
    CHECK(error_line("beta1 | 10 | 2 | 3 | - | x\n@prime 5\n") == 2);
    CHECK(error_line("@prime 4\n") == 1);
    CHECK(error_line("beta1 | 10 | 2 |  | - | x\n") == 1);
    // alpha1 * lambda must be gamma
    CHECK(error_line("beta1*alpha1 | 13 | 3 | 3 | tower1(beta2; beta1^2) | x\n") == 1);
}

TEST_CASE("error message carries source and line") {
    try {
        parse("\n\nbeta1 | 11 | 2 | 3 | - | x\n");
        FAIL("expected an error");
    } catch (const CatalogError& e) {
        CHECK(std::string(e.what()).rfind("test:3:", 0) == 0);
    }
}

TEST_CASE("opaque labels") {
    auto cat = parse("eta1 | 57 | 3 | 3 | nonperm | x\neta1*beta1 | 67 | 5 | 3 | nonperm | x\n");
    CHECK(cat.entries().size() == 2);
    CHECK(cat.name("eta1*beta1").stem() == 67);
}

TEST_CASE("prime directive") {
    auto cat = parse("@prime 5\nbeta1 | 38 | 2 | 5 | - | x\n");
    CHECK(cat.prime() == 5);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(Catalog::load("/nonexistent/catalog.txt"), CatalogError);
}
