#include "rootcalc/cli.hpp"

#include "rootcalc/coaction.hpp"
#include "rootcalc/golden.hpp"
#include "rootcalc/procedure.hpp"
#include "rootcalc/tate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>

namespace rootcalc {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int p = 3;
    std::string basis = "araki";
    int D = 0;  // 0: command default
    int ideal = 0;
    std::string format = "text";
    std::string catalog;

    void validate() const {
        if (!is_prime(p))
            throw UsageError("-p must be prime, got " + std::to_string(p));
        if (D < 0)
            throw UsageError("-D must be positive");
        if (ideal < 0)
            throw UsageError("--mod-ideal must be >= 0");
        if (format != "text" && format != "records" && format != "table")
            throw UsageError("--format must be text, records or table");
    }
    Basis basis_enum() const {
        try {
            return parse_basis(basis);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
};

void add_common(CLI::App* c, RunConfig& cfg, bool with_basis = true) {
    c->add_option("-p,--prime", cfg.p, "prime")->capture_default_str();
    if (with_basis)
        c->add_option("--basis", cfg.basis, "araki or hazewinkel")->capture_default_str();
    c->add_option("-D,--truncation", cfg.D, "series truncation (x^D unknown)");
    c->add_option("--mod-ideal", cfg.ideal, "work modulo I_n");
    c->add_option("--format", cfg.format, "text, records or table")->capture_default_str();
}

nlohmann::json record(const char* type) { return {{"schema", kRecordSchema}, {"type", type}}; }

int cmd_pseries(const RunConfig& cfg, bool verify, std::ostream& out) {
    cfg.validate();
    Basis b = cfg.basis_enum();
    if (verify) {
        if (b != Basis::Hazewinkel)
            throw UsageError("--verify-paper compares Hazewinkel closed forms; pass --basis hazewinkel");
        int need = cfg.ideal >= 2 ? cfg.p * cfg.p + 2 : cfg.p + 2;
        if (cfg.D && cfg.D < need)
            throw UsageError("--verify-paper needs -D >= " + std::to_string(need));
    }
    int D = cfg.D ? cfg.D : (cfg.ideal >= 2 ? cfg.p * cfg.p + 2 : 2 * cfg.p + 2);
    auto F = build_fgl(PrimeContext::make(cfg.p), b, D);
    TruncatedSeries s = p_series(F);
    if (cfg.ideal > 0)
        s = s.map_coeffs([&](const GradedPoly& c) {
            return coefficients_mod_p(reduce_mod_ideal(c, Ideal{cfg.ideal}, cfg.p), cfg.p);
        });
    if (cfg.format == "records") {
        auto j = record("pseries");
        j["p"] = cfg.p;
        j["basis"] = basis_name(b);
        j["mod_ideal"] = cfg.ideal;
        j["D"] = D;
        std::vector<nlohmann::json> terms;
        for (int e = s.low_order(); e < D; ++e)
            if (!s.coeff(e).is_zero())
                terms.push_back({{"exponent", e}, {"coefficient", s.coeff(e).str()}});
        j["terms"] = terms;
        out << j.dump() << "\n";
    } else {
        out << "[" << cfg.p << "](x) = " << s.str() << (cfg.ideal ? "  mod I_" + std::to_string(cfg.ideal) : "")
            << "  (" << basis_name(b) << ")\n";
    }
    if (!verify)
        return 0;
    bool ok = true;
    for (auto& c : pseries_golden(cfg.p)) {
        bool relevant = (cfg.ideal >= 2) == (c.name.find("mod I2") != std::string::npos);
        if (!relevant)
            continue;
        out << render_check(c) << "\n";
        ok = ok && c.pass;
    }
    return ok ? 0 : 1;
}

int cmd_rootinv(const RunConfig& cfg, const std::string& expr, std::ostream& out) {
    cfg.validate();
    GradedPoly a;
    try {
        a = parse_poly(expr, cfg.p);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    Basis b = cfg.basis_enum();
    std::optional<RootInvariantResult> r;
    int used = 0;
    std::vector<int> tries;
    if (cfg.D)
        tries = {cfg.D};
    else
        tries = {8, 16, 32, 64, 128};
    std::string last;
    for (int D : tries) {
        try {
            auto F = build_fgl(PrimeContext::make(cfg.p), b, D + cfg.p + 2);
            r = e_root_invariant(a, F, D, Ideal{cfg.ideal});
            used = D;
            break;
        } catch (const SeriesError& e) {
            last = e.what();
        }
    }
    if (!r) {
        out << "no root invariant found: " << last << "\n";
        return 1;
    }
    if (cfg.format == "records") {
        auto j = record("rootinv");
        j["p"] = cfg.p;
        j["element"] = expr;
        j["mod_ideal"] = cfg.ideal;
        j["N"] = r->N;
        j["leading"] = r->leading.str();
        j["indeterminacy"] = r->indeterminacy;
        j["D"] = used;
        out << j.dump() << "\n";
    } else {
        out << "N = " << r->N << "\nleading = " << r->leading.str() << "\nindeterminacy = " << r->indeterminacy
            << "\n";
    }
    return 0;
}

int cmd_verify_alpha(const RunConfig& cfg, int i, int j, bool fermat, std::ostream& out) {
    cfg.validate();
    AlphaDerivationReport rep = fermat ? verify_two_coordinate_p2() : verify_alpha_derivation(i, j, cfg.p, cfg.D);
    if (cfg.format == "records") {
        auto js = record("verify-alpha");
        js["p"] = rep.p;
        js["i"] = rep.i;
        js["j"] = rep.j;
        js["ok"] = rep.ok();
        js["sign"] = rep.sign;
        js["exponent"] = rep.exponent;
        js["leading"] = rep.leading.str();
        std::vector<nlohmann::json> steps;
        for (auto& s : rep.steps)
            steps.push_back({{"label", s.label}, {"ok", s.ok}, {"detail", s.detail}});
        js["steps"] = steps;
        js["flags"] = rep.flags;
        out << js.dump() << "\n";
    } else {
        out << rep.str();
        out << (rep.ok() ? "PASS" : "FAIL") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

Catalog load_catalog(const RunConfig& cfg) {
    std::string path = cfg.catalog.empty() ? Catalog::default_path() : cfg.catalog;
    try {
        return Catalog::load(path);
    } catch (const CatalogError& e) {
        throw UsageError(e.what());
    }
}

ExtName name_or_usage(const Catalog& cat, const std::string& s) {
    try {
        return cat.name(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

long parse_cell(const std::string& s, int p) {
    // integer, or m q, m q - 1 style ("-7q-1", "3q", "q-1")
    long q = 2 * (p - 1);
    auto pos = s.find('q');
    try {
        if (pos == std::string::npos)
            return std::stol(s);
        std::string m = s.substr(0, pos), rest = s.substr(pos + 1);
        long mm = m.empty() || m == "+" ? 1 : m == "-" ? -1 : std::stol(m);
        long off = rest.empty() ? 0 : std::stol(rest);
        return mm * q + off;
    } catch (const std::exception&) {
        throw UsageError("cannot read cell '" + s + "'");
    }
}

const char* kind_tag(RuleResult::Kind k) {
    switch (k) {
    case RuleResult::Kind::Fires: return "fires";
    case RuleResult::Kind::Vanishes: return "vanishes";
    case RuleResult::Kind::NotApplicable: return "n/a";
    }
    return "n/a";
}

int cmd_aahss(const RunConfig& cfg, const std::string& element, const std::string& cell_s, std::ostream& out) {
    cfg.validate();
    if (cfg.p == 2)
        throw UsageError("the AAHSS rules are for odd primes");
    Catalog cat = cfg.p == 3 ? load_catalog(cfg) : Catalog{};
    ExtName e;
    try {
        e = cfg.p == 3 ? cat.name(element) : parse_ext_name(element, cfg.p);
    } catch (const std::exception& ex) {
        throw UsageError(ex.what());
    }
    long n = parse_cell(cell_s, cfg.p);
    CellClass cc;
    try {
        cc = at(e, n, cfg.p);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    std::vector<std::pair<std::string, RuleResult>> results;
    results.emplace_back("imJ", rule_imJ(cc));
    results.emplace_back("d2", rule_d2(e, n, cfg.p));
    results.emplace_back("dq", rule_dq(e, n, cfg.p));
    if (cc.cell.top())
        for (int k = 0; k <= 2; ++k)
            results.emplace_back("d_v" + std::to_string(k), rule_d_odd_vn(e, n, k, cfg.p));
    auto g = cc.grading();
    if (cfg.format == "records") {
        auto j = record("aahss");
        j["p"] = cfg.p;
        j["class"] = cc.str();
        j["grading"] = {g.k, g.n, g.s};
        std::vector<nlohmann::json> rs;
        for (auto& [name, r] : results) {
            nlohmann::json x = {{"rule", name}, {"result", kind_tag(r.kind)}, {"reason", r.reason}};
            if (r.record)
                x["record"] = r.record->str();
            rs.push_back(x);
        }
        j["rules"] = rs;
        out << j.dump() << "\n";
    } else {
        out << cc.str() << "  (k, n, s) = (" << g.k << ", " << g.n << ", " << g.s << ")\n";
        for (auto& [name, r] : results) {
            out << "  " << name << ": " << kind_tag(r.kind);
            if (r.record)
                out << "  " << r.record->str();
            if (!r.reason.empty())
                out << "  (" << r.reason << ")";
            out << "\n";
        }
    }
    return 0;
}

int cmd_procedure(const RunConfig& cfg, const std::string& alpha, const std::string& beta, const std::string& N_s,
                  std::optional<int> k, bool step4, const std::string& congruence, std::ostream& out) {
    cfg.validate();
    Catalog cat = load_catalog(cfg);
    if (cat.prime() != cfg.p)
        throw UsageError("catalog is for p = " + std::to_string(cat.prime()));
    ProcedureInput in{name_or_usage(cat, alpha), name_or_usage(cat, beta), parse_cell(N_s, cfg.p), k};
    try {
        (void)Cell(-in.N, cfg.p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("-N: ") + e.what());
    }
    CongruenceMode mode;
    if (congruence == "stated")
        mode = CongruenceMode::Stated;
    else if (congruence == "cell")
        mode = CongruenceMode::CellForm;
    else
        throw UsageError("--congruence must be stated or cell");
    if (step4) {
        Step4Result r = step4_candidates(in, cat);
        out << "killers of " << in.beta.str() << "[" << Cell(-in.N, cfg.p).str() << "]:\n";
        if (r.candidates.classes.empty())
            out << "  ---\n";
        for (auto& c : r.candidates.classes)
            out << "  " << c.str() << "\n";
        out << "incoming rule-engine records: " << r.incoming.size() << "\n";
        for (auto& d : r.incoming)
            out << "  " << d.str() << "\n";
        if (r.beta_report) {
            out << "beta survival: " << (r.beta_report->ok() ? "no incoming differential" : "FAILED") << "\n";
            for (auto& x : r.beta_report->exclusions)
                out << "  " << x << "\n";
        }
        return 0;
    }
    Candidates c = step1_candidates(in, cat, mode);
    for (auto& w : c.warnings)
        out << "warning: " << w << "\n";
    Ledger l;
    l.p = cat.prime();
    l.input = in;
    l.rows = step23_annotate(c, cat, in);
    out << emit_ledger(l, parse_format(cfg.format));
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"root invariant and AAHSS calculator"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* ps = app.add_subcommand("pseries", "p-series of the universal p-typical law");
    add_common(ps, cfg);
    bool verify = false;
    ps->add_flag("--verify-paper", verify, "compare against the published closed forms");

    auto* ri = app.add_subcommand("rootinv", "E-root invariant via the Tate ring");
    add_common(ri, cfg);
    std::string expr;
    ri->add_option("element", expr, "expression in p, v<k>")->required();

    auto* va = app.add_subcommand("verify-alpha", "step report for the alpha_{i/j} derivation");
    add_common(va, cfg, false);
    int vi = 1, vj = 1;
    bool fermat = false;
    va->add_option("i", vi)->capture_default_str();
    va->add_option("j", vj)->capture_default_str();
    va->add_flag("--two-coordinate", fermat, "p = 2 two-coordinate check");

    auto* aa = app.add_subcommand("aahss", "rule engine on one class");
    add_common(aa, cfg, false);
    aa->add_option("--catalog", cfg.catalog, "catalog path");
    std::string element, cell;
    aa->add_option("element", element)->required();
    aa->add_option("cell", cell, "cell, e.g. -7q-1")->required();

    auto* pr = app.add_subcommand("procedure", "candidate ledger for alpha -> beta[-N]");
    add_common(pr, cfg, false);
    pr->add_option("--catalog", cfg.catalog, "catalog path");
    std::string alpha, beta, Ns, congruence = "stated";
    std::optional<int> k;
    bool step4 = false;
    pr->add_option("--alpha", alpha)->required();
    pr->add_option("--beta", beta)->required();
    pr->add_option("-N", Ns, "beta sits on cell -N (e.g. 8q)")->required();
    pr->add_option("-k,--filtration", k, "filtration bound (default: filtration of beta)");
    pr->add_flag("--step4", step4, "list candidate killers of beta[-N]");
    pr->add_option("--congruence", congruence, "stated or cell")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 2;
    }
    try {
        if (*ps)
            return cmd_pseries(cfg, verify, out);
        if (*ri)
            return cmd_rootinv(cfg, expr, out);
        if (*va)
            return cmd_verify_alpha(cfg, vi, vj, fermat, out);
        if (*aa)
            return cmd_aahss(cfg, element, cell, out);
        if (*pr)
            return cmd_procedure(cfg, alpha, beta, Ns, k, step4, congruence, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace rootcalc
