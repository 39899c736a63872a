#include "rootcalc/procedure.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace rootcalc {

using nlohmann::json;

LedgerFormat parse_format(const std::string& s) {
    if (s == "text")
        return LedgerFormat::Text;
    if (s == "records" || s == "jsonl")
        return LedgerFormat::Records;
    if (s == "table" || s == "tex")
        return LedgerFormat::Table;
    throw std::invalid_argument("unknown format '" + s + "' (text, records, table)");
}

void sort_rows(std::vector<LedgerRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const LedgerRow& a, const LedgerRow& b) {
        long ca = a.candidate.cell.n(), cb = b.candidate.cell.n();
        if (ca != cb)
            return ca > cb;
        long sa = a.candidate.name.stem(), sb = b.candidate.name.stem();
        if (sa != sb)
            return sa < sb;
        return a.candidate.name.str() < b.candidate.name.str();
    });
}

namespace {

const char* annotation_tag(LedgerRow::Annotation a) {
    switch (a) {
    case LedgerRow::Annotation::NotPermanent: return "not-permanent";
    case LedgerRow::Annotation::Killed: return "killed";
    case LedgerRow::Annotation::Supports: return "supports";
    case LedgerRow::Annotation::Unresolved: return "unresolved";
    }
    return "unresolved";
}

LedgerRow::Annotation annotation_from(const std::string& s) {
    if (s == "not-permanent")
        return LedgerRow::Annotation::NotPermanent;
    if (s == "killed")
        return LedgerRow::Annotation::Killed;
    if (s == "supports")
        return LedgerRow::Annotation::Supports;
    if (s == "unresolved")
        return LedgerRow::Annotation::Unresolved;
    throw std::invalid_argument("unknown annotation '" + s + "'");
}

json class_json(const CellClass& c) { return {{"name", c.name.str()}, {"cell", c.cell.n()}}; }

CellClass class_from(const json& j, const Catalog& cat) {
    return at(cat.name(j.at("name").get<std::string>()), j.at("cell").get<long>(), cat.prime());
}

std::string header(const Ledger& l) {
    std::ostringstream os;
    os << l.input.alpha.str() << " -> " << l.input.beta.str() << "[" << Cell(-l.input.N, l.p).str()
       << "], filtration bound " << l.input.bound();
    return os.str();
}

std::string text(const Ledger& l) {
    std::ostringstream os;
    os << header(l) << "\n";
    if (l.rows.empty())
        os << "  ---\n";
    for (auto& r : l.rows) {
        os << "  " << r.candidate.str() << " " << r.mark() << "  " << annotation_tag(r.annotation);
        if (r.record)
            os << ": " << r.record->str();
        os << "\n";
        if (!r.subcase.empty())
            os << "      case: " << r.subcase << "\n";
        for (auto& n : r.notes)
            os << "      note: " << n << "\n";
    }
    return os.str();
}

std::string records(const Ledger& l) {
    std::ostringstream os;
    json h = {{"schema", kRecordSchema}, {"type", "ledger"}, {"p", l.p},
              {"alpha", l.input.alpha.str()}, {"beta", l.input.beta.str()},
              {"N", l.input.N}, {"k", l.input.bound()}, {"rows", l.rows.size()}};
    os << h.dump() << "\n";
    for (auto& r : l.rows) {
        json j = {{"schema", kRecordSchema}, {"type", "row"}, {"candidate", class_json(r.candidate)},
                  {"annotation", annotation_tag(r.annotation)}, {"mark", r.mark()},
                  {"subcase", r.subcase}, {"notes", r.notes}};
        if (r.record) {
            auto& d = *r.record;
            j["record"] = {{"source", class_json(d.source)}, {"target", class_json(d.target)},
                           {"page", d.page}, {"label", d.label}, {"unit_class", d.unit_class},
                           {"coefficient", d.coefficient}, {"valid_mod", d.valid_mod.n}, {"rule", d.rule}};
        } else {
            j["record"] = nullptr;
        }
        os << j.dump() << "\n";
    }
    return os.str();
}

std::string table(const Ledger& l) {
    std::ostringstream os;
    os << "\\begin{tabular}{llll}\n";
    os << "Element & $R^{[k]}$ & Cell & Candidates \\\\ \\hline\n";
    os << "$" << l.input.alpha.tex() << "$ & $" << l.input.beta.tex() << "$ & $" << Cell(-l.input.N, l.p).str()
       << "$ & ";
    if (l.rows.empty()) {
        os << "---";
    } else {
        bool first = true;
        for (auto& r : l.rows) {
            os << (first ? "" : ", ") << "$" << r.candidate.tex() << "$ " << r.mark();
            first = false;
        }
    }
    os << " \\\\\n\\end{tabular}\n";
    return os.str();
}

}  // namespace

std::string emit_ledger(const Ledger& l, LedgerFormat f) {
    switch (f) {
    case LedgerFormat::Text: return text(l);
    case LedgerFormat::Records: return records(l);
    case LedgerFormat::Table: return table(l);
    }
    throw std::invalid_argument("unknown format");
}

Ledger read_ledger_records(const std::string& doc, const Catalog& cat) {
    std::istringstream in(doc);
    std::string line;
    Ledger l;
    bool have_header = false;
    size_t expected = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        json j = json::parse(line);
        if (j.at("schema").get<int>() != kRecordSchema)
            throw std::runtime_error("unsupported schema version " + j.at("schema").dump());
        std::string type = j.at("type");
        if (type == "ledger") {
            l.p = j.at("p");
            if (l.p != cat.prime())
                throw std::runtime_error("ledger prime differs from catalog prime");
            l.input.alpha = cat.name(j.at("alpha"));
            l.input.beta = cat.name(j.at("beta"));
            l.input.N = j.at("N");
            l.input.k = j.at("k").get<int>();
            expected = j.at("rows");
            have_header = true;
            continue;
        }
        if (type != "row" || !have_header)
            throw std::runtime_error("row record before ledger header");
        LedgerRow r;
        r.candidate = class_from(j.at("candidate"), cat);
        r.annotation = annotation_from(j.at("annotation"));
        r.subcase = j.at("subcase");
        r.notes = j.at("notes").get<std::vector<std::string>>();
        if (!j.at("record").is_null()) {
            auto& d = j.at("record");
            DifferentialRecord rec{class_from(d.at("source"), cat), class_from(d.at("target"), cat),
                                   d.at("page"), d.at("label"), d.at("unit_class"),
                                   d.at("coefficient"), Ideal{d.at("valid_mod").get<int>()}, d.at("rule")};
            r.record = rec;
        }
        l.rows.push_back(std::move(r));
    }
    if (!have_header)
        throw std::runtime_error("missing ledger header");
    if (l.rows.size() != expected)
        throw std::runtime_error("row count mismatch");
    return l;
}

}  // namespace rootcalc
