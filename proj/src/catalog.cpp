#include "rootcalc/procedure.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rootcalc {

CatalogError::CatalogError(const std::string& source, int l, const std::string& why)
    : std::runtime_error(source + ":" + std::to_string(l) + ": " + why), line(l) {}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '<')
            ++depth;
        if (ch == ')' || ch == '>')
            --depth;
        if (ch == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

long to_long(const std::string& s, const std::string& src, int line, const char* field) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (s.empty() || pos != s.size())
        throw CatalogError(src, line, std::string("bad ") + field + " '" + s + "'");
    return v;
}

bool is_label(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)))
            return false;
    return s.rfind("alpha", 0) != 0 && s.rfind("beta", 0) != 0 && s.rfind("atilde", 0) != 0;
}

}  // namespace

Catalog Catalog::parse(std::istream& in, const std::string& src, int p) {
    Catalog cat;
    cat.p_ = p;
    std::string raw;
    int line = 0;
    auto lookup = [&cat](const std::string& l) { return cat.opaque(l); };
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty())
            continue;
        if (s[0] == '@') {
            std::istringstream d(s.substr(1));
            std::string key;
            long v = 0;
            if (!(d >> key >> v) || key != "prime" || !is_prime(static_cast<int>(v)))
                throw CatalogError(src, line, "unknown directive '" + s + "'");
            if (!cat.entries_.empty())
                throw CatalogError(src, line, "@prime must precede all entries");
            cat.p_ = static_cast<int>(v);
            continue;
        }
        auto f = split(s, '|');
        if (f.size() != 6)
            throw CatalogError(src, line, "expected 6 '|'-separated fields, got " + std::to_string(f.size()));
        CatalogEntry e;
        e.line = line;
        e.stem = to_long(f[1], src, line, "stem");
        e.filtration = static_cast<int>(to_long(f[2], src, line, "filtration"));
        e.order = f[3];
        e.provenance = f[5];
        if (e.order.empty())
            throw CatalogError(src, line, "order field is empty");
        try {
            if (is_label(f[0]) && !cat.opaque(f[0]) && f[0] != "p" &&
                !(f[0].size() > 1 && f[0][0] == 'v' && std::isdigit(static_cast<unsigned char>(f[0][1]))))
                e.name = ExtName::opaque(f[0], e.stem, e.filtration);
            else
                e.name = parse_ext_name(f[0], cat.p_, lookup);
        } catch (const std::exception& ex) {
            throw CatalogError(src, line, ex.what());
        }
        if (e.name.stem() != e.stem || e.name.filtration() != e.filtration) {
            std::ostringstream os;
            os << "'" << f[0] << "' has stem " << e.name.stem() << " and filtration " << e.name.filtration()
               << " by its generators, entry says " << e.stem << " and " << e.filtration;
            throw CatalogError(src, line, os.str());
        }
        if (cat.find(e.name))
            throw CatalogError(src, line, "duplicate entry '" + f[0] + "'");
        if (f[4] != "-" && !f[4].empty()) {
            for (auto& flag : split(f[4], ',')) {
                if (flag == "perm" || flag == "nonperm") {
                    if (e.perm != CatalogEntry::Perm::Unknown)
                        throw CatalogError(src, line, "permanence given twice");
                    e.perm = flag == "perm" ? CatalogEntry::Perm::Permanent : CatalogEntry::Perm::NotPermanent;
                } else if (flag.rfind("tower1(", 0) == 0 || flag.rfind("tower2(", 0) == 0) {
                    if (flag.back() != ')')
                        throw CatalogError(src, line, "unterminated tower flag");
                    auto args = split(flag.substr(7, flag.size() - 8), ';');
                    if (args.size() != 2)
                        throw CatalogError(src, line, "tower flag needs 'lambda; mu'");
                    try {
                        e.lambda = parse_ext_name(args[0], cat.p_, lookup);
                        e.mu = parse_ext_name(args[1], cat.p_, lookup);
                    } catch (const std::exception& ex) {
                        throw CatalogError(src, line, ex.what());
                    }
                    e.tower = flag[5] == '1' ? TowerSet::AlphaTimesLambda : TowerSet::BracketOfLambda;
                    ExtName a1 = ExtName::alpha(cat.p_, 1);
                    bool ok = e.tower == TowerSet::AlphaTimesLambda ? a1 * *e.lambda == e.name
                                                                    : a1 * e.name == *e.mu;
                    if (!ok)
                        throw CatalogError(src, line, "tower relation does not hold by name for '" + f[0] + "'");
                } else {
                    throw CatalogError(src, line, "unknown flag '" + flag + "'");
                }
            }
        }
        cat.entries_.push_back(std::move(e));
    }
    return cat;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CatalogError(path, 0, "cannot open catalog");
    return parse(in, path);
}

std::string Catalog::default_path() {
    if (const char* env = std::getenv("ROOTCALC_CATALOG"); env && *env)
        return env;
    return std::string(ROOTCALC_DATA_DIR) + "/p3_catalog.txt";
}

const CatalogEntry* Catalog::find(const ExtName& n) const {
    for (auto& e : entries_)
        if (e.name == n)
            return &e;
    return nullptr;
}

std::optional<ExtName> Catalog::opaque(const std::string& label) const {
    for (auto& e : entries_)
        if (e.name.kind() == ExtName::Kind::Opaque && e.name.factors().begin()->first.label == label)
            return e.name;
    return std::nullopt;
}

ExtName Catalog::name(const std::string& s) const {
    return parse_ext_name(s, p_, [this](const std::string& l) { return opaque(l); });
}

}  // namespace rootcalc
