#pragma once

#include "rootcalc/ext_name.hpp"
#include "rootcalc/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rootcalc {

// Cell dimension of the q-sparse stunted projective spectrum (n = 0 or -1 mod q).
class Cell {
public:
    Cell() = default;
    Cell(long n, int p);
    long n() const { return n_; }
    int q() const { return q_; }
    bool top() const { return mod(n_, q_) == 0; }  // n = mq
    long m() const;                                 // n = mq or mq - 1
    std::string str() const;                        // "-7q-1", "3q", "q-1", "0"
    bool operator==(const Cell& o) const { return n_ == o.n_ && q_ == o.q_; }
    static long mod(long a, long m) { return ((a % m) + m) % m; }

private:
    long n_ = 0;
    int q_ = 2;
};

struct TriGrading {
    long k, n, s;
    bool operator==(const TriGrading&) const = default;
};

struct CellClass {
    ExtName name;
    Cell cell;
    int p = 3;

    // E_1^{k,2m,s} = Ext^{s,s+k}(S^{mq-1}) on the bottom of a cell pair,
    // E_1^{k,2m+1,s} = Ext^{s+1,s+k}(S^{mq-1}) on the top
    TriGrading grading() const;
    long total_stem() const { return grading().k; }
    bool operator==(const CellClass& o) const { return name == o.name && cell == o.cell; }
    std::string str() const;
    std::string tex() const;
};

CellClass at(const ExtName& e, long cell, int p);

struct DifferentialRecord {
    CellClass source, target;
    int page = 0;           // drop in the n index of the tri-grading
    int label = 0;          // the subscript the rule is usually stated with
    bool unit_class = true; // target determined up to a p-local unit
    std::string coefficient = "1";
    Ideal valid_mod{0};
    std::string rule;
    std::string str() const;
};

// A rule either fires, vanishes for congruence reasons, or does not apply.
struct RuleResult {
    enum class Kind { Fires, Vanishes, NotApplicable } kind = Kind::NotApplicable;
    std::optional<DifferentialRecord> record;
    std::string reason;
    bool fires() const { return kind == Kind::Fires; }
};

// <gamma, alpha1, ..., alpha1> simplified where possible: <alpha1 x p> = beta1,
// <lambda alpha1, alpha1 x (p-1)> = lambda beta1
ExtName resolve_bracket(const ExtName& e);

RuleResult rule_d_odd_vn(const ExtName& a, long cell, int n, int p);
RuleResult rule_d2(const ExtName& a, long cell, int p);
RuleResult rule_dq(const ExtName& a, long cell, int p);
RuleResult rule_imJ(const CellClass& el);
// every rule applied to one class, firing results only, shortest page first
std::vector<DifferentialRecord> all_rules(const CellClass& el, int max_vn_level = 2);

// tilde-alpha_i[kq-1] with p^i | (k + i), k in [kmin, kmax], i in [1, imax]
std::vector<CellClass> imJ_survivors(long kmin, long kmax, int imax, int p);
// every alpha_{i/j} and 1 on cells with k in [kmin, kmax], i <= imax
std::vector<CellClass> imJ_classes(long kmin, long kmax, int imax, int p);
// classes in the window that are neither survivor, source nor target; stem -1 classes listed separately
struct ImJAccounting {
    std::vector<CellClass> unaccounted;
    std::vector<CellClass> stem_minus_one;
};
ImJAccounting imJ_account(long kmin, long kmax, int imax, int p);

enum class TowerSet { None, AlphaTimesLambda, BracketOfLambda };

struct TowerVerdict {
    enum class Kind { Killed, Supports, NotApplicable } kind = Kind::NotApplicable;
    std::optional<DifferentialRecord> record;
    std::string subcase;
};

// set AlphaTimesLambda: alpha1 lambda = gamma, <gamma, alpha1 x (p-1)> = mu
// set BracketOfLambda: <lambda, alpha1 x (p-1)> = gamma, alpha1 gamma = mu
TowerVerdict beta_tower_classify(const ExtName& gamma, const ExtName& lambda, const ExtName& mu, TowerSet set,
                                 long cell, int p);

struct BetaSurvivalReport {
    CellClass target;
    std::vector<DifferentialRecord> incoming;  // must be empty
    std::vector<std::string> exclusions;       // candidates ruled out and why
    bool ok() const { return incoming.empty(); }
};

BetaSurvivalReport beta_not_killed(int i, int j, long k, int p);

class BifiltrationRegion {
public:
    BifiltrationRegion(std::vector<long> I, std::vector<long> J);
    bool member(long a, long b) const;
    // S(I,J) subset of S(I',J')
    bool leq(const BifiltrationRegion& o) const;
    const std::vector<long>& I() const { return I_; }
    const std::vector<long>& J() const { return J_; }

private:
    std::vector<long> I_, J_;
};

}  // namespace rootcalc
