#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ltlz/automata.hpp"
#include "ltlz/formula.hpp"
#include "ltlz/models.hpp"
#include "ltlz/normalizer.hpp"

namespace ltlz {

// Temporal literal codes: 4*sym + 2*next + neg. Propositional literals are
// 2*sym + neg, so the code of a propositional literal L at next x is
// given by tcode().
inline int tcode(int lit, bool next) { return 4 * (lit >> 1) + (next ? 2 : 0) + (lit & 1); }

struct KromClosure {
    std::vector<std::string> symbols;
    bool inconsistent = false;
    int codes = 0;
    std::vector<char> mat;                   // codes x codes, symmetric
    std::vector<std::pair<int, int>> list;   // first <= second; unit when equal
    bool has(int d1, int d2) const { return !mat.empty() && mat[static_cast<size_t>(d1) * codes + d2] != 0; }
};

// clauses: width <= 2 over the given symbols, literals are atoms or one next
KromClosure complete_closure(const std::vector<std::string>& symbols, const std::vector<Clause>& clauses);

// Set of propositional literals (bit 2*sym + neg).
class LitBits {
public:
    LitBits() = default;
    explicit LitBits(int n) : n_(n), w_(static_cast<size_t>((n + 63) / 64), 0) {}
    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool any() const;
    bool intersects(const LitBits& o) const;
    bool subset_of(const LitBits& o) const;
    LitBits& operator|=(const LitBits& o);
    LitBits& operator&=(const LitBits& o);
    LitBits minus(const LitBits& o) const;
    // swaps each literal with its complement
    LitBits negated() const;
    int first() const;  // -1 when empty
    int count() const;
    template <class Fn>
    void for_each(Fn fn) const {
        for (size_t k = 0; k < w_.size(); ++k)
            for (std::uint64_t m = w_[k]; m; m &= m - 1) fn(static_cast<int>(k * 64) + __builtin_ctzll(m));
    }
    bool operator==(const LitBits&) const = default;
    auto operator<=>(const LitBits& o) const { return w_ <=> o.w_; }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

// A_{L,L'} over propositional literals: L1 -> L2 iff (not L1) or next L2 is derived
UnaryNFA literal_automaton(const KromClosure& c, int from, int to);

// Reference consequence sets by automaton simulation; small k only.
LitBits consequences(const KromClosure& c, int lit, int k, bool future);

// Gap feasibility for one closure. Positive lengths are answered from the
// ultimately periodic sequence of literal sets reachable from each source
// (the determinized automaton), stored up to its first repetition.
class GapOracle {
public:
    explicit GapOracle(const KromClosure& c);
    int literals() const { return lits_; }
    const LitBits& rel0(int lit) const { return rel0_[lit]; }
    const LitBits& fwd(int lit, long long n) const;
    LitBits F(const LitBits& t, long long n) const;
    LitBits P(const LitBits& t2, long long n) const;
    // least k >= 1 with `to` in F^k({from}), -1 if none
    long long first_positive(int from, int to) const { return firstPos_[static_cast<size_t>(from) * lits_ + to]; }
    // accepted lengths of A_{from,to} as progressions with a common period
    ProgressionSet prog(int from, int to) const;
    bool check(const LitBits& t, const LitBits& t2, const LitBits& theta, long long n) const;
    // least n in [1, cap) passing check, if any
    std::optional<long long> minimal_gap(const LitBits& t, const LitBits& t2, const LitBits& theta, long long cap) const;
    // upper bound on n from theta alone, with the literals responsible
    long long theta_bound(const LitBits& t, const LitBits& t2, const LitBits& theta, long long cap,
                          std::vector<std::pair<int, int>>* why) const;
    long long period_start() const { return maxMu_; }
    long long period() const { return lcm_; }

private:
    bool l1(const LitBits& t, const LitBits& t2, long long n) const;
    int lits_ = 0;
    bool inconsistent_ = false;
    std::vector<LitBits> rel0_, rel_;
    std::vector<std::vector<LitBits>> seq_;  // seq_[l][k] = F^k({l}) for k < mu + lambda, entry 0 = {l}
    std::vector<long long> mu_, lambda_;
    std::vector<long long> firstPos_;
    long long maxMu_ = 0, lcm_ = 1;
};

struct Certificate {
    std::vector<std::string> symbols;
    std::vector<std::vector<bool>> types;  // true = positive
    std::vector<long long> gaps;
    int l0 = 0, lP = 0, lF = 0;
};

std::string certificate_string(const Certificate& c);

struct CertificateCheck {
    bool ok = true;
    std::string failed;  // B0..B4 or "structure"
    std::string detail;
};

CertificateCheck verify_certificate(const RestrictedForm& rf, const Certificate& c);
UPModel extract_model(const RestrictedForm& rf, const Certificate& c);

enum class KromSearch { automatic, types, symbolic };

struct KromNextOptions {
    KromSearch search = KromSearch::automatic;
    long maxTypes = 512;  // explicit enumeration limit in automatic mode
    long maxRefinements = 200000;
};

struct KromNextResult {
    bool sat = false;
    std::optional<Certificate> certificate;
    std::optional<UPModel> model;
    std::string search;  // "types" or "symbolic"
    long typeCount = 0;
    long refinements = 0;
};

KromNextResult decide_krom_next(const RestrictedForm& rf, const KromNextOptions& opt = {});

}  // namespace ltlz
