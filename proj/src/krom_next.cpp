#include "ltlz/krom_next.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ltlz/graph.hpp"
#include "ltlz/prop_sat.hpp"

namespace ltlz {

// ---------- literal sets ----------

bool LitBits::any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
}

bool LitBits::intersects(const LitBits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & o.w_[k]) return true;
    return false;
}

bool LitBits::subset_of(const LitBits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & ~o.w_[k]) return false;
    return true;
}

LitBits& LitBits::operator|=(const LitBits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
}

LitBits& LitBits::operator&=(const LitBits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
}

LitBits LitBits::minus(const LitBits& o) const {
    LitBits r = *this;
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] &= ~o.w_[k];
    return r;
}

LitBits LitBits::negated() const {
    const std::uint64_t ev = 0x5555555555555555ULL;
    LitBits r = *this;
    for (auto& x : r.w_) x = ((x & ev) << 1) | ((x >> 1) & ev);
    return r;
}

int LitBits::count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
}

int LitBits::first() const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return static_cast<int>(k * 64) + __builtin_ctzll(w_[k]);
    return -1;
}

// ---------- closure ----------

namespace {

int code_of(const std::map<std::string, int>& idx, const Literal& l, bool neg) {
    bool next = false;
    if (!l.ops.empty()) {
        if (l.ops.size() != 1 || l.ops[0] != LitOp::NextF)
            throw std::invalid_argument("closure: literal nested too deep: " + print_literal(l));
        next = true;
    }
    auto it = idx.find(l.atom);
    if (it == idx.end()) throw std::invalid_argument("closure: unknown symbol " + l.atom);
    return tcode(2 * it->second + (neg ? 1 : 0), next);
}

bool is_next(int d) { return (d & 2) != 0; }
int shift(int d, bool next) { return next ? (d | 2) : (d & ~2); }
int prop_lit(int d) { return 2 * (d >> 2) + (d & 1); }

}  // namespace

KromClosure complete_closure(const std::vector<std::string>& symbols, const std::vector<Clause>& clauses) {
    KromClosure out;
    out.symbols = symbols;
    std::map<std::string, int> idx;
    for (size_t i = 0; i < symbols.size(); ++i) idx[symbols[i]] = static_cast<int>(i);
    int ncodes = 4 * static_cast<int>(symbols.size());
    out.codes = ncodes;
    out.mat.assign(static_cast<size_t>(ncodes) * ncodes, 0);

    std::vector<std::pair<int, int>> work;
    std::vector<std::vector<std::pair<int, int>>> occ(static_cast<size_t>(ncodes));
    auto add = [&](int a, int b) {
        if (out.inconsistent) return;
        if ((a ^ 1) == b) return;  // tautology
        auto key = std::minmax(a, b);
        char& cell = out.mat[static_cast<size_t>(key.first) * ncodes + key.second];
        if (cell) return;
        cell = 1;
        out.mat[static_cast<size_t>(key.second) * ncodes + key.first] = 1;
        out.list.push_back(key);
        work.push_back(key);
        occ[key.first].push_back(key);
        if (key.second != key.first) occ[key.second].push_back(key);
    };

    for (auto& c : clauses) {
        std::vector<int> ds;
        bool trivial = false;
        for (auto& l : c.pos) {
            if (l.bottom()) continue;
            ds.push_back(code_of(idx, l, false));
        }
        for (auto& l : c.neg) {
            if (l.bottom()) { trivial = true; break; }
            ds.push_back(code_of(idx, l, true));
        }
        if (trivial) continue;
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        if (ds.size() > 2) throw std::invalid_argument("closure: clause wider than 2: " + print_clause(c));
        if (ds.empty()) { out.inconsistent = true; break; }
        add(ds[0], ds.size() == 2 ? ds[1] : ds[0]);
    }

    while (!work.empty() && !out.inconsistent) {
        auto [a, b] = work.back();
        work.pop_back();
        bool unit = a == b;
        if (unit)
            for (int d = 0; d < ncodes; ++d) add(a, d);
        // next-shift in both directions
        if (is_next(a) == is_next(b)) add(shift(a, !is_next(a)), shift(b, !is_next(b)));
        // resolution on each literal of the clause
        for (int side = 0; side < (unit ? 1 : 2); ++side) {
            int x = side == 0 ? a : b;
            int restX = unit ? -1 : (side == 0 ? b : a);
            auto partners = occ[x ^ 1];  // copy: add() may grow the list
            for (auto [c1, c2] : partners) {
                int restY = c1 == c2 ? -1 : (c1 == (x ^ 1) ? c2 : c1);
                if (restX < 0 && restY < 0) {
                    out.inconsistent = true;
                    break;
                }
                if (restX < 0) add(restY, restY);
                else if (restY < 0) add(restX, restX);
                else add(restX, restY);
            }
            if (out.inconsistent) break;
        }
    }
    if (out.inconsistent) {
        out.list.clear();
        std::fill(out.mat.begin(), out.mat.end(), 0);
    }
    return out;
}

// ---------- consequence sets ----------

namespace {

// rel[l1] holds l2 when (not l1) or next l2 is derived
std::vector<LitBits> next_relation(const KromClosure& c) {
    int lits = 2 * static_cast<int>(c.symbols.size());
    std::vector<LitBits> rel(static_cast<size_t>(lits), LitBits(lits));
    if (c.inconsistent) {
        for (auto& r : rel)
            for (int l = 0; l < lits; ++l) r.set(l);
        return rel;
    }
    for (auto [x, y] : c.list)
        for (int side = 0; side < 2; ++side) {
            int now = side ? y : x, nxt = side ? x : y;
            if (!is_next(now) && is_next(nxt)) rel[prop_lit(now) ^ 1].set(prop_lit(nxt));
        }
    return rel;
}

std::vector<LitBits> zero_relation(const KromClosure& c) {
    int lits = 2 * static_cast<int>(c.symbols.size());
    std::vector<LitBits> rel(static_cast<size_t>(lits), LitBits(lits));
    for (int l = 0; l < lits; ++l) {
        rel[l].set(l);
        if (c.inconsistent)
            for (int l2 = 0; l2 < lits; ++l2) rel[l].set(l2);
    }
    for (auto [x, y] : c.list) {
        if (is_next(x) || is_next(y)) continue;
        rel[prop_lit(x) ^ 1].set(prop_lit(y));
        rel[prop_lit(y) ^ 1].set(prop_lit(x));
    }
    return rel;
}

LitBits step(const std::vector<LitBits>& rel, const LitBits& cur) {
    LitBits nxt(cur.size());
    cur.for_each([&](int l) { nxt |= rel[l]; });
    return nxt;
}

}  // namespace

UnaryNFA literal_automaton(const KromClosure& c, int from, int to) {
    auto rel = next_relation(c);
    int lits = static_cast<int>(rel.size());
    UnaryNFA nfa(lits);
    for (int a = 0; a < lits; ++a) rel[a].for_each([&](int b) { nfa.add(a, b); });
    nfa.initial = from;
    nfa.accepting = to;
    return nfa;
}

LitBits consequences(const KromClosure& c, int lit, int k, bool future) {
    auto rel0 = zero_relation(c);
    auto rel = next_relation(c);
    int lits = static_cast<int>(rel.size());
    auto fwd = [&](int l) {
        if (k == 0) return rel0[l];
        LitBits cur(lits);
        cur.set(l);
        for (int i = 0; i < k; ++i) cur = step(rel, cur);
        return cur;
    };
    if (future) return fwd(lit);
    LitBits out(lits);
    for (int l = 0; l < lits; ++l)
        if (fwd(l ^ 1).test(lit ^ 1)) out.set(l);
    return out;
}

GapOracle::GapOracle(const KromClosure& c) {
    lits_ = 2 * static_cast<int>(c.symbols.size());
    inconsistent_ = c.inconsistent;
    rel0_ = zero_relation(c);
    rel_ = next_relation(c);
    seq_.resize(static_cast<size_t>(lits_));
    mu_.assign(static_cast<size_t>(lits_), 0);
    lambda_.assign(static_cast<size_t>(lits_), 1);
    firstPos_.assign(static_cast<size_t>(lits_) * lits_, -1);
    constexpr size_t kMaxSteps = 200000;
    for (int l = 0; l < lits_; ++l) {
        auto& sq = seq_[l];
        std::map<LitBits, long long> seen;
        LitBits cur(lits_);
        cur.set(l);
        while (true) {
            auto [it, fresh] = seen.emplace(cur, static_cast<long long>(sq.size()));
            if (!fresh) {
                mu_[l] = it->second;
                lambda_[l] = static_cast<long long>(sq.size()) - it->second;
                break;
            }
            if (sq.size() > kMaxSteps) throw std::runtime_error("krom-next: consequence sequence too long");
            sq.push_back(cur);
            cur = step(rel_, cur);
        }
        maxMu_ = std::max(maxMu_, mu_[l]);
        lcm_ = std::min<long long>(std::lcm(lcm_, lambda_[l]), 1LL << 40);
        long long span = mu_[l] + lambda_[l];
        for (long long k = 1; k <= span; ++k)
            fwd(l, k).for_each([&](int l2) {
                long long& fp = firstPos_[static_cast<size_t>(l) * lits_ + l2];
                if (fp < 0) fp = k;
            });
    }
}

const LitBits& GapOracle::fwd(int lit, long long n) const {
    if (n == 0) return rel0_[lit];
    long long mu = mu_[lit], lam = lambda_[lit];
    long long k = n < mu + lam ? n : mu + (n - mu) % lam;
    return seq_[lit][static_cast<size_t>(k)];
}

ProgressionSet GapOracle::prog(int from, int to) const {
    ProgressionSet ps;
    ps.sourceStates = lits_;
    long long mu = mu_[from], lam = lambda_[from];
    long long start = std::max<long long>(mu, 1);
    for (long long k = 1; k < start; ++k)
        if (fwd(from, k).test(to)) ps.progs.push_back({k, 0});
    for (long long k = start; k < start + lam; ++k)
        if (fwd(from, k).test(to)) ps.progs.push_back({k, lam});
    return ps;
}

LitBits GapOracle::F(const LitBits& t, long long n) const {
    LitBits out(lits_);
    t.for_each([&](int l) { out |= fwd(l, n); });
    return out;
}

LitBits GapOracle::P(const LitBits& t2, long long n) const {
    LitBits neg = t2.negated(), out(lits_);
    for (int l = 0; l < lits_; ++l)
        if (fwd(l ^ 1, n).intersects(neg)) out.set(l);
    return out;
}

bool GapOracle::l1(const LitBits& t, const LitBits& t2, long long n) const {
    return F(t, n).subset_of(t2) && P(t2, n).subset_of(t);
}

long long GapOracle::theta_bound(const LitBits& t, const LitBits& t2, const LitBits& theta, long long cap,
                                 std::vector<std::pair<int, int>>* why) const {
    // why: (side, literal) pairs, side 0 = t, 1 = t2, 2 = theta
    long long hi = cap - 1;
    std::vector<std::pair<int, int>> best;
    auto bound = [&](long long v, std::pair<int, int> a, std::pair<int, int> b) {
        if (v < hi) {
            hi = v;
            best = {a, b};
        }
    };
    LitBits negTheta = theta.negated();
    theta.for_each([&](int l) {
        t.for_each([&](int l0) {
            long long fp = first_positive(l0, l ^ 1);
            if (fp >= 0) bound(fp, {0, l0}, {2, l});
        });
        t2.for_each([&](int l2) {
            long long fp = first_positive(l, l2 ^ 1);
            if (fp >= 0) bound(fp, {2, l}, {1, l2});
        });
        LitBits clash = rel0_[l];
        clash &= negTheta;
        if (clash.any()) bound(1, {2, l}, {2, clash.first() ^ 1});
        theta.for_each([&](int l2) {
            long long fp = first_positive(l, l2 ^ 1);
            if (fp >= 0) bound(fp + 1, {2, l}, {2, l2});
        });
    });
    if (why) *why = best;
    return hi;
}

bool GapOracle::check(const LitBits& t, const LitBits& t2, const LitBits& theta, long long n) const {
    if (n < 1 || inconsistent_) return false;
    if (!F(t, 0).subset_of(t) || !P(t2, 0).subset_of(t2)) return false;
    if (!l1(t, t2, n)) return false;
    bool ok = true;
    // theta against both ends: no complement reachable strictly inside (0, n)
    theta.for_each([&](int l) {
        t.for_each([&](int l0) {
            long long fp = first_positive(l0, l ^ 1);
            if (fp >= 0 && fp < n) ok = false;
        });
        t2.for_each([&](int l2) {
            long long fp = first_positive(l, l2 ^ 1);
            if (fp >= 0 && fp < n) ok = false;
        });
    });
    if (!ok) return false;
    // theta against itself at two interior moments
    if (n >= 2) {
        LitBits negTheta = theta.negated();
        theta.for_each([&](int l) {
            if (rel0_[l].intersects(negTheta)) ok = false;
            if (n >= 3)
                theta.for_each([&](int l2) {
                    long long fp = first_positive(l, l2 ^ 1);
                    if (fp >= 0 && fp < n - 1) ok = false;
                });
        });
    }
    return ok;
}

std::optional<long long> GapOracle::minimal_gap(const LitBits& t, const LitBits& t2, const LitBits& theta,
                                                long long cap) const {
    if (inconsistent_ || cap <= 1) return std::nullopt;
    if (!F(t, 0).subset_of(t) || !P(t2, 0).subset_of(t2)) return std::nullopt;
    long long hi = theta_bound(t, t2, theta, cap, nullptr);
    // past maxMu the sets F^n repeat with period lcm
    long long scan = std::min(hi, maxMu_ + lcm_ + 1);
    for (long long n = 1; n <= scan; ++n)
        if (l1(t, t2, n)) return n;
    return std::nullopt;
}

// ---------- certificates ----------

namespace {

enum class Kind { atom, boxF, boxP };

struct Setup {
    std::vector<std::string> symbols;
    std::vector<Kind> kind;
    std::vector<int> base;  // atom symbol under a surrogate
    std::vector<Clause> clauses;
    KromClosure closure;
    LitBits psi;
    int n = 0;
    int lits() const { return 2 * n; }
};

int pos_lit(int sym) { return 2 * sym; }
int neg_lit(int sym) { return 2 * sym + 1; }

Setup make_setup(const RestrictedForm& rf) {
    if (!ops_leq(rf.opSet, OpSet::box_next)) throw std::invalid_argument("krom-next: unsupported operators");
    if (rf.opSet == OpSet::star) throw std::invalid_argument("krom-next: star input needs the star procedure");
    if (!class_leq(rf.cls, ClauseClass::krom)) throw std::invalid_argument("krom-next: clauses are not binary");
    if (!rf.initial.empty()) throw std::invalid_argument("krom-next: initial clauses are not supported");
    Setup s;
    auto atoms = atoms_of(rf);
    atoms.insert(rf.psi.begin(), rf.psi.end());
    AbstractedForm af = abstract(rf);
    std::map<std::string, int> idx;
    for (auto& a : atoms) {
        idx[a] = static_cast<int>(s.symbols.size());
        s.symbols.push_back(a);
        s.kind.push_back(Kind::atom);
        s.base.push_back(-1);
    }
    for (auto& [name, lit] : af.literalOf) {
        idx[name] = static_cast<int>(s.symbols.size());
        s.symbols.push_back(name);
        s.kind.push_back(lit.ops[0] == LitOp::BoxF ? Kind::boxF : Kind::boxP);
        s.base.push_back(idx.at(lit.atom));
    }
    s.n = static_cast<int>(s.symbols.size());
    s.clauses = af.clauses;
    s.closure = complete_closure(s.symbols, s.clauses);
    s.psi = LitBits(s.lits());
    for (auto& p : rf.psi) s.psi.set(pos_lit(idx.at(p)));
    return s;
}

long long gap_cap(int n) { return n >= 62 ? (1LL << 62) : (1LL << n); }

// theta for the gap between t and t2; src[lit] records the type literal
// that put lit into theta as (side, literal)
LitBits theta_of(const Setup& s, const LitBits& t, const LitBits& t2,
                 std::vector<std::pair<int, int>>* src = nullptr) {
    LitBits out(s.lits());
    if (src) src->assign(static_cast<size_t>(s.lits()), {-1, -1});
    auto put = [&](int lit, int side, int from) {
        out.set(lit);
        if (src && (*src)[lit].first < 0) (*src)[lit] = {side, from};
    };
    for (int i = 0; i < s.n; ++i) {
        if (s.kind[i] == Kind::atom) continue;
        int side = s.kind[i] == Kind::boxF ? 0 : 1;
        const LitBits& ty = side == 0 ? t : t2;
        if (ty.test(pos_lit(i))) {
            put(pos_lit(i), side, pos_lit(i));
            put(pos_lit(s.base[i]), side, pos_lit(i));
        } else {
            put(neg_lit(i), side, neg_lit(i));
        }
    }
    return out;
}

bool b2_ok(const Setup& s, const LitBits& t, const LitBits& t2) {
    for (int i = 0; i < s.n; ++i) {
        int b = s.base[i];
        if (s.kind[i] == Kind::boxF) {
            if (t.test(pos_lit(i)) && !(t2.test(pos_lit(i)) && t2.test(pos_lit(b)))) return false;
            if (t2.test(pos_lit(i)) && !t.test(pos_lit(i)) && t2.test(pos_lit(b))) return false;
        } else if (s.kind[i] == Kind::boxP) {
            if (t2.test(pos_lit(i)) && !(t.test(pos_lit(i)) && t.test(pos_lit(b)))) return false;
            if (t.test(pos_lit(i)) && !t2.test(pos_lit(i)) && t.test(pos_lit(b))) return false;
        }
    }
    return true;
}

LitBits to_bits(const std::vector<bool>& type) {
    LitBits out(2 * static_cast<int>(type.size()));
    for (size_t i = 0; i < type.size(); ++i) out.set(type[i] ? pos_lit(static_cast<int>(i)) : neg_lit(static_cast<int>(i)));
    return out;
}

std::vector<bool> from_bits(const LitBits& t, int n) {
    std::vector<bool> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = t.test(pos_lit(i));
    return out;
}

CertificateCheck fail(std::string cond, std::string detail) { return {false, std::move(cond), std::move(detail)}; }

}  // namespace

std::string certificate_string(const Certificate& c) {
    std::ostringstream os;
    for (size_t i = 0; i < c.types.size(); ++i) {
        os << "type " << i << ": {";
        for (size_t j = 0; j < c.symbols.size(); ++j) os << (j ? ", " : "") << (c.types[i][j] ? '+' : '-') << c.symbols[j];
        os << "}\n";
    }
    for (size_t i = 0; i < c.gaps.size(); ++i) os << "gap " << i << ": " << c.gaps[i] << "\n";
    os << "l0: " << c.l0 << "\nlP: " << c.lP << "\nlF: " << c.lF << "\n";
    return os.str();
}

namespace {

CertificateCheck verify_with(const Setup& s, const GapOracle& g, const Certificate& c) {
    int K = static_cast<int>(c.gaps.size());
    if (c.symbols != s.symbols) return fail("structure", "symbol list differs");
    if (static_cast<int>(c.types.size()) != K + 1 || K < 1) return fail("structure", "need K+1 types for K gaps");
    for (auto& t : c.types)
        if (static_cast<int>(t.size()) != s.n) return fail("structure", "type of wrong width");
    if (!(c.l0 > 0 && c.l0 < K && c.lP > 0 && c.lP <= K && c.lF >= 0 && c.lF < K))
        return fail("structure", "index out of range");
    std::vector<LitBits> ts;
    for (auto& t : c.types) ts.push_back(to_bits(t));

    for (int i = 0; i < K; ++i)
        if (c.gaps[i] < 1 || c.gaps[i] >= gap_cap(s.n)) return fail("B0", "gap " + std::to_string(i));
    if (!s.psi.subset_of(ts[c.l0])) return fail("B1", "initial atoms missing at l0");
    for (int i = 0; i < K; ++i)
        if (!b2_ok(s, ts[i], ts[i + 1])) return fail("B2", "between types " + std::to_string(i) + " and " + std::to_string(i + 1));
    if (ts[c.lF] != ts[K]) return fail("B3", "type at lF differs from the last type");
    if (ts[c.lP] != ts[0]) return fail("B3", "type at lP differs from the first type");
    for (int i = 0; i < s.n; ++i) {
        int b = s.base[i];
        if (s.kind[i] == Kind::boxF && ts[c.lF].test(neg_lit(i))) {
            bool found = false;
            for (int j = c.lF; j <= K; ++j) found |= ts[j].test(neg_lit(b));
            if (!found) return fail("B3", "no witness for " + s.symbols[i] + " after lF");
        }
        if (s.kind[i] == Kind::boxP && ts[c.lP].test(neg_lit(i))) {
            bool found = false;
            for (int j = 0; j <= c.lP; ++j) found |= ts[j].test(neg_lit(b));
            if (!found) return fail("B3", "no witness for " + s.symbols[i] + " before lP");
        }
    }
    for (int i = 0; i < K; ++i)
        if (!g.check(ts[i], ts[i + 1], theta_of(s, ts[i], ts[i + 1]), c.gaps[i]))
            return fail("B4", "gap " + std::to_string(i) + " infeasible");
    return {};
}

}  // namespace

CertificateCheck verify_certificate(const RestrictedForm& rf, const Certificate& c) {
    Setup s = make_setup(rf);
    GapOracle g(s.closure);
    return verify_with(s, g, c);
}

UPModel extract_model(const RestrictedForm& rf, const Certificate& c) {
    Setup s = make_setup(rf);
    int K = static_cast<int>(c.gaps.size());
    int natoms = 0;
    while (natoms < s.n && s.kind[natoms] == Kind::atom) ++natoms;
    std::map<std::string, int> idx;
    for (int j = 0; j < s.n; ++j) idx[s.symbols[j]] = j;
    std::vector<std::vector<bool>> states;  // full symbol valuations per position
    for (int i = 0; i < K; ++i) {
        long long n = c.gaps[i];
        if (n > 1000000) throw std::runtime_error("extract_model: gap too large to materialize");
        LitBits t = to_bits(c.types[i]), t2 = to_bits(c.types[i + 1]);
        LitBits theta = theta_of(s, t, t2);
        PropClauseSet cs;
        auto var = [&](int sym, long long k) { return cs.var(s.symbols[sym] + "@" + std::to_string(k)); };
        for (long long k = 0; k <= n; ++k)
            for (int sym = 0; sym < s.n; ++sym) var(sym, k);
        for (int sym = 0; sym < s.n; ++sym) {
            cs.add_clause({t.test(pos_lit(sym)) ? var(sym, 0) : -var(sym, 0)});
            cs.add_clause({t2.test(pos_lit(sym)) ? var(sym, n) : -var(sym, n)});
            for (long long k = 1; k < n; ++k) {
                if (theta.test(pos_lit(sym))) cs.add_clause({var(sym, k)});
                if (theta.test(neg_lit(sym))) cs.add_clause({-var(sym, k)});
            }
        }
        for (auto& cl : s.clauses) {
            bool hasNext = false;
            for (auto& l : cl.pos) hasNext |= !l.ops.empty();
            for (auto& l : cl.neg) hasNext |= !l.ops.empty();
            for (long long k = 0; k + (hasNext ? 1 : 0) <= n; ++k) {
                std::vector<int> lits;
                bool trivial = false;
                for (auto& l : cl.pos)
                    if (!l.bottom()) lits.push_back(var(idx.at(l.atom), k + (l.ops.empty() ? 0 : 1)));
                for (auto& l : cl.neg) {
                    if (l.bottom()) { trivial = true; break; }
                    lits.push_back(-var(idx.at(l.atom), k + (l.ops.empty() ? 0 : 1)));
                }
                if (!trivial) cs.add_clause(lits);
            }
        }
        auto m = two_sat(cs);
        if (!m) throw std::logic_error("extract_model: gap segment " + std::to_string(i) + " has no witness");
        for (long long k = 0; k < n; ++k) {
            std::vector<bool> st(static_cast<size_t>(s.n));
            for (int sym = 0; sym < s.n; ++sym) st[sym] = (*m)[var(sym, k)];
            states.push_back(st);
        }
    }
    states.push_back(c.types[K]);

    std::vector<long long> pos(static_cast<size_t>(K + 1), 0);
    for (int i = 0; i < K; ++i) pos[i + 1] = pos[i] + c.gaps[i];
    auto state = [&](long long p) {
        State st;
        for (int sym = 0; sym < natoms; ++sym)
            if (states[p][sym]) st.insert(s.symbols[sym]);
        return st;
    };
    UPModel out;
    for (long long p = 0; p < pos[c.lP]; ++p) out.left.push_back(state(p));
    for (long long p = 0; p <= pos[K]; ++p) out.core.push_back(state(p));
    for (long long p = pos[c.lF] + 1; p <= pos[K]; ++p) out.right.push_back(state(p));
    out.anchor = pos[c.l0];
    if (!eval_clausal(out, restricted_to_clausal(rf)))
        throw std::logic_error("extract_model: assembled model does not satisfy the input");
    return out;
}

// ---------- search ----------

namespace {

// propositional clauses of the closure as pairs of propositional literals
std::vector<std::pair<int, int>> prop_clauses(const Setup& s) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : s.closure.list)
        if (!is_next(a) && !is_next(b)) out.push_back({prop_lit(a), prop_lit(b)});
    return out;
}

std::optional<std::vector<LitBits>> enumerate_types(const Setup& s, long limit) {
    std::vector<std::vector<std::pair<int, int>>> byTop(static_cast<size_t>(s.n));
    for (auto [la, lb] : prop_clauses(s)) byTop[std::max(la, lb) >> 1].push_back({la, lb});
    std::vector<LitBits> out;
    std::vector<std::pair<int, LitBits>> stack{{0, LitBits(s.lits())}};
    while (!stack.empty()) {
        auto [i, t] = std::move(stack.back());
        stack.pop_back();
        if (i == s.n) {
            out.push_back(std::move(t));
            if (static_cast<long>(out.size()) > limit) return std::nullopt;
            continue;
        }
        for (int neg = 1; neg >= 0; --neg) {
            LitBits u = t;
            u.set(2 * i + neg);
            bool ok = true;
            for (auto [la, lb] : byTop[i])
                if (!u.test(la) && !u.test(lb)) ok = false;
            if (ok) stack.push_back({i + 1, std::move(u)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Certificate> search_types(const Setup& s, const GapOracle& g, const std::vector<LitBits>& types) {
    int nt = static_cast<int>(types.size());
    if (nt == 0) return std::nullopt;
    LitBits surMask(s.lits());
    for (int i = 0; i < s.n; ++i)
        if (s.kind[i] != Kind::atom) {
            surMask.set(pos_lit(i));
            surMask.set(neg_lit(i));
        }
    auto profile = [&](int u) {
        LitBits p = types[u];
        p &= surMask;
        return p;
    };

    std::vector<std::vector<int>> adj(nt), same(nt);
    std::map<std::pair<int, int>, long long> gap;
    long long cap = gap_cap(s.n);
    for (int u = 0; u < nt; ++u)
        for (int v = 0; v < nt; ++v) {
            if (!b2_ok(s, types[u], types[v])) continue;
            auto n = g.minimal_gap(types[u], types[v], theta_of(s, types[u], types[v]), cap);
            if (!n) continue;
            adj[u].push_back(v);
            gap[{u, v}] = *n;
            if (profile(u) == profile(v)) same[u].push_back(v);
        }

    int ncomp = 0;
    std::vector<int> comp = scc(same, ncomp);
    std::vector<char> cyclic(ncomp, 0);
    std::vector<LitBits> compLits(ncomp, LitBits(s.lits()));
    for (int u = 0; u < nt; ++u) {
        compLits[comp[u]] |= types[u];
        for (int v : same[u])
            if (comp[v] == comp[u]) cyclic[comp[u]] = 1;
    }
    // witnesses needed for false surrogates in one direction
    auto needs = [&](int u, Kind k) {
        std::vector<int> out;
        for (int i = 0; i < s.n; ++i)
            if (s.kind[i] == k && types[u].test(neg_lit(i))) out.push_back(s.base[i]);
        return out;
    };
    auto good = [&](int u, Kind k) {
        if (!cyclic[comp[u]]) return false;
        for (int b : needs(u, k))
            if (!compLits[comp[u]].test(neg_lit(b))) return false;
        return true;
    };
    auto has_psi = [&](int u) { return s.psi.subset_of(types[u]); };

    // lasso: good-left type, through a type holding the initial atoms, to a good-right type
    std::vector<int> parent(2 * nt, -1);
    std::vector<char> seen(2 * nt, 0);
    std::vector<int> queue;
    for (int u = 0; u < nt; ++u)
        if (good(u, Kind::boxP)) {
            int id = 2 * u + (has_psi(u) ? 1 : 0);
            if (!seen[id]) {
                seen[id] = 1;
                queue.push_back(id);
            }
        }
    int goal = -1;
    for (size_t qi = 0; qi < queue.size() && goal < 0; ++qi) {
        int id = queue[qi], u = id / 2, ph = id % 2;
        if (ph && good(u, Kind::boxF)) {
            goal = id;
            break;
        }
        for (int v : adj[u]) {
            int nid = 2 * v + (ph || has_psi(v) ? 1 : 0);
            if (!seen[nid]) {
                seen[nid] = 1;
                parent[nid] = id;
                queue.push_back(nid);
            }
        }
    }
    if (goal < 0) return std::nullopt;

    std::vector<int> middle;
    for (int id = goal; id >= 0; id = parent[id]) middle.push_back(id / 2);
    std::reverse(middle.begin(), middle.end());

    // shortest path inside one component of the same-profile graph
    auto path_in = [&](int from, int to) {
        std::vector<int> par(nt, -2);
        std::vector<int> q{from};
        par[from] = -1;
        for (size_t qi = 0; qi < q.size(); ++qi)
            for (int v : same[q[qi]])
                if (comp[v] == comp[from] && par[v] == -2) {
                    par[v] = q[qi];
                    q.push_back(v);
                }
        std::vector<int> p;
        for (int x = to; x != from; x = par[x]) p.push_back(x);
        std::reverse(p.begin(), p.end());
        return p;  // excludes `from`
    };
    auto closed_walk = [&](int start, Kind k) {
        std::vector<int> walk{start};
        for (int b : needs(start, k)) {
            bool have = false;
            for (int x : walk) have |= types[x].test(neg_lit(b));
            if (have) continue;
            int w = -1;
            for (int x = 0; x < nt && w < 0; ++x)
                if (comp[x] == comp[start] && types[x].test(neg_lit(b))) w = x;
            for (int x : path_in(walk.back(), w)) walk.push_back(x);
        }
        if (walk.size() == 1) {
            int first = -1;
            for (int v : same[start])
                if (comp[v] == comp[start]) { first = v; break; }
            walk.push_back(first);
        }
        if (walk.back() != start)
            for (int x : path_in(walk.back(), start)) walk.push_back(x);
        return walk;
    };

    std::vector<int> seq = closed_walk(middle.front(), Kind::boxP);
    Certificate cert;
    cert.symbols = s.symbols;
    cert.lP = static_cast<int>(seq.size()) - 1;
    cert.l0 = -1;
    for (size_t i = 0; i < middle.size(); ++i) {
        if (i > 0) seq.push_back(middle[i]);
        if (cert.l0 < 0 && has_psi(middle[i])) cert.l0 = cert.lP + static_cast<int>(i);
    }
    cert.lF = static_cast<int>(seq.size()) - 1;
    auto right = closed_walk(middle.back(), Kind::boxF);
    for (size_t i = 1; i < right.size(); ++i) seq.push_back(right[i]);
    for (int x : seq) cert.types.push_back(from_bits(types[x], s.n));
    for (size_t i = 0; i + 1 < seq.size(); ++i) cert.gaps.push_back(gap.at({seq[i], seq[i + 1]}));
    return cert;
}

// Fixed-length certificate search: type bits are solver variables, gap
// feasibility is added lazily as clauses that forbid the offending pair of
// partial types at every position.
class SymbolicSearch {
public:
    SymbolicSearch(const Setup& s, const GapOracle& g, long maxRefinements)
        : s_(s), g_(g), maxRef_(maxRefinements) {
        int nbox = 0;
        for (auto k : s.kind) nbox += k != Kind::atom;
        // moments 0, m_P, m_F, one per box literal, plus the two ends
        K_ = nbox + 4;
        for (int i = 0; i <= K_; ++i) {
            std::vector<int> row;
            for (int j = 0; j < s.n; ++j) row.push_back(sat_.new_var());
            T_.push_back(row);
        }
        for (int i = 0; i <= K_; ++i) {
            l0_.push_back(sat_.new_var());
            lP_.push_back(sat_.new_var());
            lF_.push_back(sat_.new_var());
        }
        encode();
        encode_gaps();
    }

    long refinements() const { return refinements_; }

    std::optional<Certificate> run() {
        long long cap = gap_cap(s_.n);
        while (sat_.solve()) {
            std::vector<LitBits> ts;
            for (int i = 0; i <= K_; ++i) {
                LitBits t(s_.lits());
                for (int j = 0; j < s_.n; ++j) t.set(sat_.value(T_[i][j]) ? pos_lit(j) : neg_lit(j));
                ts.push_back(std::move(t));
            }
            Certificate cert;
            cert.symbols = s_.symbols;
            bool allOk = true;
            std::set<std::vector<int>> added;
            for (int i = 0; i < K_; ++i) {
                std::vector<std::pair<int, int>> src;
                LitBits theta = theta_of(s_, ts[i], ts[i + 1], &src);
                auto n = g_.minimal_gap(ts[i], ts[i + 1], theta, cap);
                if (n) {
                    cert.gaps.push_back(*n);
                    continue;
                }
                allOk = false;
                auto why = explain(ts[i], ts[i + 1], theta, src, cap);
                if (added.insert(why).second) block(why);
            }
            if (allOk) {
                for (int i = 0; i <= K_; ++i) {
                    cert.types.push_back(from_bits(ts[i], s_.n));
                    if (sat_.value(l0_[i]) && cert.l0 == 0) cert.l0 = i;
                    if (sat_.value(lP_[i]) && cert.lP == 0) cert.lP = i;
                }
                cert.lF = -1;
                for (int i = 0; i <= K_; ++i)
                    if (sat_.value(lF_[i]) && cert.lF < 0) cert.lF = i;
                return cert;
            }
            if (++refinements_ > maxRef_) throw std::runtime_error("krom-next: refinement limit reached");
        }
        return std::nullopt;
    }

private:
    int lit(int i, int l) const { return (l & 1) ? -T_[i][l >> 1] : T_[i][l >> 1]; }

    void encode() {
        auto pc = prop_clauses(s_);
        for (int i = 0; i <= K_; ++i)
            for (auto [a, b] : pc) sat_.add_clause({lit(i, a), lit(i, b)});
        // B1
        std::vector<int> any0;
        for (int i = 1; i < K_; ++i) any0.push_back(l0_[i]);
        sat_.add_clause(any0);
        sat_.add_clause({-l0_[0]});
        sat_.add_clause({-l0_[K_]});
        for (int i = 1; i < K_; ++i)
            s_.psi.for_each([&](int p) { sat_.add_clause({-l0_[i], lit(i, p)}); });
        // B2
        for (int i = 0; i < K_; ++i)
            for (int x = 0; x < s_.n; ++x) {
                if (s_.kind[x] == Kind::atom) continue;
                int b = s_.base[x];
                int a = i, c = i + 1;  // box F: from a to c
                if (s_.kind[x] == Kind::boxP) std::swap(a, c);
                sat_.add_clause({-T_[a][x], T_[c][x]});
                sat_.add_clause({-T_[a][x], T_[c][b]});
                sat_.add_clause({-T_[c][x], T_[a][x], -T_[c][b]});
            }
        // B3
        std::vector<int> anyF, anyP;
        for (int j = 0; j < K_; ++j) anyF.push_back(lF_[j]);
        for (int j = 1; j <= K_; ++j) anyP.push_back(lP_[j]);
        sat_.add_clause(anyF);
        sat_.add_clause(anyP);
        sat_.add_clause({-lF_[K_]});
        sat_.add_clause({-lP_[0]});
        for (int j = 0; j <= K_; ++j)
            for (int x = 0; x < s_.n; ++x) {
                sat_.add_clause({-lF_[j], -T_[j][x], T_[K_][x]});
                sat_.add_clause({-lF_[j], T_[j][x], -T_[K_][x]});
                sat_.add_clause({-lP_[j], -T_[j][x], T_[0][x]});
                sat_.add_clause({-lP_[j], T_[j][x], -T_[0][x]});
            }
        for (int x = 0; x < s_.n; ++x) {
            if (s_.kind[x] == Kind::atom) continue;
            int b = s_.base[x];
            for (int j = 0; j <= K_; ++j) {
                if (s_.kind[x] == Kind::boxF) {
                    std::vector<int> c{-lF_[j], T_[j][x]};
                    for (int k = j; k <= K_; ++k) c.push_back(-T_[k][b]);
                    sat_.add_clause(c);
                } else {
                    std::vector<int> c{-lP_[j], T_[j][x]};
                    for (int k = 0; k <= j; ++k) c.push_back(-T_[k][b]);
                    sat_.add_clause(c);
                }
            }
        }
    }

    // One-hot gap per step with the forward consequences of each length.
    // Lengths past period_start + period repeat, and theta only rules out
    // longer gaps, so the range is enough; the lazy check stays exact.
    void encode_gaps() {
        long long span = g_.period_start() + g_.period();
        if (span > 4096) return;
        long long size = 0;
        for (long long v = 1; v <= span; ++v)
            for (int l = 0; l < s_.lits(); ++l) size += g_.fwd(l, v).count();
        if (size * K_ > 4000000) return;
        for (int i = 0; i < K_; ++i) {
            std::vector<int> any;
            for (long long v = 1; v <= span; ++v) {
                int gv = sat_.new_var();
                any.push_back(gv);
                for (int l = 0; l < s_.lits(); ++l)
                    g_.fwd(l, v).for_each([&](int m) { sat_.add_clause({-gv, -lit(i, l), lit(i + 1, m)}); });
            }
            sat_.add_clause(any);
        }
    }

    // literals of the pair (t, t2) that already rule out every gap; encoded
    // as side*len + literal
    std::vector<int> explain(const LitBits& t, const LitBits& t2, const LitBits& theta,
                             const std::vector<std::pair<int, int>>& src, long long cap) const {
        std::set<std::pair<int, int>> why;
        auto note = [&](std::pair<int, int> r) {
            if (r.first == 2) r = src[r.second];
            why.insert(r);
        };
        std::vector<std::pair<int, int>> hiWhy;
        long long hi = g_.theta_bound(t, t2, theta, cap, &hiWhy);
        for (auto& r : hiWhy) note(r);
        long long scan = std::min(hi, g_.period_start() + g_.period() + 1);
        std::vector<std::pair<int, int>> pairs;  // (l in t, m in t2) with not m in F^n(l)
        LitBits negT2 = t2.negated();
        for (long long n = 1; n <= scan; ++n) {
            bool covered = false;
            for (auto [l, m] : pairs)
                if (g_.fwd(l, n).test(m ^ 1)) {
                    covered = true;
                    break;
                }
            if (covered) continue;
            t.for_each([&](int l) {
                if (covered) return;
                LitBits hit = g_.fwd(l, n);
                hit &= negT2;
                int x = hit.first();
                if (x >= 0) {
                    pairs.push_back({l, x ^ 1});
                    covered = true;
                }
            });
            if (!covered) throw std::logic_error("krom-next: gap explanation incomplete");
        }
        for (auto [l, m] : pairs) {
            why.insert({0, l});
            why.insert({1, m});
        }
        std::vector<int> out;
        for (auto [side, l] : why) out.push_back(side * s_.lits() + l);
        return out;
    }

    void block(const std::vector<int>& why) {
        for (int i = 0; i < K_; ++i) {
            std::vector<int> c;
            for (int e : why) {
                int side = e / s_.lits(), l = e % s_.lits();
                c.push_back(-lit(i + side, l));
            }
            sat_.add_clause(c);
        }
    }

    const Setup& s_;
    const GapOracle& g_;
    long maxRef_;
    long refinements_ = 0;
    int K_ = 0;
    Cdcl sat_;
    std::vector<std::vector<int>> T_;
    std::vector<int> l0_, lP_, lF_;
};

}  // namespace

KromNextResult decide_krom_next(const RestrictedForm& rf, const KromNextOptions& opt) {
    KromNextResult res;
    Setup s = make_setup(rf);
    if (s.closure.inconsistent) return res;
    GapOracle g(s.closure);

    std::optional<Certificate> cert;
    std::optional<std::vector<LitBits>> types;
    if (opt.search != KromSearch::symbolic)
        types = enumerate_types(s, opt.search == KromSearch::types ? std::max(opt.maxTypes, 1L << 20) : opt.maxTypes);
    if (types) {
        res.search = "types";
        res.typeCount = static_cast<long>(types->size());
        cert = search_types(s, g, *types);
    } else {
        if (opt.search == KromSearch::types) throw std::runtime_error("krom-next: too many types");
        res.search = "symbolic";
        SymbolicSearch ss(s, g, opt.maxRefinements);
        cert = ss.run();
        res.refinements = ss.refinements();
    }
    if (!cert) return res;

    auto chk = verify_with(s, g, *cert);
    if (!chk.ok) throw std::logic_error("krom-next: built certificate fails " + chk.failed + ": " + chk.detail);
    res.sat = true;
    res.model = extract_model(rf, *cert);
    res.certificate = std::move(cert);
    return res;
}

}  // namespace ltlz
