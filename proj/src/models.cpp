#include "ltlz/models.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ltlz {

UPModel normalize_model(UPModel m) {
    if (m.left.empty() || m.right.empty()) throw std::invalid_argument("model periods must be nonempty");
    if (m.core.empty()) {
        if (m.left != m.right) throw std::invalid_argument("empty core requires identical periods");
        m.core = m.right;
        m.anchor = 0;
    }
    if (m.anchor < 0 || m.anchor >= static_cast<long>(m.core.size()))
        throw std::invalid_argument("anchor must index into the core");
    return m;
}

namespace {

long pmod(long a, long b) {
    long r = a % b;
    return r < 0 ? r + b : r;
}

const State& state_pos(const UPModel& m, long p) {
    long C = static_cast<long>(m.core.size());
    long L = static_cast<long>(m.left.size()), R = static_cast<long>(m.right.size());
    if (p >= 0 && p < C) return m.core[p];
    if (p >= C) return m.right[pmod(p - C, R)];
    return m.left[L - 1 - pmod(-p - 1, L)];
}

// Truth values of one subformula over all core positions. A node's values
// are periodic (period L) below position -mL and periodic (period R) from
// position C + mR on, so storing [-mL - L, C + mR + R) determines all of Z.
struct Vals {
    long mL = 0, mR = 0, lo = 0;
    std::vector<char> v;
};

class Evaluator {
public:
    explicit Evaluator(const UPModel& m)
        : m_(m), L_(static_cast<long>(m.left.size())), C_(static_cast<long>(m.core.size())),
          R_(static_cast<long>(m.right.size())) {}

    bool at(const Formula& f, long p) {
        const Vals& x = vals(f);
        return get(x, p);
    }

    // every moment of the timeline
    bool always(const Formula& f) {
        const Vals& x = vals(f);
        return std::all_of(x.v.begin(), x.v.end(), [](char c) { return c != 0; });
    }

private:
    bool get(const Vals& x, long p) const {
        long hi = C_ + x.mR + R_;
        if (p >= hi) p = C_ + x.mR + pmod(p - C_ - x.mR, R_);
        else if (p < x.lo) p = x.lo + pmod(p - x.lo, L_);
        return x.v[p - x.lo] != 0;
    }

    const Vals& vals(const Formula& f) {
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        Vals r = compute(f);
        alive_.push_back(f);  // pointer keys must not be reused by later temporaries
        return memo_.emplace(f.get(), std::move(r)).first->second;
    }

    void alloc(Vals& r) {
        r.lo = -r.mL - L_;
        r.v.assign(static_cast<size_t>(C_ + r.mR + R_ - r.lo), 0);
    }

    Vals compute(const Formula& f) {
        Vals r;
        switch (f->op) {
        case Op::Var:
        case Op::True:
        case Op::False: {
            alloc(r);
            for (long p = r.lo; p < r.lo + static_cast<long>(r.v.size()); ++p) {
                bool b = f->op == Op::True || (f->op == Op::Var && state_pos(m_, p).count(f->name));
                r.v[p - r.lo] = b;
            }
            return r;
        }
        case Op::Not: {
            const Vals& a = vals(f->lhs);
            r.mL = a.mL;
            r.mR = a.mR;
            alloc(r);
            for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = !a.v[i];
            return r;
        }
        case Op::And:
        case Op::Or:
        case Op::Implies: {
            const Vals& a = vals(f->lhs);
            const Vals& b = vals(f->rhs);
            r.mL = std::max(a.mL, b.mL);
            r.mR = std::max(a.mR, b.mR);
            alloc(r);
            for (size_t i = 0; i < r.v.size(); ++i) {
                long p = r.lo + static_cast<long>(i);
                bool x = get(a, p), y = get(b, p);
                r.v[i] = f->op == Op::And ? (x && y) : f->op == Op::Or ? (x || y) : (!x || y);
            }
            return r;
        }
        case Op::NextF:
        case Op::NextP: {
            const Vals& a = vals(f->lhs);
            long d = f->op == Op::NextF ? 1 : -1;
            r.mL = a.mL + (d > 0 ? 1 : 0);
            r.mR = a.mR + (d < 0 ? 1 : 0);
            alloc(r);
            for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = get(a, r.lo + static_cast<long>(i) + d);
            return r;
        }
        case Op::BoxF:
        case Op::DiaF: {
            bool box = f->op == Op::BoxF;
            const Vals& a = vals(f->lhs);
            // from C + mR(a) on, the strict future covers a full period
            bool tail = box;
            for (long p = C_ + a.mR; p < C_ + a.mR + R_; ++p) tail = box ? (tail && get(a, p)) : (tail || get(a, p));
            r.mR = a.mR;
            r.mL = a.mL + L_ + 1;
            alloc(r);
            long hi = r.lo + static_cast<long>(r.v.size());
            bool cur = tail;
            for (long p = hi - 1; p >= r.lo; --p) {
                if (p >= C_ + a.mR) cur = tail;
                else cur = box ? (get(a, p + 1) && cur) : (get(a, p + 1) || cur);
                r.v[p - r.lo] = cur;
            }
            return r;
        }
        case Op::BoxP:
        case Op::DiaP: {
            bool box = f->op == Op::BoxP;
            const Vals& a = vals(f->lhs);
            bool tail = box;
            for (long p = -a.mL - L_; p < -a.mL; ++p) tail = box ? (tail && get(a, p)) : (tail || get(a, p));
            r.mL = a.mL;
            r.mR = a.mR + R_ + 1;
            alloc(r);
            bool cur = tail;
            for (long p = r.lo; p < r.lo + static_cast<long>(r.v.size()); ++p) {
                if (p < -a.mL) cur = tail;
                else cur = box ? (get(a, p - 1) && cur) : (get(a, p - 1) || cur);
                r.v[p - r.lo] = cur;
            }
            return r;
        }
        case Op::BoxAll:
        case Op::DiaAll: {
            const Vals& a = vals(f->lhs);
            bool all = std::all_of(a.v.begin(), a.v.end(), [](char c) { return c != 0; });
            bool any = std::any_of(a.v.begin(), a.v.end(), [](char c) { return c != 0; });
            alloc(r);
            std::fill(r.v.begin(), r.v.end(), f->op == Op::BoxAll ? all : any);
            return r;
        }
        case Op::Until: {
            const Vals& a = vals(f->lhs);
            const Vals& b = vals(f->rhs);
            long M = std::max(a.mL, b.mL);
            r.mR = std::max(a.mR, b.mR);
            r.mL = M + 2 * L_;
            alloc(r);
            long hi = r.lo + static_cast<long>(r.v.size());
            long z = C_ + r.mR;
            bool cur = false;
            for (long p = hi - 1; p >= r.lo; --p) {
                if (p >= z) {
                    // periodic zone: a witness within one period exists if any does
                    bool w = false, pre = true;
                    for (long j = 1; j <= R_ && !w; ++j) {
                        if (pre && get(b, p + j)) w = true;
                        pre = pre && get(a, p + j);
                    }
                    cur = w;
                } else {
                    cur = get(b, p + 1) || (get(a, p + 1) && cur);
                }
                r.v[p - r.lo] = cur;
            }
            return r;
        }
        case Op::Since: {
            const Vals& a = vals(f->lhs);
            const Vals& b = vals(f->rhs);
            long M = std::max(a.mR, b.mR);
            r.mL = std::max(a.mL, b.mL);
            r.mR = M + 2 * R_;
            alloc(r);
            long z = -r.mL;
            bool cur = false;
            for (long p = r.lo; p < r.lo + static_cast<long>(r.v.size()); ++p) {
                if (p < z) {
                    bool w = false, pre = true;
                    for (long j = 1; j <= L_ && !w; ++j) {
                        if (pre && get(b, p - j)) w = true;
                        pre = pre && get(a, p - j);
                    }
                    cur = w;
                } else {
                    cur = get(b, p - 1) || (get(a, p - 1) && cur);
                }
                r.v[p - r.lo] = cur;
            }
            return r;
        }
        }
        throw std::logic_error("unknown operator");
    }

    const UPModel& m_;
    long L_, C_, R_;
    std::unordered_map<const Node*, Vals> memo_;
    std::vector<Formula> alive_;
};

}  // namespace

State state_at(const UPModel& m, long n) { return state_pos(m, n + m.anchor); }

bool eval_formula(const UPModel& m, const Formula& f, long n) {
    UPModel nm = normalize_model(m);
    Evaluator ev(nm);
    return ev.at(f, n + nm.anchor);
}

bool eval_literal(const UPModel& m, long n, const Literal& l) { return eval_formula(m, literal_formula(l), n); }

bool eval_clause(const UPModel& m, long n, const Clause& c) { return eval_formula(m, clause_formula(c), n); }

bool eval_clausal(const UPModel& m, const ClausalForm& cf) {
    UPModel nm = normalize_model(m);
    Evaluator ev(nm);
    long a = nm.anchor;
    for (auto& l : cf.initialPos)
        if (!ev.at(literal_formula(l), a)) return false;
    for (auto& l : cf.initialNeg)
        if (ev.at(literal_formula(l), a)) return false;
    for (auto& c : cf.initialClauses)
        if (!ev.at(clause_formula(c), a)) return false;
    for (auto& c : cf.boxed)
        if (!ev.always(clause_formula(c))) return false;
    return true;
}

std::string state_string(const State& s) {
    std::string out = "{";
    bool first = true;
    for (auto& a : s) {
        if (!first) out += ",";
        out += a;
        first = false;
    }
    return out + "}";
}

std::string serialize_model(const UPModel& m) {
    std::ostringstream os;
    auto line = [&](const char* key, const std::vector<State>& v) {
        os << key << ":";
        for (auto& s : v) os << " " << state_string(s);
        os << "\n";
    };
    line("left", m.left);
    line("core", m.core);
    line("right", m.right);
    os << "anchor: " << m.anchor << "\n";
    return os.str();
}

namespace {

std::vector<State> parse_states(const std::string& s) {
    std::vector<State> out;
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '{') throw std::invalid_argument("expected '{' in model state list");
        size_t j = s.find('}', i);
        if (j == std::string::npos) throw std::invalid_argument("unterminated state");
        State st;
        std::string body = s.substr(i + 1, j - i - 1), tok;
        std::istringstream bs(body);
        while (std::getline(bs, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (!tok.empty()) st.insert(tok);
        }
        out.push_back(std::move(st));
        i = j + 1;
    }
    return out;
}

}  // namespace

UPModel parse_model(const std::string& text) {
    UPModel m;
    bool seen[4] = {false, false, false, false};
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto c = line.find(':');
        if (c == std::string::npos) continue;
        std::string key = line.substr(0, c), rest = line.substr(c + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key == "left") m.left = parse_states(rest), seen[0] = true;
        else if (key == "core") m.core = parse_states(rest), seen[1] = true;
        else if (key == "right") m.right = parse_states(rest), seen[2] = true;
        else if (key == "anchor") m.anchor = std::stol(rest), seen[3] = true;
    }
    if (!(seen[0] && seen[1] && seen[2] && seen[3])) throw std::invalid_argument("model needs left/core/right/anchor lines");
    return normalize_model(m);
}

}  // namespace ltlz
