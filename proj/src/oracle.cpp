#include "ltlz/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlz {

namespace {

long pmod(long a, long b) {
    long r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace

ShapeEncoder::ShapeEncoder(Cdcl& solver, Shape shape)
    : s_(solver), sh_(shape), L_(shape.left), C_(shape.core), R_(shape.right) {
    if (L_ < 1 || R_ < 1 || C_ < 1) throw std::invalid_argument("shape periods and core must be nonempty");
    true_ = s_.new_var();
    s_.add_clause({true_});
}

int ShapeEncoder::atom(const std::string& a, long p) {
    auto& slots = atomVars_[a];
    if (slots.empty()) {
        slots.resize(static_cast<size_t>(L_ + C_ + R_));
        for (auto& v : slots) v = s_.new_var();
    }
    long idx;
    if (p >= 0 && p < C_) idx = L_ + p;
    else if (p >= C_) idx = L_ + C_ + pmod(p - C_, R_);
    else idx = L_ - 1 - pmod(-p - 1, L_);
    return slots[static_cast<size_t>(idx)];
}

int ShapeEncoder::get(const Vals& x, long p) const {
    long hi = C_ + x.mR + R_;
    if (p >= hi) p = C_ + x.mR + pmod(p - C_ - x.mR, R_);
    else if (p < x.lo) p = x.lo + pmod(p - x.lo, L_);
    return x.v[static_cast<size_t>(p - x.lo)];
}

void ShapeEncoder::alloc(Vals& r) const {
    r.lo = -r.mL - L_;
    r.v.assign(static_cast<size_t>(C_ + r.mR + R_ - r.lo), 0);
}

int ShapeEncoder::mk_and(std::vector<int> xs) {
    std::vector<int> ys;
    for (int x : xs) {
        if (x == true_) continue;
        if (x == -true_) return -true_;
        ys.push_back(x);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (size_t i = 0; i + 1 < ys.size(); ++i)
        if (std::binary_search(ys.begin(), ys.end(), -ys[i])) return -true_;
    if (ys.empty()) return true_;
    if (ys.size() == 1) return ys[0];
    auto it = andMemo_.find(ys);
    if (it != andMemo_.end()) return it->second;
    int x = s_.new_var();
    std::vector<int> big{x};
    for (int y : ys) {
        s_.add_clause({-x, y});
        big.push_back(-y);
    }
    s_.add_clause(big);
    andMemo_[ys] = x;
    return x;
}

int ShapeEncoder::mk_or(std::vector<int> xs) {
    for (auto& x : xs) x = -x;
    return -mk_and(std::move(xs));
}

const ShapeEncoder::Vals& ShapeEncoder::vals(const Formula& f) {
    std::string key = print(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Vals r = compute(f);
    return memo_.emplace(key, std::move(r)).first->second;
}

ShapeEncoder::Vals ShapeEncoder::compute(const Formula& f) {
    Vals r;
    auto hi = [&](const Vals& x) { return x.lo + static_cast<long>(x.v.size()); };
    switch (f->op) {
    case Op::Var:
    case Op::True:
    case Op::False:
        alloc(r);
        for (long p = r.lo; p < hi(r); ++p)
            r.v[p - r.lo] = f->op == Op::True ? true_ : f->op == Op::False ? -true_ : atom(f->name, p);
        return r;
    case Op::Not: {
        const Vals& a = vals(f->lhs);
        r = a;
        for (auto& x : r.v) x = -x;
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
        for (long p = r.lo; p < hi(r); ++p) {
            int x = get(a, p), y = get(b, p);
            r.v[p - r.lo] = f->op == Op::And ? mk_and({x, y}) : f->op == Op::Or ? mk_or({x, y}) : mk_or({-x, y});
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
        for (long p = r.lo; p < hi(r); ++p) r.v[p - r.lo] = get(a, p + d);
        return r;
    }
    case Op::BoxF:
    case Op::DiaF: {
        bool box = f->op == Op::BoxF;
        const Vals& a = vals(f->lhs);
        std::vector<int> period;
        for (long p = C_ + a.mR; p < C_ + a.mR + R_; ++p) period.push_back(get(a, p));
        int tail = box ? mk_and(period) : mk_or(period);
        r.mR = a.mR;
        r.mL = a.mL + L_ + 1;
        alloc(r);
        int cur = tail;
        for (long p = hi(r) - 1; p >= r.lo; --p) {
            if (p >= C_ + a.mR) cur = tail;
            else cur = box ? mk_and({get(a, p + 1), cur}) : mk_or({get(a, p + 1), cur});
            r.v[p - r.lo] = cur;
        }
        return r;
    }
    case Op::BoxP:
    case Op::DiaP: {
        bool box = f->op == Op::BoxP;
        const Vals& a = vals(f->lhs);
        std::vector<int> period;
        for (long p = -a.mL - L_; p < -a.mL; ++p) period.push_back(get(a, p));
        int tail = box ? mk_and(period) : mk_or(period);
        r.mL = a.mL;
        r.mR = a.mR + R_ + 1;
        alloc(r);
        int cur = tail;
        for (long p = r.lo; p < hi(r); ++p) {
            if (p < -a.mL) cur = tail;
            else cur = box ? mk_and({get(a, p - 1), cur}) : mk_or({get(a, p - 1), cur});
            r.v[p - r.lo] = cur;
        }
        return r;
    }
    case Op::BoxAll:
    case Op::DiaAll: {
        const Vals& a = vals(f->lhs);
        int c = f->op == Op::BoxAll ? mk_and(a.v) : mk_or(a.v);
        alloc(r);
        std::fill(r.v.begin(), r.v.end(), c);
        return r;
    }
    case Op::Until:
    case Op::Since: {
        bool fut = f->op == Op::Until;
        const Vals& a = vals(f->lhs);
        const Vals& b = vals(f->rhs);
        long d = fut ? 1 : -1;
        long per = fut ? R_ : L_;
        if (fut) {
            r.mR = std::max(a.mR, b.mR);
            r.mL = std::max(a.mL, b.mL) + 2 * L_;
        } else {
            r.mL = std::max(a.mL, b.mL);
            r.mR = std::max(a.mR, b.mR) + 2 * R_;
        }
        alloc(r);
        // periodic zone: a witness within one period exists if any does
        auto periodic = [&](long p) {
            std::vector<int> terms;
            int pre = true_;
            for (long j = 1; j <= per; ++j) {
                terms.push_back(mk_and({pre, get(b, p + d * j)}));
                pre = mk_and({pre, get(a, p + d * j)});
            }
            return mk_or(terms);
        };
        int cur = -true_;
        if (fut) {
            long z = C_ + r.mR;
            for (long p = hi(r) - 1; p >= r.lo; --p) {
                cur = p >= z ? periodic(p) : mk_or({get(b, p + 1), mk_and({get(a, p + 1), cur})});
                r.v[p - r.lo] = cur;
            }
        } else {
            long z = -r.mL;
            for (long p = r.lo; p < hi(r); ++p) {
                cur = p < z ? periodic(p) : mk_or({get(b, p - 1), mk_and({get(a, p - 1), cur})});
                r.v[p - r.lo] = cur;
            }
        }
        return r;
    }
    }
    throw std::logic_error("unknown operator");
}

int ShapeEncoder::at(const Formula& f, long p) { return get(vals(f), p); }

int ShapeEncoder::somewhere(const Formula& f) {
    std::vector<int> xs;
    for (long p = 0; p < C_; ++p) xs.push_back(at(f, p));
    return mk_or(xs);
}

UPModel ShapeEncoder::model(int top) const {
    (void)top;
    UPModel m;
    m.left.resize(static_cast<size_t>(L_));
    m.core.resize(static_cast<size_t>(C_));
    m.right.resize(static_cast<size_t>(R_));
    for (auto& [a, slots] : atomVars_) {
        for (long i = 0; i < L_ + C_ + R_; ++i) {
            if (!s_.value(slots[static_cast<size_t>(i)])) continue;
            if (i < L_) m.left[i].insert(a);
            else if (i < L_ + C_) m.core[i - L_].insert(a);
            else m.right[i - L_ - C_].insert(a);
        }
    }
    return m;
}

std::vector<Shape> oracle_shapes(int bound) {
    std::vector<Shape> out;
    for (int s = 2; s < bound; ++s)
        for (int l = 1; l < s; ++l) out.push_back({l, bound - s, s - l});
    return out;
}

namespace {

bool lit_true(const Cdcl& s, int l) { return l > 0 ? s.value(l) : !s.value(-l); }

long first_true(ShapeEncoder& enc, const Cdcl& s, const Formula& f) {
    for (long p = 0; p < enc.shape().core; ++p)
        if (lit_true(s, enc.at(f, p))) return p;
    return 0;
}

}  // namespace

BoundedOracle::BoundedOracle(Formula background, int bound) : bg_(std::move(background)), shapes_(oracle_shapes(bound)) {
    slots_.resize(shapes_.size());
}

std::optional<UPModel> BoundedOracle::find(const Formula& query) {
    Formula q = mk_and(bg_, query);
    for (size_t i = 0; i < shapes_.size(); ++i) {
        Slot& sl = slots_[i];
        if (sl.dead) continue;
        if (!sl.solver) {
            sl.solver = std::make_unique<Cdcl>();
            sl.enc = std::make_unique<ShapeEncoder>(*sl.solver, shapes_[i]);
        }
        int lit = sl.enc->somewhere(q);
        int act = sl.solver->new_var();
        sl.solver->add_clause({-act, lit});
        bool sat = sl.solver->solve({act});
        if (sat) {
            UPModel m = sl.enc->model(0);
            m.anchor = first_true(*sl.enc, *sl.solver, q);
            sl.solver->add_clause({-act});
            return m;
        }
        sl.solver->add_clause({-act});
        if (!sl.solver->okay()) sl.dead = true;
    }
    return std::nullopt;
}

namespace {

bool syntactically_unsat(const ClausalForm& cf) {
    for (auto& l : cf.initialPos)
        if (l.bottom()) return true;
    for (auto& c : cf.boxed)
        if (c.width() == 0) return true;
    for (auto& c : cf.initialClauses)
        if (c.width() == 0) return true;
    return false;
}

template <class Check>
OracleResult search(const Formula& f, const OracleOptions& opt, Check check) {
    long atoms = static_cast<long>(atoms_of(f).size());
    if (opt.bound < 3) throw std::invalid_argument("oracle bound must be at least 3");
    if (atoms * opt.bound > opt.guard)
        throw std::invalid_argument("oracle bound " + std::to_string(opt.bound) + " over " + std::to_string(atoms) +
                                    " atoms exceeds the guard " + std::to_string(opt.guard));
    OracleResult res;
    for (const Shape& sh : oracle_shapes(opt.bound)) {
        Cdcl s;
        ShapeEncoder enc(s, sh);
        s.add_clause({enc.somewhere(f)});
        if (!s.solve()) continue;
        UPModel m = enc.model(0);
        m.anchor = first_true(enc, s, f);
        if (!check(m)) throw std::logic_error("oracle produced a model that fails evaluation");
        res.found = true;
        res.model = m;
        return res;
    }
    return res;
}

}  // namespace

OracleResult oracle_decide(const ClausalForm& cf, const OracleOptions& opt) {
    if (syntactically_unsat(cf)) {
        OracleResult r;
        r.provedUnsat = true;
        return r;
    }
    return search(to_formula(cf), opt, [&](const UPModel& m) { return eval_clausal(m, cf); });
}

OracleResult oracle_decide(const Formula& f, const OracleOptions& opt) {
    return search(f, opt, [&](const UPModel& m) { return eval_formula(m, f, 0); });
}

}  // namespace ltlz
