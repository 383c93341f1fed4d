#include "pfext/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace pfext {

static ExprPtr make(FunctorExpr e) { return std::make_shared<const FunctorExpr>(std::move(e)); }

ExprPtr fe_unit() {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Unit;
    return make(std::move(e));
}

ExprPtr fe_sym(Composition mu) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Sym;
    e.mu = std::move(mu);
    return make(std::move(e));
}

ExprPtr fe_ext(Composition mu) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Ext;
    e.mu = std::move(mu);
    return make(std::move(e));
}

ExprPtr fe_div(Composition mu) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Div;
    e.mu = std::move(mu);
    return make(std::move(e));
}

ExprPtr fe_tensor(int d) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Tensor;
    e.param = d;
    return make(std::move(e));
}

ExprPtr fe_prod(std::vector<ExprPtr> children) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Prod;
    e.children = std::move(children);
    return make(std::move(e));
}

ExprPtr fe_twist(int r, ExprPtr child) {
    if (r == 0) return child;
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Twist;
    e.param = r;
    e.children = {std::move(child)};
    return make(std::move(e));
}

ExprPtr fe_dual(ExprPtr child) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Dual;
    e.children = {std::move(child)};
    return make(std::move(e));
}

ExprPtr fe_pre(GradedSpace w, ExprPtr child) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Pre;
    e.space = std::move(w);
    e.children = {std::move(child)};
    return make(std::move(e));
}

ExprPtr fe_compose(ExprPtr outer, ExprPtr inner) {
    FunctorExpr e;
    e.kind = FunctorExpr::Kind::Compose;
    e.children = {std::move(outer), std::move(inner)};
    return make(std::move(e));
}

int expr_degree(const ExprPtr& e, int p) {
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Unit: return 0;
    case K::Sym:
    case K::Ext:
    case K::Div: return weight(e->mu);
    case K::Tensor: return e->param;
    case K::Prod: {
        int d = 0;
        for (auto& c : e->children) d += expr_degree(c, p);
        return d;
    }
    case K::Twist: return int(ipow(p, e->param)) * expr_degree(e->children[0], p);
    case K::Dual:
    case K::Pre: return expr_degree(e->children[0], p);
    case K::Compose: return expr_degree(e->children[0], p) * expr_degree(e->children[1], p);
    }
    return 0;
}

static std::string mu_print(const Composition& mu) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < mu.size(); ++i) os << mu[i] << (i + 1 == mu.size() ? "" : ",");
    os << "]";
    return os.str();
}

static std::string space_print(const GradedSpace& w) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [d, m] : w.dims) {
        if (!first) os << ",";
        os << d << ":" << m;
        first = false;
    }
    os << "}";
    return os.str();
}

std::string expr_print(const ExprPtr& e) {
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Unit: return "S[0]";
    case K::Sym: return "S" + mu_print(e->mu);
    case K::Ext: return "L" + mu_print(e->mu);
    case K::Div: return "G" + mu_print(e->mu);
    case K::Tensor: return "T[" + std::to_string(e->param) + "]";
    case K::Prod: {
        std::string s;
        for (size_t i = 0; i < e->children.size(); ++i) {
            if (i) s += " * ";
            bool paren = e->children[i]->kind == K::Prod;
            s += paren ? "(" + expr_print(e->children[i]) + ")" : expr_print(e->children[i]);
        }
        return s.empty() ? "S[0]" : s;
    }
    case K::Twist:
        return "tw(" + std::to_string(e->param) + ", " + expr_print(e->children[0]) + ")";
    case K::Dual: return "dual(" + expr_print(e->children[0]) + ")";
    case K::Pre: return "pre(" + space_print(e->space) + ", " + expr_print(e->children[0]) + ")";
    case K::Compose:
        return "comp(" + expr_print(e->children[0]) + ", " + expr_print(e->children[1]) + ")";
    }
    return "?";
}

ExprPtr expr_dual(const ExprPtr& e) {
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Unit: return e;
    case K::Sym: return fe_div(e->mu);
    case K::Div: return fe_sym(e->mu);
    case K::Ext: return e;
    case K::Tensor: return e;
    case K::Prod: {
        std::vector<ExprPtr> out;
        for (auto& c : e->children) out.push_back(expr_dual(c));
        return fe_prod(std::move(out));
    }
    case K::Twist: return fe_twist(e->param, expr_dual(e->children[0]));
    case K::Dual: return e->children[0];
    case K::Pre: return fe_pre(e->space, expr_dual(e->children[0])); // degree-preserving dual space
    case K::Compose: throw UnsupportedExpr("expr_dual: Compose nodes have no dual here");
    }
    return e;
}

int NormalForm::degree(int p) const {
    int d = 0;
    for (auto& f : factors) d += f.deg * int(ipow(p, f.r));
    return d;
}

std::string NormalForm::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i].kind << factors[i].deg;
        if (factors[i].r) os << "^(" << factors[i].r << ")";
    }
    if (factors.empty()) os << "1";
    return os.str();
}

static void normalize_rec(const ExprPtr& e, int twist, bool dual, std::vector<Factor>& out) {
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Unit: return;
    case K::Sym:
    case K::Div: {
        char k = (e->kind == K::Sym) != dual ? 'S' : 'G';
        for (int a : e->mu)
            if (a > 0) out.push_back({k, a, twist});
        return;
    }
    case K::Ext:
        for (int a : e->mu)
            if (a > 0) out.push_back({'L', a, twist});
        return;
    case K::Tensor:
        for (int i = 0; i < e->param; ++i) out.push_back({'S', 1, twist});
        return;
    case K::Prod:
        for (auto& c : e->children) normalize_rec(c, twist, dual, out);
        return;
    case K::Twist: normalize_rec(e->children[0], twist + e->param, dual, out); return;
    case K::Dual: normalize_rec(e->children[0], twist, !dual, out); return;
    case K::Pre:
    case K::Compose: throw UnsupportedExpr("expr_normalize: unsupported node in " + expr_print(e));
    }
}

bool expr_normalizable(const ExprPtr& e) {
    try {
        (void)expr_normalize(e);
        return true;
    } catch (const UnsupportedExpr&) {
        return false;
    }
}

NormalForm expr_normalize(const ExprPtr& e) {
    NormalForm nf;
    normalize_rec(e, 0, false, nf.factors);
    // S^1 = Lambda^1 = Gamma^1: canonicalize degree-1 atoms to 'S'.
    for (auto& f : nf.factors)
        if (f.deg == 1) f.kind = 'S';
    return nf;
}

ExprPtr normal_form_expr(const NormalForm& nf) {
    std::vector<ExprPtr> parts;
    for (auto& f : nf.factors) {
        ExprPtr atom = f.kind == 'S'   ? fe_sym({f.deg})
                       : f.kind == 'L' ? fe_ext({f.deg})
                                       : fe_div({f.deg});
        parts.push_back(fe_twist(f.r, atom));
    }
    if (parts.empty()) return fe_unit();
    if (parts.size() == 1) return parts[0];
    return fe_prod(std::move(parts));
}

// Dimension table of one twisted atom evaluated on the graded space w.
static GradedSpace atom_eval(char kind, int a, const GradedSpace& w) {
    // DP over the lines of w: multiply per-line generating series.
    GradedSpace acc = graded_point(0, 1);
    // acc tracks (degree, count) tables per partial exponent; we need the
    // joint series in (internal degree, exponent). Track per exponent.
    std::vector<GradedSpace> by_exp(size_t(a) + 1);
    by_exp[0] = graded_point(0, 1);
    for (auto& [deg, m] : w.dims) {
        std::vector<GradedSpace> next(size_t(a) + 1);
        for (int e = 0; e <= a; ++e) {
            if (by_exp[size_t(e)].dims.empty()) continue;
            for (int k = 0; e + k <= a; ++k) {
                int64_t ways = (kind == 'L') ? binom(m, k) : mset_count(m, k);
                if (!ways) continue;
                for (auto& [d0, c0] : by_exp[size_t(e)].dims)
                    next[size_t(e + k)].dims[d0 + deg * k] += int(c0 * ways);
            }
        }
        by_exp = std::move(next);
    }
    return by_exp[size_t(a)];
}

GradedSpace graded_eval_dims(const ExprPtr& e, const GradedSpace& w, int p) {
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Unit: return graded_point(0, 1);
    case K::Sym:
    case K::Ext:
    case K::Div: {
        char kind = e->kind == K::Ext ? 'L' : (e->kind == K::Div ? 'G' : 'S');
        GradedSpace acc = graded_point(0, 1);
        for (int a : e->mu) acc = graded_tensor(acc, atom_eval(kind == 'G' ? 'S' : kind, a, w));
        return acc;
    }
    case K::Tensor: {
        GradedSpace acc = graded_point(0, 1);
        for (int i = 0; i < e->param; ++i) acc = graded_tensor(acc, w);
        return acc;
    }
    case K::Prod: {
        GradedSpace acc = graded_point(0, 1);
        for (auto& c : e->children) acc = graded_tensor(acc, graded_eval_dims(c, w, p));
        return acc;
    }
    case K::Twist: return graded_eval_dims(e->children[0], w.twisted(e->param, p), p);
    case K::Dual: return graded_eval_dims(e->children[0], w, p);
    case K::Pre: return graded_eval_dims(e->children[0], graded_tensor(e->space, w), p);
    case K::Compose:
        return graded_eval_dims(e->children[0], graded_eval_dims(e->children[1], w, p), p);
    }
    throw UnsupportedExpr("graded_eval_dims: unsupported expression node");
}

} // namespace pfext
