#pragma once

#include "pfext/combinat.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pfext {

// AST for homogeneous strict polynomial functor expressions.
struct FunctorExpr;
using ExprPtr = std::shared_ptr<const FunctorExpr>;

struct FunctorExpr {
    enum class Kind {
        Unit,    // k = S^0
        Sym,     // S^mu
        Ext,     // Lambda^mu
        Div,     // Gamma^mu
        Tensor,  // (x)^d
        Prod,    // tensor product of children
        Twist,   // child o I^(r)
        Dual,    // child^#
        Pre,     // child(w (x) I)
        Compose, // outer o inner (dimension evaluation only)
    };

    Kind kind = Kind::Unit;
    Composition mu;                 // Sym / Ext / Div
    int param = 0;                  // Tensor: d, Twist: r
    std::vector<ExprPtr> children;  // Prod: factors; Twist/Dual/Pre: child; Compose: outer, inner
    GradedSpace space;              // Pre
};

ExprPtr fe_unit();
ExprPtr fe_sym(Composition mu);
ExprPtr fe_ext(Composition mu);
ExprPtr fe_div(Composition mu);
ExprPtr fe_tensor(int d);
ExprPtr fe_prod(std::vector<ExprPtr> children);
ExprPtr fe_twist(int r, ExprPtr child);
ExprPtr fe_dual(ExprPtr child);
ExprPtr fe_pre(GradedSpace w, ExprPtr child);
ExprPtr fe_compose(ExprPtr outer, ExprPtr inner);

// Structural polynomial degree; Twist multiplies by p^r, so this depends on p.
int expr_degree(const ExprPtr& e, int p);

// Canonical printable form; parse(print(e)) == e for grammar expressions.
std::string expr_print(const ExprPtr& e);

// F^# with duals pushed onto the atoms (S <-> Gamma, Lambda and (x) fixed,
// Pre dualizes its space degree-preservingly). Involutive on normal forms.
ExprPtr expr_dual(const ExprPtr& e);

// A tensor factor of a normalized expression: an S/Lambda/Gamma power with a
// Frobenius twist. Polynomial degree is deg * p^r.
struct Factor {
    char kind = 'S'; // 'S', 'L' (exterior), 'G' (divided)
    int deg = 0;     // untwisted exponent
    int r = 0;       // Frobenius twist
    bool operator==(const Factor& o) const { return kind == o.kind && deg == o.deg && r == o.r; }
};

// Normal form for realizable expressions: an outer list of twisted atoms.
// Pre and Compose nodes (and anything containing them) are not normalizable.
struct NormalForm {
    std::vector<Factor> factors;
    int degree(int p) const;
    bool operator==(const NormalForm& o) const { return factors == o.factors; }
    std::string to_string() const;
};

bool expr_normalizable(const ExprPtr& e);
NormalForm expr_normalize(const ExprPtr& e);
ExprPtr normal_form_expr(const NormalForm& nf); // back to a canonical AST

// Graded dimension table of expr(w), purely combinatorial (Compose allowed).
GradedSpace graded_eval_dims(const ExprPtr& e, const GradedSpace& w, int p);

struct UnsupportedExpr : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pfext
