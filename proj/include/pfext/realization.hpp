#pragma once

#include "pfext/combinat.hpp"
#include "pfext/expr.hpp"
#include "pfext/fp.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pfext {

// A basis element of the Schur algebra S(N, d): a multiset of d matrix-unit
// pairs, stored as sorted ((row, col), multiplicity) entries.
struct GammaElt {
    std::vector<std::array<int, 3>> entries; // {row i, col j, multiplicity}

    static GammaElt from_pairs(std::vector<std::pair<int, int>> pairs);
    void canonicalize();
    int degree() const;
    GammaElt transposed() const;
    GammaElt scaled(int m) const; // multiplicities * m
    Composition col_weight(int N) const;
    Composition row_weight(int N) const;
    std::string to_string() const;
};

// Relation satisfied by the cyclic generator w0 of a realization:
// act(xi) w0 = rhs * w0 (rhs = 0 rows land in other weight blocks).
struct Relation {
    GammaElt xi;
    int rhs = 1;
};

struct Presentation {
    int64_t gen_index = 0;
    Composition gen_weight;
    std::vector<Relation> relations;
};

// Explicit realization of a normalized functor expression at k^N: a tensor
// product of (possibly twisted) S/Lambda/Gamma powers with its monomial basis,
// torus weights, and Schur-algebra action. Values are immutable once built.
class Realization {
public:
    Realization(int p, int N, NormalForm nf);

    int p() const { return p_; }
    int N() const { return N_; }
    int degree() const { return D_; }
    const NormalForm& form() const { return nf_; }
    const std::vector<Factor>& factors() const { return nf_.factors; }
    int64_t dim() const { return dim_; }
    std::string key() const; // cache key: p, N, normal form

    // Per-factor exponent vectors (length N each; Lambda factors 0/1-valued).
    std::vector<std::vector<uint8_t>> contents(int64_t index) const;
    int64_t index_of(const std::vector<std::vector<uint8_t>>& contents) const;
    Composition weight_of(int64_t index) const;

    // Sorted global indices of the torus weight block of lambda (length N).
    std::vector<int64_t> block(const Composition& lambda) const;
    std::vector<Composition> weight_support() const;

    // Action of the completed divided power E_{ij}^{(k)} (i != j) on a sparse
    // vector. On twisted factors the power routes through the twist structure
    // map: only multiples of p^r act, as E^{(k/p^r)}.
    SVec act_E(int i, int j, int k, const SVec& v) const;

    // Action of a full Schur basis element.
    SVec act_gamma(const GammaElt& xi, const SVec& v) const;

    // Dense action matrix of xi (columns indexed by basis, small sizes only).
    Mat act_matrix(const GammaElt& xi) const;

    // Cyclic presentation (generator + defining relations); every normalized
    // functor admits one. Throws if N is too small to host the generator.
    Presentation presentation() const;

private:
    int p_, N_, D_;
    NormalForm nf_;
    int64_t dim_;
    std::vector<int64_t> fdim_, stride_, pr_;

    int64_t factor_rank(size_t f, const std::vector<uint8_t>& content) const;
    std::vector<uint8_t> factor_unrank(size_t f, int64_t rank) const;
    void gen_contents(size_t f, const std::vector<int>& cap, std::vector<std::vector<uint8_t>>& out) const;

    friend class RealizationStore;
};

using RealPtr = std::shared_ptr<const Realization>;

// Process-wide realization cache; safe for concurrent readers.
RealPtr realize(int p, int N, const NormalForm& nf);
RealPtr realize(int p, int N, const ExprPtr& expr);

// Multiplication of Schur algebra basis elements inside Gamma^d(End k^N),
// expanded in the gamma basis (small d only; used by the oracle tests).
std::vector<std::pair<GammaElt, int>> schur_multiply(const GammaElt& a, const GammaElt& b, int p, int N);

// All Gamma^d(End k^N) basis multisets (the complete Schur basis).
std::vector<GammaElt> schur_basis(int N, int d);

// weight_space: span of the basis monomials of weight lambda, as a Subspace
// of the realization's coordinate space.
Subspace weight_space(const Realization& m, const Composition& lambda);

// The inclusion S^{mu(r)} -> S^{p^r mu} (x^e -> x^{p^r e} factorwise) as a
// matrix from realize(Twist(r, Sym mu)) to realize(Sym(p^r mu)).
Mat incl_twist_matrix(int p, int N, const Composition& mu, int r);

// Evaluation of a functor on the graded space w (x) k^N: the realization of
// the expression at k^{W N} together with collapsed N-torus weights and the
// induced grading. Used for the Precompose checks.
struct PreRealization {
    RealPtr inner;    // realized at k^{W*N}
    int outer_N = 0;
    std::vector<int> line_degs; // W line degrees
    Composition outer_weight(int64_t index) const;
    int grading(int64_t index) const;
};
PreRealization realize_pre(int p, int N, const GradedSpace& w, const ExprPtr& child);

// Graded dims of F(V*) read off a realization via torus weights (the
// realization side of the graded Yoneda lemma).
GradedSpace graded_dims_from_realization(const Realization& r, const std::vector<int>& line_degs);

} // namespace pfext
