#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pfext {

// A composition: tuple of nonnegative integers.
using Composition = std::vector<int>;

int weight(const Composition& mu);
Composition scale(int m, const Composition& mu);
bool divides(int d, const Composition& mu);
std::string comp_to_string(const Composition& mu);

// All n-tuples of nonnegative integers of weight d, lexicographic, no
// duplicates. This order is fixed forever; all summand indexing depends on it.
std::vector<Composition> compositions(int d, int n);

// Compositions of d into exactly n positive parts, lexicographic.
std::vector<Composition> compositions_positive(int d, int n);

int64_t binom(int64_t n, int64_t k);
int64_t multinomial(const std::vector<int>& parts);

// A finitely supported map degree -> dimension, degrees >= 0.
struct GradedSpace {
    std::map<int, int> dims;

    int total_dim() const;
    int dim_at(int deg) const;
    GradedSpace twisted(int r, int p) const; // every degree multiplied by p^r
    bool operator==(const GradedSpace& o) const { return dims == o.dims; }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }
    std::string to_string() const;
};

GradedSpace graded_point(int deg, int dim);
GradedSpace graded_tensor(const GradedSpace& a, const GradedSpace& b);
GradedSpace graded_sum(const GradedSpace& a, const GradedSpace& b);

// Sha_r: one line in each degree 0..p^r-1. E_r: one line in each even degree
// 0,2,..,2(p^r-1). Both have total dimension p^r.
GradedSpace sha(int r, int p);
GradedSpace e_space(int r, int p);

// The basis lines of a graded space in canonical order (ascending degree,
// then line index within the degree).
std::vector<int> graded_lines(const GradedSpace& w);

// Exponential-formula indexing: X^d(w (x) V) = (+)_mu X^mu(V), one part per
// basis line of w, summand degree Sum_i deg_i * mu_i. Returns (mu, degree)
// in the fixed lexicographic order of mu.
std::vector<std::pair<Composition, int>> exp_decompose(char kind, int d, const GradedSpace& w);

int64_t ipow(int64_t b, int e);

// Ranking of the canonical monomial bases.
// Multisets of size k over {0..n-1}, listed as nondecreasing words in
// lexicographic order (used for S and Gamma factors).
int64_t mset_count(int n, int k);
int64_t mset_rank(int n, const std::vector<uint8_t>& word);
std::vector<uint8_t> mset_unrank(int n, int k, int64_t rank);
// k-subsets of {0..n-1} as increasing words, lexicographic (Lambda factors).
int64_t set_count(int n, int k);
int64_t set_rank(int n, const std::vector<uint8_t>& word);
std::vector<uint8_t> set_unrank(int n, int k, int64_t rank);

} // namespace pfext
