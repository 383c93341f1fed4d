#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pfext {

// Exact arithmetic in the prime field F_p. No floating point anywhere.
struct PrimeField {
    int p = 2;

    PrimeField() = default;
    explicit PrimeField(int prime);

    int add(int a, int b) const { return (a + b) % p; }
    int sub(int a, int b) const { return (a - b % p + p) % p; }
    int neg(int a) const { return (p - a % p) % p; }
    int mul(int a, int b) const { return int((int64_t(a) * b) % p); }
    int inv(int a) const;
    int reduce(int64_t a) const { int r = int(a % p); return r < 0 ? r + p : r; }
};

bool is_prime(int n);

// Dense matrix over F_p. Rows are bit-packed machine words for p = 2 and
// byte-per-entry for p > 2; all entry values live in [0, p).
class Mat {
public:
    Mat() = default;
    Mat(int p, int rows, int cols);
    static Mat identity(int p, int n);
    static Mat zero(int p, int rows, int cols) { return Mat(p, rows, cols); }

    int p() const { return fld_.p; }
    const PrimeField& field() const { return fld_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    int get(int r, int c) const;
    void set(int r, int c, int v);
    void add_to(int r, int c, int v);

    void swap_rows(int a, int b);
    void scale_row(int r, int c);
    // row[dst] += c * row[src]
    void add_scaled_row(int dst, int src, int c);
    // row[dst] += c * (external row given as unpacked bytes)
    void axpy_row(int dst, const std::vector<uint8_t>& row, int c);

    std::vector<uint8_t> row_unpacked(int r) const;
    void set_row(int r, const std::vector<uint8_t>& row);
    bool row_is_zero(int r) const;

    Mat operator*(const Mat& rhs) const;
    Mat transpose() const;
    bool operator==(const Mat& rhs) const;
    bool operator!=(const Mat& rhs) const { return !(*this == rhs); }
    bool is_zero() const;

    Mat vstack(const Mat& below) const;
    Mat rows_slice(int begin, int end) const;

    std::string to_string() const;

private:
    PrimeField fld_;
    int rows_ = 0, cols_ = 0;
    size_t stride_ = 0; // words per row (p=2) or bytes per row (p>2)
    std::vector<uint64_t> w_;
    std::vector<uint8_t> b_;

    friend struct RowOps;
};

struct RrefInfo {
    int rank = 0;
    std::vector<int> pivot_cols;
};

// In-place reduction to canonical reduced row-echelon form.
RrefInfo rref_inplace(Mat& m);
Mat rref(Mat m, RrefInfo* info = nullptr);
int rank(Mat m);

// A subspace of F_p^ambient in canonical form: basis rows in reduced
// row-echelon form with no zero rows, so equal subspaces compare equal.
struct Subspace {
    int ambient = 0;
    Mat basis; // dim x ambient, canonical RREF

    int p() const { return basis.p(); }
    int dim() const { return basis.rows(); }
    bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool contains(const std::vector<uint8_t>& v) const;
};

Subspace make_subspace(int p, int ambient, Mat spanning_rows);
Subspace zero_subspace(int p, int ambient);
Subspace full_subspace(int p, int ambient);

// {v : m v = 0}, returned with basis vectors as rows.
Subspace kernel(const Mat& m);
Subspace row_space(const Mat& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

// Kronecker product with the row-major index convention
// (i_a * rows_b + i_b, j_a * cols_b + j_b).
Mat kronecker(const Mat& a, const Mat& b);

// Streaming constraint intersection: rows of a homogeneous system arrive one
// at a time and are folded into a reduced echelon accumulator; the solution
// space (kernel) can be read off at any point. Callers short-circuit when
// solution_dim stabilizes and must re-verify all constraints afterwards.
class EchelonAccumulator {
public:
    EchelonAccumulator(int p, int ambient);

    // Returns true if the row increased the rank.
    bool add_row(const std::vector<uint8_t>& row);
    bool add_sparse_row(const std::vector<std::pair<int, int>>& entries);

    int rank() const { return int(pivot_of_row_.size()); }
    int ambient() const { return ambient_; }
    int solution_dim() const { return ambient_ - rank(); }
    Subspace solution_space() const;

private:
    PrimeField fld_;
    int ambient_;
    Mat rows_;                     // echelon rows, one per accumulated pivot
    std::vector<int> pivot_of_row_;
    std::vector<int> row_of_pivot_; // ambient-sized, -1 when column free
    void reduce_row(std::vector<uint8_t>& row) const;
};

// Sparse matrix in column-major triplet form (used for large realization
// blocks; entries within a column sorted by row).
struct SMat {
    int p = 2;
    int64_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int64_t, uint8_t>>> col;

    SMat() = default;
    SMat(int p_, int64_t r, int64_t c) : p(p_), rows(r), cols(c), col(size_t(c)) {}
    void add(int64_t r, int64_t c_, int v);
    void finalize(); // sort+combine entries per column
    bool is_zero() const;
    Mat to_dense() const;
};

SMat smat_mul(const SMat& a, const SMat& b);

// Sparse F_p vector: sorted (index, value) pairs, values in (0, p).
using SVec = std::vector<std::pair<int64_t, uint8_t>>;
void svec_axpy(SVec& dst, const SVec& src, int c, const PrimeField& f);
void svec_scale(SVec& v, int c, const PrimeField& f);

} // namespace pfext
