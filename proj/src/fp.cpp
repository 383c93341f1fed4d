#include "pfext/fp.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace pfext {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; int64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(int prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument("PrimeField: " + std::to_string(prime) + " is not prime");
}

int PrimeField::inv(int a) const {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("PrimeField::inv(0)");
    // Fermat: a^(p-2); p is tiny so the loop is fine.
    int r = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Mat::Mat(int p, int rows, int cols) : fld_(p), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimensions");
    if (p == 2) {
        stride_ = size_t((cols + 63) / 64);
        w_.assign(size_t(rows) * stride_, 0);
    } else {
        stride_ = size_t(cols);
        b_.assign(size_t(rows) * stride_, 0);
    }
}

Mat Mat::identity(int p, int n) {
    Mat m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

int Mat::get(int r, int c) const {
    if (fld_.p == 2) return int((w_[size_t(r) * stride_ + size_t(c) / 64] >> (c % 64)) & 1u);
    return b_[size_t(r) * stride_ + size_t(c)];
}

void Mat::set(int r, int c, int v) {
    v = fld_.reduce(v);
    if (fld_.p == 2) {
        uint64_t& word = w_[size_t(r) * stride_ + size_t(c) / 64];
        uint64_t bit = uint64_t(1) << (c % 64);
        word = v ? (word | bit) : (word & ~bit);
    } else {
        b_[size_t(r) * stride_ + size_t(c)] = uint8_t(v);
    }
}

void Mat::add_to(int r, int c, int v) { set(r, c, fld_.add(get(r, c), fld_.reduce(v))); }

void Mat::swap_rows(int a, int b) {
    if (a == b) return;
    if (fld_.p == 2)
        std::swap_ranges(w_.begin() + long(a) * long(stride_), w_.begin() + long(a + 1) * long(stride_),
                         w_.begin() + long(b) * long(stride_));
    else
        std::swap_ranges(b_.begin() + long(a) * long(stride_), b_.begin() + long(a + 1) * long(stride_),
                         b_.begin() + long(b) * long(stride_));
}

void Mat::scale_row(int r, int c) {
    c = fld_.reduce(c);
    if (fld_.p == 2) {
        if (c == 0) std::fill_n(w_.begin() + long(r) * long(stride_), stride_, uint64_t(0));
        return;
    }
    uint8_t* row = b_.data() + size_t(r) * stride_;
    for (size_t j = 0; j < stride_; ++j) row[j] = uint8_t(fld_.mul(row[j], c));
}

void Mat::add_scaled_row(int dst, int src, int c) {
    c = fld_.reduce(c);
    if (c == 0) return;
    if (fld_.p == 2) {
        uint64_t* d = w_.data() + size_t(dst) * stride_;
        const uint64_t* s = w_.data() + size_t(src) * stride_;
        for (size_t j = 0; j < stride_; ++j) d[j] ^= s[j];
    } else {
        uint8_t* d = b_.data() + size_t(dst) * stride_;
        const uint8_t* s = b_.data() + size_t(src) * stride_;
        for (size_t j = 0; j < stride_; ++j) d[j] = uint8_t((d[j] + c * s[j]) % fld_.p);
    }
}

void Mat::axpy_row(int dst, const std::vector<uint8_t>& row, int c) {
    c = fld_.reduce(c);
    if (c == 0) return;
    for (int j = 0; j < cols_; ++j)
        if (row[size_t(j)]) add_to(dst, j, fld_.mul(c, row[size_t(j)]));
}

std::vector<uint8_t> Mat::row_unpacked(int r) const {
    std::vector<uint8_t> out(size_t(cols_), 0);
    if (fld_.p == 2) {
        for (int c = 0; c < cols_; ++c) out[size_t(c)] = uint8_t(get(r, c));
    } else {
        std::memcpy(out.data(), b_.data() + size_t(r) * stride_, size_t(cols_));
    }
    return out;
}

void Mat::set_row(int r, const std::vector<uint8_t>& row) {
    for (int c = 0; c < cols_; ++c) set(r, c, row[size_t(c)]);
}

bool Mat::row_is_zero(int r) const {
    if (fld_.p == 2) {
        const uint64_t* s = w_.data() + size_t(r) * stride_;
        for (size_t j = 0; j < stride_; ++j)
            if (s[j]) return false;
        return true;
    }
    const uint8_t* s = b_.data() + size_t(r) * stride_;
    for (size_t j = 0; j < stride_; ++j)
        if (s[j]) return false;
    return true;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_ || fld_.p != rhs.fld_.p) throw std::invalid_argument("Mat::mul: shape/field mismatch");
    Mat out(fld_.p, rows_, rhs.cols_);
    if (fld_.p == 2) {
        for (int i = 0; i < rows_; ++i) {
            uint64_t* d = out.w_.data() + size_t(i) * out.stride_;
            for (int k = 0; k < cols_; ++k) {
                if (!get(i, k)) continue;
                const uint64_t* s = rhs.w_.data() + size_t(k) * rhs.stride_;
                for (size_t j = 0; j < rhs.stride_; ++j) d[j] ^= s[j];
            }
        }
    } else {
        std::vector<int> acc(size_t(rhs.cols_));
        for (int i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (int k = 0; k < cols_; ++k) {
                int a = get(i, k);
                if (!a) continue;
                const uint8_t* s = rhs.b_.data() + size_t(k) * rhs.stride_;
                for (int j = 0; j < rhs.cols_; ++j) acc[size_t(j)] += a * s[j];
            }
            for (int j = 0; j < rhs.cols_; ++j) out.set(i, j, fld_.reduce(acc[size_t(j)]));
        }
    }
    return out;
}

Mat Mat::transpose() const {
    Mat out(fld_.p, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            int v = get(i, j);
            if (v) out.set(j, i, v);
        }
    return out;
}

bool Mat::operator==(const Mat& rhs) const {
    if (fld_.p != rhs.fld_.p || rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
    return fld_.p == 2 ? w_ == rhs.w_ : b_ == rhs.b_;
}

bool Mat::is_zero() const {
    for (int r = 0; r < rows_; ++r)
        if (!row_is_zero(r)) return false;
    return true;
}

Mat Mat::vstack(const Mat& below) const {
    if (below.rows_ == 0) return *this;
    if (rows_ == 0) return below;
    if (cols_ != below.cols_ || fld_.p != below.fld_.p) throw std::invalid_argument("Mat::vstack: shape mismatch");
    Mat out(fld_.p, rows_ + below.rows_, cols_);
    for (int r = 0; r < rows_; ++r) out.set_row(r, row_unpacked(r));
    for (int r = 0; r < below.rows_; ++r) out.set_row(rows_ + r, below.row_unpacked(r));
    return out;
}

Mat Mat::rows_slice(int begin, int end) const {
    Mat out(fld_.p, end - begin, cols_);
    for (int r = begin; r < end; ++r) out.set_row(r - begin, row_unpacked(r));
    return out;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) os << get(r, c) << (c + 1 == cols_ ? "" : " ");
        os << "\n";
    }
    return os.str();
}

RrefInfo rref_inplace(Mat& m) {
    RrefInfo info;
    const PrimeField& f = m.field();
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.get(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        m.swap_rows(r, piv);
        int v = m.get(r, c);
        if (v != 1) m.scale_row(r, f.inv(v));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            int x = m.get(i, c);
            if (x) m.add_scaled_row(i, r, f.neg(x));
        }
        info.pivot_cols.push_back(c);
        ++r;
    }
    info.rank = r;
    return info;
}

Mat rref(Mat m, RrefInfo* info) {
    RrefInfo i = rref_inplace(m);
    if (info) *info = i;
    return m;
}

int rank(Mat m) { return rref_inplace(m).rank; }

Subspace make_subspace(int p, int ambient, Mat spanning_rows) {
    RrefInfo info = rref_inplace(spanning_rows);
    Subspace s;
    s.ambient = ambient;
    s.basis = spanning_rows.rows_slice(0, info.rank);
    if (info.rank == 0) s.basis = Mat(p, 0, ambient);
    return s;
}

Subspace zero_subspace(int p, int ambient) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat(p, 0, ambient);
    return s;
}

Subspace full_subspace(int p, int ambient) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat::identity(p, ambient);
    return s;
}

bool Subspace::contains(const std::vector<uint8_t>& v) const {
    // Reduce v against the canonical basis; membership iff reduction hits 0.
    const PrimeField f = basis.field();
    std::vector<uint8_t> w = v;
    for (int r = 0; r < basis.rows(); ++r) {
        int piv = -1;
        for (int c = 0; c < ambient; ++c)
            if (basis.get(r, c)) { piv = c; break; }
        if (piv < 0) continue;
        int x = w[size_t(piv)];
        if (!x) continue;
        for (int c = 0; c < ambient; ++c)
            w[size_t(c)] = uint8_t(f.sub(w[size_t(c)], f.mul(x, basis.get(r, c))));
    }
    for (uint8_t x : w)
        if (x) return false;
    return true;
}

Subspace kernel(const Mat& m) {
    Mat r = m;
    RrefInfo info = rref_inplace(r);
    int n = m.cols();
    std::vector<char> is_pivot(size_t(n), 0);
    for (int c : info.pivot_cols) is_pivot[size_t(c)] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[size_t(c)]) free_cols.push_back(c);
    const PrimeField f = m.field();
    Mat basis(m.p(), int(free_cols.size()), n);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.set(int(k), fc, 1);
        for (int i = 0; i < info.rank; ++i) {
            int v = r.get(i, fc);
            if (v) basis.set(int(k), info.pivot_cols[size_t(i)], f.neg(v));
        }
    }
    return make_subspace(m.p(), n, basis);
}

Subspace row_space(const Mat& m) { return make_subspace(m.p(), m.cols(), m); }

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: ambient dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0) return zero_subspace(a.p(), a.ambient);
    // x = u A = v B  <=>  (u, v) in kernel of [A^T | -B^T].
    const PrimeField f = a.basis.field();
    Mat sys(a.p(), a.ambient, a.dim() + b.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.ambient; ++c)
            if (int v = a.basis.get(r, c)) sys.set(c, r, v);
    for (int r = 0; r < b.dim(); ++r)
        for (int c = 0; c < b.ambient; ++c)
            if (int v = b.basis.get(r, c)) sys.set(c, a.dim() + r, f.neg(v));
    Subspace pairs = kernel(sys);
    Mat span(a.p(), pairs.dim(), a.ambient);
    for (int k = 0; k < pairs.dim(); ++k)
        for (int r = 0; r < a.dim(); ++r) {
            int u = pairs.basis.get(k, r);
            if (u)
                for (int c = 0; c < a.ambient; ++c)
                    if (int v = a.basis.get(r, c)) span.add_to(k, c, f.mul(u, v));
        }
    return make_subspace(a.p(), a.ambient, span);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
    return make_subspace(a.p(), a.ambient, a.basis.vstack(b.basis));
}

Mat kronecker(const Mat& a, const Mat& b) {
    if (a.p() != b.p()) throw std::invalid_argument("kronecker: field mismatch");
    const PrimeField f = a.field();
    Mat out(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            int va = a.get(ia, ja);
            if (!va) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb) {
                    int vb = b.get(ib, jb);
                    if (vb) out.set(ia * b.rows() + ib, ja * b.cols() + jb, f.mul(va, vb));
                }
        }
    return out;
}

EchelonAccumulator::EchelonAccumulator(int p, int ambient)
    : fld_(p), ambient_(ambient), rows_(p, 0, ambient), row_of_pivot_(size_t(ambient), -1) {}

void EchelonAccumulator::reduce_row(std::vector<uint8_t>& row) const {
    for (int c = 0; c < ambient_; ++c) {
        int x = row[size_t(c)];
        if (!x) continue;
        int r = row_of_pivot_[size_t(c)];
        if (r < 0) continue;
        for (int j = c; j < ambient_; ++j) {
            int v = rows_.get(r, j);
            if (v) row[size_t(j)] = uint8_t(fld_.sub(row[size_t(j)], fld_.mul(x, v)));
        }
    }
}

bool EchelonAccumulator::add_row(const std::vector<uint8_t>& row_in) {
    std::vector<uint8_t> row = row_in;
    reduce_row(row);
    int piv = -1;
    for (int c = 0; c < ambient_; ++c)
        if (row[size_t(c)]) { piv = c; break; }
    if (piv < 0) return false;
    int v = row[size_t(piv)];
    if (v != 1) {
        int iv = fld_.inv(v);
        for (int c = piv; c < ambient_; ++c) row[size_t(c)] = uint8_t(fld_.mul(row[size_t(c)], iv));
    }
    // Back-substitute into existing rows to keep the accumulator reduced.
    int mine = rows_.rows();
    Mat grown(fld_.p, mine + 1, ambient_);
    for (int r = 0; r < mine; ++r) grown.set_row(r, rows_.row_unpacked(r));
    grown.set_row(mine, row);
    for (int r = 0; r < mine; ++r) {
        int x = grown.get(r, piv);
        if (x) grown.add_scaled_row(r, mine, fld_.neg(x));
    }
    rows_ = std::move(grown);
    pivot_of_row_.push_back(piv);
    row_of_pivot_[size_t(piv)] = mine;
    return true;
}

bool EchelonAccumulator::add_sparse_row(const std::vector<std::pair<int, int>>& entries) {
    std::vector<uint8_t> row(size_t(ambient_), 0);
    for (auto [i, v] : entries) row[size_t(i)] = uint8_t(fld_.add(row[size_t(i)], fld_.reduce(v)));
    return add_row(row);
}

Subspace EchelonAccumulator::solution_space() const { return kernel(rows_); }

void SMat::add(int64_t r, int64_t c_, int v) {
    PrimeField f(p);
    v = f.reduce(v);
    if (v) col[size_t(c_)].push_back({r, uint8_t(v)});
}

void SMat::finalize() {
    PrimeField f(p);
    for (auto& c : col) {
        std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
        size_t w = 0;
        for (size_t i = 0; i < c.size();) {
            int64_t r = c[i].first;
            int acc = 0;
            while (i < c.size() && c[i].first == r) acc = f.add(acc, c[i++].second);
            if (acc) c[w++] = {r, uint8_t(acc)};
        }
        c.resize(w);
    }
}

bool SMat::is_zero() const {
    for (auto& c : col)
        if (!c.empty()) return false;
    return true;
}

Mat SMat::to_dense() const {
    Mat out(p, int(rows), int(cols));
    for (int64_t c = 0; c < cols; ++c)
        for (auto [r, v] : col[size_t(c)]) out.add_to(int(r), int(c), v);
    return out;
}

SMat smat_mul(const SMat& a, const SMat& b) {
    if (a.cols != b.rows || a.p != b.p) throw std::invalid_argument("smat_mul: shape/field mismatch");
    PrimeField f(a.p);
    SMat out(a.p, a.rows, b.cols);
    for (int64_t c = 0; c < b.cols; ++c) {
        SVec acc;
        for (auto [k, vb] : b.col[size_t(c)]) {
            SVec contrib(a.col[size_t(k)].begin(), a.col[size_t(k)].end());
            svec_axpy(acc, contrib, vb, f);
        }
        out.col[size_t(c)].assign(acc.begin(), acc.end());
    }
    return out;
}

void svec_axpy(SVec& dst, const SVec& src, int c, const PrimeField& f) {
    c = f.reduce(c);
    if (c == 0 || src.empty()) return;
    SVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i >= dst.size() || src[j].first < dst[i].first) {
            int v = f.mul(c, src[j].second);
            if (v) out.push_back({src[j].first, uint8_t(v)});
            ++j;
        } else {
            int v = f.add(dst[i].second, f.mul(c, src[j].second));
            if (v) out.push_back({dst[i].first, uint8_t(v)});
            ++i, ++j;
        }
    }
    dst = std::move(out);
}

void svec_scale(SVec& v, int c, const PrimeField& f) {
    c = f.reduce(c);
    if (c == 1) return;
    if (c == 0) { v.clear(); return; }
    for (auto& e : v) e.second = uint8_t(f.mul(e.second, c));
}

} // namespace pfext
