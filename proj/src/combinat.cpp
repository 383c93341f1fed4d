#include "pfext/combinat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pfext {

int weight(const Composition& mu) {
    int w = 0;
    for (int x : mu) w += x;
    return w;
}

Composition scale(int m, const Composition& mu) {
    Composition out = mu;
    for (int& x : out) x *= m;
    return out;
}

bool divides(int d, const Composition& mu) {
    for (int x : mu)
        if (x % d != 0) return false;
    return true;
}

std::string comp_to_string(const Composition& mu) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < mu.size(); ++i) os << mu[i] << (i + 1 == mu.size() ? "" : ",");
    os << ")";
    return os.str();
}

static void compositions_rec(int d, int n, Composition& cur, std::vector<Composition>& out) {
    if (n == 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= d; ++first) {
        cur.push_back(first);
        compositions_rec(d - first, n - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Composition> compositions(int d, int n) {
    if (d < 0 || n < 0) throw std::invalid_argument("compositions: negative arguments");
    if (n == 0) return d == 0 ? std::vector<Composition>{Composition{}} : std::vector<Composition>{};
    std::vector<Composition> out;
    Composition cur;
    compositions_rec(d, n, cur, out);
    return out;
}

std::vector<Composition> compositions_positive(int d, int n) {
    std::vector<Composition> out;
    if (n == 0) return d == 0 ? std::vector<Composition>{Composition{}} : out;
    if (d < n) return out;
    for (Composition mu : compositions(d - n, n)) {
        for (int& x : mu) x += 1;
        out.push_back(mu);
    }
    return out;
}

int64_t binom(int64_t n, int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int64_t r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int64_t multinomial(const std::vector<int>& parts) {
    int64_t total = 0, r = 1;
    for (int x : parts) {
        total += x;
        r *= binom(total, x);
    }
    return r;
}

int GradedSpace::total_dim() const {
    int t = 0;
    for (auto& [d, m] : dims) t += m;
    return t;
}

int GradedSpace::dim_at(int deg) const {
    auto it = dims.find(deg);
    return it == dims.end() ? 0 : it->second;
}

GradedSpace GradedSpace::twisted(int r, int p) const {
    GradedSpace out;
    int64_t f = ipow(p, r);
    for (auto& [d, m] : dims) out.dims[int(d * f)] = m;
    return out;
}

std::string GradedSpace::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [d, m] : dims) {
        if (!first) os << ",";
        os << d << ":" << m;
        first = false;
    }
    os << "}";
    return os.str();
}

GradedSpace graded_point(int deg, int dim) {
    GradedSpace g;
    if (dim) g.dims[deg] = dim;
    return g;
}

GradedSpace graded_tensor(const GradedSpace& a, const GradedSpace& b) {
    GradedSpace out;
    for (auto& [da, ma] : a.dims)
        for (auto& [db, mb] : b.dims) out.dims[da + db] += ma * mb;
    return out;
}

GradedSpace graded_sum(const GradedSpace& a, const GradedSpace& b) {
    GradedSpace out = a;
    for (auto& [d, m] : b.dims) out.dims[d] += m;
    return out;
}

GradedSpace sha(int r, int p) {
    if (r < 0) throw std::invalid_argument("sha: r < 0");
    GradedSpace g;
    int64_t q = ipow(p, r);
    for (int64_t i = 0; i < q; ++i) g.dims[int(i)] = 1;
    return g;
}

GradedSpace e_space(int r, int p) {
    if (r < 0) throw std::invalid_argument("e_space: r < 0");
    GradedSpace g;
    int64_t q = ipow(p, r);
    for (int64_t i = 0; i < q; ++i) g.dims[int(2 * i)] = 1;
    return g;
}

std::vector<int> graded_lines(const GradedSpace& w) {
    std::vector<int> lines;
    for (auto& [d, m] : w.dims)
        for (int i = 0; i < m; ++i) lines.push_back(d);
    return lines;
}

std::vector<std::pair<Composition, int>> exp_decompose(char kind, int d, const GradedSpace& w) {
    if (kind != 'S' && kind != 'L' && kind != 'G')
        throw std::invalid_argument("exp_decompose: kind must be one of S, L, G");
    if (d < 0) throw std::invalid_argument("exp_decompose: d < 0");
    std::vector<int> lines = graded_lines(w);
    std::vector<std::pair<Composition, int>> out;
    for (const Composition& mu : compositions(d, int(lines.size()))) {
        int deg = 0;
        for (size_t i = 0; i < mu.size(); ++i) deg += lines[i] * mu[i];
        out.push_back({mu, deg});
    }
    return out;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int64_t mset_count(int n, int k) { return binom(int64_t(n) + k - 1, k); }

int64_t mset_rank(int n, const std::vector<uint8_t>& word) {
    // Count nondecreasing words lexicographically smaller than `word`.
    int64_t rank = 0;
    int k = int(word.size());
    int lo = 0;
    for (int pos = 0; pos < k; ++pos) {
        for (int c = lo; c < word[size_t(pos)]; ++c)
            rank += mset_count(n - c, k - pos - 1);
        lo = word[size_t(pos)];
    }
    return rank;
}

std::vector<uint8_t> mset_unrank(int n, int k, int64_t rank) {
    std::vector<uint8_t> word(size_t(k));
    int lo = 0;
    for (int pos = 0; pos < k; ++pos) {
        int c = lo;
        while (true) {
            int64_t cnt = mset_count(n - c, k - pos - 1);
            if (rank < cnt) break;
            rank -= cnt;
            ++c;
        }
        word[size_t(pos)] = uint8_t(c);
        lo = c;
    }
    return word;
}

int64_t set_count(int n, int k) { return binom(n, k); }

int64_t set_rank(int n, const std::vector<uint8_t>& word) {
    int64_t rank = 0;
    int k = int(word.size());
    int lo = 0;
    for (int pos = 0; pos < k; ++pos) {
        for (int c = lo; c < word[size_t(pos)]; ++c) rank += binom(n - c - 1, k - pos - 1);
        lo = word[size_t(pos)] + 1;
    }
    return rank;
}

std::vector<uint8_t> set_unrank(int n, int k, int64_t rank) {
    std::vector<uint8_t> word(size_t(k));
    int lo = 0;
    for (int pos = 0; pos < k; ++pos) {
        int c = lo;
        while (true) {
            int64_t cnt = binom(n - c - 1, k - pos - 1);
            if (rank < cnt) break;
            rank -= cnt;
            ++c;
        }
        word[size_t(pos)] = uint8_t(c);
        lo = c + 1;
    }
    return word;
}

} // namespace pfext
