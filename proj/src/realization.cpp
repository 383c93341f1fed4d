#include "pfext/realization.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace pfext {

GammaElt GammaElt::from_pairs(std::vector<std::pair<int, int>> pairs) {
    GammaElt g;
    for (auto [i, j] : pairs) g.entries.push_back({i, j, 1});
    g.canonicalize();
    return g;
}

void GammaElt::canonicalize() {
    std::sort(entries.begin(), entries.end());
    std::vector<std::array<int, 3>> out;
    for (auto& e : entries) {
        if (e[2] == 0) continue;
        if (!out.empty() && out.back()[0] == e[0] && out.back()[1] == e[1])
            out.back()[2] += e[2];
        else
            out.push_back(e);
    }
    entries = std::move(out);
}

int GammaElt::degree() const {
    int d = 0;
    for (auto& e : entries) d += e[2];
    return d;
}

GammaElt GammaElt::transposed() const {
    GammaElt g;
    for (auto& e : entries) g.entries.push_back({e[1], e[0], e[2]});
    g.canonicalize();
    return g;
}

GammaElt GammaElt::scaled(int m) const {
    GammaElt g = *this;
    for (auto& e : g.entries) e[2] *= m;
    return g;
}

Composition GammaElt::col_weight(int N) const {
    Composition w(size_t(N), 0);
    for (auto& e : entries) w[size_t(e[1])] += e[2];
    return w;
}

Composition GammaElt::row_weight(int N) const {
    Composition w(size_t(N), 0);
    for (auto& e : entries) w[size_t(e[0])] += e[2];
    return w;
}

std::string GammaElt::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < entries.size(); ++k) {
        os << "(" << entries[k][0] << "," << entries[k][1] << ")^" << entries[k][2];
        if (k + 1 < entries.size()) os << ",";
    }
    os << "}";
    return os.str();
}

Realization::Realization(int p, int N, NormalForm nf) : p_(p), N_(N), nf_(std::move(nf)) {
    D_ = nf_.degree(p);
    dim_ = 1;
    for (auto& f : nf_.factors) {
        int64_t fd = f.kind == 'L' ? set_count(N, f.deg) : mset_count(N, f.deg);
        fdim_.push_back(fd);
        pr_.push_back(ipow(p, f.r));
    }
    stride_.assign(nf_.factors.size(), 1);
    for (int f = int(nf_.factors.size()) - 2; f >= 0; --f) stride_[size_t(f)] = stride_[size_t(f) + 1] * fdim_[size_t(f) + 1];
    for (int64_t fd : fdim_) dim_ *= fd;
}

std::string Realization::key() const {
    std::ostringstream os;
    os << "p" << p_ << ";N" << N_ << ";" << nf_.to_string();
    return os.str();
}

int64_t Realization::factor_rank(size_t f, const std::vector<uint8_t>& content) const {
    std::vector<uint8_t> word;
    for (int c = 0; c < N_; ++c)
        for (int t = 0; t < content[size_t(c)]; ++t) word.push_back(uint8_t(c));
    return nf_.factors[f].kind == 'L' ? set_rank(N_, word) : mset_rank(N_, word);
}

std::vector<uint8_t> Realization::factor_unrank(size_t f, int64_t rank) const {
    std::vector<uint8_t> word = nf_.factors[f].kind == 'L' ? set_unrank(N_, nf_.factors[f].deg, rank)
                                                           : mset_unrank(N_, nf_.factors[f].deg, rank);
    std::vector<uint8_t> content(size_t(N_), 0);
    for (uint8_t c : word) ++content[size_t(c)];
    return content;
}

std::vector<std::vector<uint8_t>> Realization::contents(int64_t index) const {
    std::vector<std::vector<uint8_t>> out;
    for (size_t f = 0; f < nf_.factors.size(); ++f) {
        int64_t r = (index / stride_[f]) % fdim_[f];
        out.push_back(factor_unrank(f, r));
    }
    return out;
}

int64_t Realization::index_of(const std::vector<std::vector<uint8_t>>& contents) const {
    int64_t idx = 0;
    for (size_t f = 0; f < nf_.factors.size(); ++f) idx += factor_rank(f, contents[f]) * stride_[f];
    return idx;
}

Composition Realization::weight_of(int64_t index) const {
    Composition w(size_t(N_), 0);
    auto cs = contents(index);
    for (size_t f = 0; f < cs.size(); ++f)
        for (int c = 0; c < N_; ++c) w[size_t(c)] += int(pr_[f]) * cs[f][size_t(c)];
    return w;
}

void Realization::gen_contents(size_t f, const std::vector<int>& cap, std::vector<std::vector<uint8_t>>& out) const {
    // All contents of factor f with sum = deg and p^r * content <= cap.
    out.clear();
    int deg = nf_.factors[f].deg;
    bool lam = nf_.factors[f].kind == 'L';
    int64_t q = pr_[f];
    std::vector<uint8_t> cur(size_t(N_), 0);
    // inner recursion over letters
    auto rec = [&](auto&& self, int letter, int left) -> void {
        if (letter == N_) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int maxe = int(std::min<int64_t>(left, cap[size_t(letter)] / q));
        if (lam) maxe = std::min(maxe, 1);
        for (int e = 0; e <= maxe; ++e) {
            cur[size_t(letter)] = uint8_t(e);
            self(self, letter + 1, left - e);
        }
        cur[size_t(letter)] = 0;
    };
    rec(rec, 0, deg);
}

std::vector<int64_t> Realization::block(const Composition& lambda) const {
    if (int(lambda.size()) != N_) throw std::invalid_argument("block: weight length != N");
    std::vector<int64_t> out;
    size_t nf = nf_.factors.size();
    std::vector<int> remaining(lambda.begin(), lambda.end());
    std::vector<std::vector<uint8_t>> chosen(nf);
    auto rec = [&](auto&& self, size_t f) -> void {
        if (f == nf) {
            for (int c = 0; c < N_; ++c)
                if (remaining[size_t(c)] != 0) return;
            out.push_back(index_of(chosen));
            return;
        }
        std::vector<std::vector<uint8_t>> opts;
        gen_contents(f, remaining, opts);
        for (auto& ct : opts) {
            for (int c = 0; c < N_; ++c) remaining[size_t(c)] -= int(pr_[f]) * ct[size_t(c)];
            chosen[f] = ct;
            self(self, f + 1);
            for (int c = 0; c < N_; ++c) remaining[size_t(c)] += int(pr_[f]) * ct[size_t(c)];
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Composition> Realization::weight_support() const {
    std::map<Composition, char> seen;
    for (int64_t i = 0; i < dim_; ++i) seen[weight_of(i)] = 1;
    std::vector<Composition> out;
    for (auto& [w, _] : seen) out.push_back(w);
    return out;
}

// Per-factor application of E_{ij}^{(k')} (inner, twist already divided out).
// Returns false when the action is zero.
static bool factor_act_E(char kind, int N, int i, int j, int kk, const std::vector<uint8_t>& content,
                         std::vector<uint8_t>& out, int64_t& coeff) {
    if (content[size_t(j)] < kk) return false;
    if (kind == 'L') {
        if (kk != 1 || content[size_t(i)]) return false;
        out = content;
        out[size_t(j)] = 0;
        out[size_t(i)] = 1;
        int lo = std::min(i, j), hi = std::max(i, j), between = 0;
        for (int c = lo + 1; c < hi; ++c) between += content[size_t(c)];
        coeff = (between % 2) ? -1 : 1;
        return true;
    }
    out = content;
    out[size_t(j)] = uint8_t(out[size_t(j)] - kk);
    out[size_t(i)] = uint8_t(out[size_t(i)] + kk);
    coeff = kind == 'S' ? binom(content[size_t(j)], kk) : binom(content[size_t(i)] + kk, kk);
    return true;
}

SVec Realization::act_E(int i, int j, int k, const SVec& v) const {
    if (i == j) throw std::invalid_argument("act_E: i == j");
    PrimeField f(p_);
    SVec result;
    size_t nfac = nf_.factors.size();
    for (auto& [index, val] : v) {
        auto cs = contents(index);
        // distribute k among the factors
        std::vector<std::pair<int64_t, int64_t>> acc; // (partial index contribution, coeff)
        std::vector<std::vector<uint8_t>> cur = cs;
        auto rec = [&](auto&& self, size_t fct, int left, int64_t coeff) -> void {
            if (coeff % p_ == 0) return;
            if (fct == nfac) {
                if (left == 0) {
                    int64_t idx = index_of(cur);
                    int c = f.reduce(coeff % p_ * val);
                    if (c) svec_axpy(result, SVec{{idx, uint8_t(1)}}, c, f);
                }
                return;
            }
            int64_t q = pr_[fct];
            for (int kf = 0; kf <= left; ++kf) {
                if (kf % q) continue;
                int inner = int(kf / q);
                if (inner == 0) {
                    self(self, fct + 1, left, coeff);
                    continue;
                }
                std::vector<uint8_t> out;
                int64_t c2;
                if (!factor_act_E(nf_.factors[fct].kind, N_, i, j, inner, cs[fct], out, c2)) continue;
                std::vector<uint8_t> saved = cur[fct];
                cur[fct] = out;
                self(self, fct + 1, left - kf, coeff * c2);
                cur[fct] = saved;
            }
        };
        rec(rec, 0, k, 1);
    }
    return result;
}

// Per-factor application of a full gamma sub-multiset (inner, twist divided
// out). Column weight must equal the factor content.
static bool factor_act_gamma(char kind, int N, const std::vector<std::array<int, 3>>& pairs,
                             const std::vector<uint8_t>& content, std::vector<uint8_t>& out, int64_t& coeff) {
    Composition colw(size_t(N), 0), roww(size_t(N), 0);
    for (auto& e : pairs) {
        colw[size_t(e[1])] += e[2];
        roww[size_t(e[0])] += e[2];
    }
    for (int c = 0; c < N; ++c)
        if (colw[size_t(c)] != content[size_t(c)]) return false;
    if (kind == 'L') {
        // contents are 0/1; each column holds at most one pair
        for (auto& e : pairs)
            if (e[2] != 1) return false;
        std::vector<uint8_t> roword;
        // slots in ascending column order
        std::vector<std::pair<int, int>> byc;
        for (auto& e : pairs) byc.push_back({e[1], e[0]});
        std::sort(byc.begin(), byc.end());
        std::vector<uint8_t> rows;
        for (auto& [c, r] : byc) rows.push_back(uint8_t(r));
        // repeated row letter kills the exterior monomial
        std::vector<uint8_t> sorted = rows;
        std::sort(sorted.begin(), sorted.end());
        for (size_t t = 0; t + 1 < sorted.size(); ++t)
            if (sorted[t] == sorted[t + 1]) return false;
        int inv = 0;
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = a + 1; b < rows.size(); ++b)
                if (rows[a] > rows[b]) ++inv;
        out.assign(size_t(N), 0);
        for (uint8_t rr : rows) out[size_t(rr)] = 1;
        coeff = (inv % 2) ? -1 : 1;
        return true;
    }
    out.assign(size_t(N), 0);
    for (int c = 0; c < N; ++c) out[size_t(c)] = uint8_t(roww[size_t(c)]);
    // number of distinct slot assignments: per column for S, per row for Gamma
    coeff = 1;
    if (kind == 'S') {
        for (int c = 0; c < N; ++c) {
            std::vector<int> parts;
            for (auto& e : pairs)
                if (e[1] == c) parts.push_back(e[2]);
            if (!parts.empty()) coeff *= multinomial(parts);
        }
    } else { // Gamma
        for (int r = 0; r < N; ++r) {
            std::vector<int> parts;
            for (auto& e : pairs)
                if (e[0] == r) parts.push_back(e[2]);
            if (!parts.empty()) coeff *= multinomial(parts);
        }
    }
    return true;
}

SVec Realization::act_gamma(const GammaElt& xi, const SVec& v) const {
    PrimeField f(p_);
    SVec result;
    if (xi.degree() != D_) throw std::invalid_argument("act_gamma: degree mismatch");
    size_t nfac = nf_.factors.size();
    size_t ne = xi.entries.size();
    for (auto& [index, val] : v) {
        auto cs = contents(index);
        // column capacities per factor (in ambient multiplicity units)
        std::vector<std::vector<int>> cap(nfac, std::vector<int>(size_t(N_), 0));
        for (size_t fct = 0; fct < nfac; ++fct)
            for (int c = 0; c < N_; ++c) cap[fct][size_t(c)] = int(pr_[fct]) * cs[fct][size_t(c)];
        // distribute each entry's multiplicity over the factors
        std::vector<std::vector<std::array<int, 3>>> assigned(nfac);
        auto emit = [&]() {
            int64_t coeff = 1;
            std::vector<std::vector<uint8_t>> cur(nfac);
            for (size_t fct = 0; fct < nfac; ++fct) {
                // divide by the twist scale
                std::vector<std::array<int, 3>> inner;
                for (auto& e : assigned[fct]) {
                    if (e[2] % pr_[fct]) return;
                    inner.push_back({e[0], e[1], int(e[2] / pr_[fct])});
                }
                std::vector<uint8_t> out;
                int64_t c2;
                if (!factor_act_gamma(nf_.factors[fct].kind, N_, inner, cs[fct], out, c2)) return;
                coeff = (coeff * (c2 % p_)) % p_;
                if (coeff == 0) return;
                cur[fct] = out;
            }
            int c = f.reduce(coeff * val);
            if (c) svec_axpy(result, SVec{{index_of(cur), uint8_t(1)}}, c, f);
        };
        auto rec = [&](auto&& self, size_t e) -> void {
            if (e == ne) {
                emit();
                return;
            }
            int i = xi.entries[e][0], j = xi.entries[e][1], m = xi.entries[e][2];
            auto inner = [&](auto&& self2, size_t fct, int left) -> void {
                if (fct == nfac) {
                    if (left == 0) self(self, e + 1);
                    return;
                }
                int maxm = std::min(left, cap[fct][size_t(j)]);
                for (int take = 0; take <= maxm; ++take) {
                    if (take) {
                        cap[fct][size_t(j)] -= take;
                        assigned[fct].push_back({i, j, take});
                    }
                    self2(self2, fct + 1, left - take);
                    if (take) {
                        cap[fct][size_t(j)] += take;
                        assigned[fct].pop_back();
                    }
                }
            };
            inner(inner, 0, m);
        };
        rec(rec, 0);
    }
    return result;
}

Mat Realization::act_matrix(const GammaElt& xi) const {
    if (dim_ > 4096) throw std::runtime_error("act_matrix: realization too large for a dense action matrix");
    Mat out(p_, int(dim_), int(dim_));
    for (int64_t c = 0; c < dim_; ++c) {
        SVec col = act_gamma(xi, SVec{{c, uint8_t(1)}});
        for (auto& [r, v] : col) out.set(int(r), int(c), v);
    }
    return out;
}

Presentation Realization::presentation() const {
    Presentation pres;
    // assign generator letters
    std::vector<int> first_letter(nf_.factors.size(), 0);
    int next = 0;
    for (size_t f = 0; f < nf_.factors.size(); ++f) {
        first_letter[f] = next;
        if (nf_.factors[f].deg == 0) continue;
        next += nf_.factors[f].kind == 'G' ? 1 : nf_.factors[f].deg;
    }
    if (next > N_) throw std::runtime_error("presentation: ambient too small for the cyclic generator");
    std::vector<std::vector<uint8_t>> gen(nf_.factors.size(), std::vector<uint8_t>(size_t(N_), 0));
    for (size_t f = 0; f < nf_.factors.size(); ++f) {
        if (nf_.factors[f].deg == 0) continue;
        if (nf_.factors[f].kind == 'G')
            gen[f][size_t(first_letter[f])] = uint8_t(nf_.factors[f].deg);
        else
            for (int t = 0; t < nf_.factors[f].deg; ++t) gen[f][size_t(first_letter[f] + t)] = 1;
    }
    pres.gen_index = index_of(gen);
    pres.gen_weight = weight_of(pres.gen_index);

    // diagonal part fixing every generator letter except the two involved
    auto diag_except = [&](int a, int b) {
        GammaElt xi;
        for (size_t f = 0; f < nf_.factors.size(); ++f)
            for (int c = 0; c < N_; ++c) {
                if (c == a || c == b) continue;
                int m = int(pr_[f]) * gen[f][size_t(c)];
                if (m) xi.entries.push_back({c, c, m});
            }
        return xi;
    };

    for (size_t f = 0; f < nf_.factors.size(); ++f) {
        char kind = nf_.factors[f].kind;
        int a = nf_.factors[f].deg;
        if (kind == 'G' || a < 2) continue;
        int q = int(pr_[f]);
        for (int t = 0; t + 1 < a; ++t) {
            int u = first_letter[f] + t, w = u + 1;
            // adjacent transposition of the generator letters u, w
            GammaElt swap = diag_except(u, w);
            swap.entries.push_back({w, u, q});
            swap.entries.push_back({u, w, q});
            swap.canonicalize();
            pres.relations.push_back({swap, kind == 'S' ? 1 : -1});
            if (kind == 'L') {
                // the word with letter w replaced by u maps to zero
                GammaElt rep = diag_except(u, w);
                rep.entries.push_back({u, u, q});
                rep.entries.push_back({u, w, q});
                rep.canonicalize();
                pres.relations.push_back({rep, 0});
            }
        }
    }
    return pres;
}

namespace {
std::map<std::string, RealPtr>& real_cache() {
    static std::map<std::string, RealPtr> cache;
    return cache;
}
std::mutex& real_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

RealPtr realize(int p, int N, const NormalForm& nf) {
    Realization probe(p, N, nf);
    std::string key = probe.key();
    std::lock_guard<std::mutex> lock(real_mutex());
    auto& cache = real_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    RealPtr ptr = std::make_shared<Realization>(std::move(probe));
    cache[key] = ptr;
    return ptr;
}

RealPtr realize(int p, int N, const ExprPtr& expr) { return realize(p, N, expr_normalize(expr)); }

std::vector<std::pair<GammaElt, int>> schur_multiply(const GammaElt& a, const GammaElt& b, int p, int N) {
    if (a.degree() != b.degree()) throw std::invalid_argument("schur_multiply: degree mismatch");
    PrimeField f(p);
    int d = a.degree();
    auto expand = [&](const GammaElt& g) {
        std::vector<std::pair<int, int>> word;
        for (auto& e : g.entries)
            for (int t = 0; t < e[2]; ++t) word.push_back({e[0], e[1]});
        std::sort(word.begin(), word.end());
        std::vector<std::vector<std::pair<int, int>>> arr;
        do arr.push_back(word);
        while (std::next_permutation(word.begin(), word.end()));
        return arr;
    };
    auto arrs_a = expand(a), arrs_b = expand(b);
    // coefficient map on arrangements of the product
    std::map<std::vector<std::pair<int, int>>, int> coeffs;
    for (auto& wa : arrs_a)
        for (auto& wb : arrs_b) {
            std::vector<std::pair<int, int>> prod(size_t(d));
            bool ok = true;
            for (int t = 0; t < d && ok; ++t) {
                if (wa[size_t(t)].second != wb[size_t(t)].first) ok = false;
                else prod[size_t(t)] = {wa[size_t(t)].first, wb[size_t(t)].second};
            }
            if (ok) {
                int& c = coeffs[prod];
                c = f.add(c, 1);
            }
        }
    // collect into gamma basis: coefficient of gamma_M = coefficient of the
    // sorted arrangement of M
    std::vector<std::pair<GammaElt, int>> out;
    for (auto& [word, c] : coeffs) {
        if (!c) continue;
        std::vector<std::pair<int, int>> sorted = word;
        std::sort(sorted.begin(), sorted.end());
        if (sorted == word) out.push_back({GammaElt::from_pairs(word), c});
    }
    (void)N;
    return out;
}

std::vector<GammaElt> schur_basis(int N, int d) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) pairs.push_back({i, j});
    std::vector<GammaElt> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t from, int left) -> void {
        if (left == 0) {
            std::vector<std::pair<int, int>> chosen;
            for (int t : pick) chosen.push_back(pairs[size_t(t)]);
            out.push_back(GammaElt::from_pairs(chosen));
            return;
        }
        for (size_t t = from; t < pairs.size(); ++t) {
            pick.push_back(int(t));
            self(self, t, left - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, d);
    return out;
}

Subspace weight_space(const Realization& m, const Composition& lambda) {
    if (m.dim() > 200000) throw std::runtime_error("weight_space: realization too large");
    auto idxs = m.block(lambda);
    Mat basis(m.p(), int(idxs.size()), int(m.dim()));
    for (size_t r = 0; r < idxs.size(); ++r) basis.set(int(r), int(idxs[r]), 1);
    Subspace s;
    s.ambient = int(m.dim());
    s.basis = std::move(basis);
    return s;
}

Mat incl_twist_matrix(int p, int N, const Composition& mu, int r) {
    NormalForm src, dst;
    for (int a : mu)
        if (a > 0) {
            src.factors.push_back({'S', a, r});
            dst.factors.push_back({'S', a * int(ipow(p, r)), 0});
        }
    RealPtr s = realize(p, N, src), d = realize(p, N, dst);
    Mat out(p, int(d->dim()), int(s->dim()));
    int q = int(ipow(p, r));
    for (int64_t c = 0; c < s->dim(); ++c) {
        auto cs = s->contents(c);
        for (auto& ct : cs)
            for (auto& e : ct) e = uint8_t(e * q);
        out.set(int(d->index_of(cs)), int(c), 1);
    }
    return out;
}

PreRealization realize_pre(int p, int N, const GradedSpace& w, const ExprPtr& child) {
    PreRealization out;
    out.line_degs = graded_lines(w);
    out.outer_N = N;
    int W = int(out.line_degs.size());
    out.inner = realize(p, W * N, child);
    return out;
}

Composition PreRealization::outer_weight(int64_t index) const {
    Composition inner_w = inner->weight_of(index);
    Composition out(size_t(outer_N), 0);
    for (size_t u = 0; u < inner_w.size(); ++u) out[u % size_t(outer_N)] += inner_w[u];
    return out;
}

int PreRealization::grading(int64_t index) const {
    Composition inner_w = inner->weight_of(index);
    int deg = 0;
    for (size_t u = 0; u < inner_w.size(); ++u) deg += inner_w[u] * line_degs[u / size_t(outer_N)];
    return deg;
}

GradedSpace graded_dims_from_realization(const Realization& r, const std::vector<int>& line_degs) {
    if (int(line_degs.size()) != r.N()) throw std::invalid_argument("graded_dims_from_realization: line count");
    GradedSpace out;
    for (int64_t i = 0; i < r.dim(); ++i) {
        Composition w = r.weight_of(i);
        int d = 0;
        for (int c = 0; c < r.N(); ++c) d += w[size_t(c)] * line_degs[size_t(c)];
        out.dims[d] += 1;
    }
    return out;
}

} // namespace pfext
