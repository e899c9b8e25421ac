/* The differential of the self-map at a triple-contact plane is computed by
 * exact Gaussian elimination, either over F_p or over the rationals.  The
 * characteristic polynomial is recovered from N+1 determinant evaluations by
 * Lagrange interpolation, so the prime must exceed the tangent dimension. */
#include "grasscalc/jetcheck.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "grasscalc/bott.hpp"

namespace grasscalc::jetcheck {
namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

bool is_prime_ll(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/* Both coefficient fields expose the same value-type interface so the
 * elimination routines below stay generic. */
class Fp {
  public:
    using T = long long;
    explicit Fp(long long p) : p_(p) {}
    long long modulus() const { return p_; }
    T zero() const { return 0; }
    T one() const { return 1; }
    T from_int(long long v) const {
        v %= p_;
        return v < 0 ? v + p_ : v;
    }
    bool is_zero(T v) const { return v == 0; }
    T add(T a, T b) const { return (a + b) % p_; }
    T sub(T a, T b) const { return ((a - b) % p_ + p_) % p_; }
    T neg(T a) const { return a == 0 ? 0 : p_ - a; }
    T mul(T a, T b) const { return a * b % p_; }
    T inv(T a) const {
        if (a == 0) throw PreconditionViolation("division by zero in modular arithmetic");
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            long long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        return from_int(t);
    }

  private:
    long long p_;
};

class Rationals {
  public:
    using T = Rat;
    T zero() const { return Rat(0); }
    T one() const { return Rat(1); }
    T from_int(long long v) const { return Rat(v); }
    bool is_zero(const T& v) const { return v == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T neg(const T& a) const { return -a; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const {
        if (a == 0) throw PreconditionViolation("division by zero in rational arithmetic");
        return Rat(1) / a;
    }
};

template <class K>
using Vec = std::vector<typename K::T>;
template <class K>
using Mat = std::vector<std::vector<typename K::T>>;

/* Gauss-Jordan; returns the pivot columns. */
template <class K>
std::vector<int> rref(const K& k, Mat<K>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int i = row; i < rows; ++i)
            if (!k.is_zero(m[i][col])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[row], m[pr]);
        auto scale = k.inv(m[row][col]);
        for (auto& v : m[row]) v = k.mul(v, scale);
        for (int i = 0; i < rows; ++i) {
            if (i == row || k.is_zero(m[i][col])) continue;
            auto f = m[i][col];
            for (int j = 0; j < cols; ++j) m[i][j] = k.sub(m[i][j], k.mul(f, m[row][j]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
int rank_of(const K& k, Mat<K> m) {
    return static_cast<int>(rref(k, m).size());
}

template <class K>
std::vector<Vec<K>> nullspace(const K& k, Mat<K> m) {
    if (m.empty()) return {};
    int cols = static_cast<int>(m[0].size());
    auto pivots = rref(k, m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec<K>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec<K> v(cols, k.zero());
        v[f] = k.one();
        for (std::size_t row = 0; row < pivots.size(); ++row)
            v[pivots[row]] = k.neg(m[row][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
typename K::T det(const K& k, Mat<K> m) {
    int n = static_cast<int>(m.size());
    bool flip = false;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int i = col; i < n; ++i)
            if (!k.is_zero(m[i][col])) {
                pr = i;
                break;
            }
        if (pr < 0) return k.zero();
        if (pr != col) {
            std::swap(m[col], m[pr]);
            flip = !flip;
        }
        auto scale = k.inv(m[col][col]);
        for (int i = col + 1; i < n; ++i) {
            if (k.is_zero(m[i][col])) continue;
            auto f = k.mul(m[i][col], scale);
            for (int j = col; j < n; ++j) m[i][j] = k.sub(m[i][j], k.mul(f, m[col][j]));
        }
    }
    auto d = k.one();
    for (int i = 0; i < n; ++i) d = k.mul(d, m[i][i]);
    return flip ? k.neg(d) : d;
}

/* Solves A X = RHS for a full-column-rank A, all columns at once. */
template <class K>
std::optional<Mat<K>> solve_columns(const K& k, const Mat<K>& a, const Mat<K>& rhs) {
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    int extra = static_cast<int>(rhs[0].size());
    Mat<K> aug(rows, Vec<K>(cols + extra, k.zero()));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        for (int j = 0; j < extra; ++j) aug[i][cols + j] = rhs[i][j];
    }
    auto pivots = rref(k, aug);
    if (static_cast<int>(pivots.size()) < cols) return std::nullopt;
    for (int c : pivots)
        if (c >= cols) return std::nullopt;
    Mat<K> x(cols, Vec<K>(extra, k.zero()));
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < extra; ++j) x[i][j] = aug[i][cols + j];
    return x;
}

/* Coefficients of det(tI - A), low degree first, by interpolation at
 * t = 0..N; requires N+1 distinct field elements. */
template <class K>
Vec<K> charpoly(const K& k, const Mat<K>& a) {
    int n = static_cast<int>(a.size());
    std::vector<typename K::T> xs, ys;
    for (int t = 0; t <= n; ++t) {
        Mat<K> m(n, Vec<K>(n, k.zero()));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[i][j] = (i == j) ? k.sub(k.from_int(t), a[i][j]) : k.neg(a[i][j]);
        xs.push_back(k.from_int(t));
        ys.push_back(det(k, m));
    }
    Vec<K> master{k.one()};
    for (const auto& x : xs) {
        Vec<K> next(master.size() + 1, k.zero());
        for (std::size_t i = 0; i < master.size(); ++i) {
            next[i + 1] = k.add(next[i + 1], master[i]);
            next[i] = k.sub(next[i], k.mul(master[i], x));
        }
        master = std::move(next);
    }
    Vec<K> out(n + 1, k.zero());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        Vec<K> q(master.size() - 1, k.zero());
        auto carry = k.zero();
        for (int i = static_cast<int>(master.size()) - 1; i >= 1; --i) {
            carry = k.add(master[i], k.mul(carry, xs[j]));
            q[i - 1] = carry;
        }
        auto den = k.zero();
        auto pw = k.one();
        for (const auto& c : q) {
            den = k.add(den, k.mul(c, pw));
            pw = k.mul(pw, xs[j]);
        }
        auto scale = k.mul(ys[j], k.inv(den));
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = k.add(out[i], k.mul(q[i], scale));
    }
    return out;
}

/* (t+2)^{r+1} (t-1)^{N-r-1}, low degree first. */
template <class K>
Vec<K> expected_charpoly(const K& k, int r, int n) {
    Vec<K> poly{k.one()};
    auto mul_linear = [&](long long c, int times) {
        for (int t = 0; t < times; ++t) {
            Vec<K> next(poly.size() + 1, k.zero());
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = k.add(next[i + 1], poly[i]);
                next[i] = k.add(next[i], k.mul(poly[i], k.from_int(c)));
            }
            poly = std::move(next);
        }
    };
    mul_linear(2, r + 1);
    mul_linear(-1, n - r - 1);
    return poly;
}

/* Monomial bookkeeping on the plane x_0..x_r and on the contact plane
 * x_0..x_{r+1}; enumeration order is the nested a <= b (<= c) loop. */
std::vector<std::pair<int, int>> sym2_list(int top) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a <= top; ++a)
        for (int b = a; b <= top; ++b) out.emplace_back(a, b);
    return out;
}

std::vector<std::array<int, 3>> sym3_list(int top) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= top; ++a)
        for (int b = a; b <= top; ++b)
            for (int c = b; c <= top; ++c) out.push_back({a, b, c});
    return out;
}

template <class K>
struct Model {
    int r = 0;
    int n = 0;
    Mat<K> qp;       // per quadric, plane-part coefficients over sym2_list(r)
    Mat<K> lin;      // per quadric, L_i coefficients, a = 0..r
    Vec<K> quad;     // per quadric, c_i
    Mat<K> mq;       // rows: plane monomials, cols: quadrics
    int quadrics() const { return n - r - 1; }
    int ambient() const { return (n - r) * (r + 1); }
    int col(int i, int a) const { return (i - (r + 1)) * (r + 1) + a; }
};

template <class K>
Model<K> model_from_sample(const K& k, const CubicSample& s) {
    Model<K> m;
    m.r = s.r;
    m.n = s.n;
    int nq = m.quadrics();
    m.qp.resize(nq);
    m.lin.resize(nq);
    for (int qi = 0; qi < nq; ++qi) {
        m.qp[qi].reserve(s.qp[qi].size());
        for (long long v : s.qp[qi]) m.qp[qi].push_back(k.from_int(v));
        m.lin[qi].reserve(s.lin[qi].size());
        for (long long v : s.lin[qi]) m.lin[qi].push_back(k.from_int(v));
        m.quad.push_back(k.from_int(s.quad[qi]));
    }
    int pmon = static_cast<int>(sym2_list(s.r).size());
    m.mq.assign(pmon, Vec<K>(nq, k.zero()));
    for (int pm = 0; pm < pmon; ++pm)
        for (int qi = 0; qi < nq; ++qi) m.mq[pm][qi] = m.qp[qi][pm];
    return m;
}

/* Rows: cubic monomials on the plane; columns: ambient coordinates of a
 * deformation.  The contact row x_{r+1} is unconstrained. */
template <class K>
Mat<K> constraint_matrix(const K& k, const Model<K>& m) {
    auto pms = sym2_list(m.r);
    auto cubes = sym3_list(m.r);
    std::map<std::array<int, 3>, int> cube_index;
    for (std::size_t i = 0; i < cubes.size(); ++i) cube_index[cubes[i]] = static_cast<int>(i);
    Mat<K> sys(cubes.size(), Vec<K>(m.ambient(), k.zero()));
    for (int qi = 0; qi < m.quadrics(); ++qi) {
        int i = m.r + 2 + qi;
        for (int a = 0; a <= m.r; ++a) {
            int col = m.col(i, a);
            for (std::size_t pm = 0; pm < pms.size(); ++pm) {
                std::array<int, 3> key{a, pms[pm].first, pms[pm].second};
                std::sort(key.begin(), key.end());
                int row = cube_index.at(key);
                sys[row][col] = k.add(sys[row][col], m.qp[qi][pm]);
            }
        }
    }
    return sys;
}

template <class K>
std::vector<Vec<K>> basis_of(const K& k, const Model<K>& m) {
    auto basis = nullspace(k, constraint_matrix(k, m));
    long expected = static_cast<long>(m.ambient()) -
                    static_cast<long>(m.r + 1) * (m.r + 2) * (m.r + 3) / 6;
    if (static_cast<long>(basis.size()) != expected)
        throw UnexpectedDimension("tangent space has dimension " +
                                  std::to_string(basis.size()) + ", expected " +
                                  std::to_string(expected));
    return basis;
}

template <class K>
Vec<K> differential(const K& k, const Model<K>& m, const Vec<K>& y) {
    if (static_cast<int>(y.size()) != m.ambient())
        throw PreconditionViolation("deformation vector has the wrong length");
    auto sys = constraint_matrix(k, m);
    for (const auto& row : sys) {
        auto acc = k.zero();
        for (std::size_t j = 0; j < row.size(); ++j) acc = k.add(acc, k.mul(row[j], y[j]));
        if (!k.is_zero(acc))
            throw PreconditionViolation("vector is not tangent to the plane locus");
    }
    /* Tilting the contact plane: the correction b solves
     * sum_i b_i Q_i|_P = - sum_i Y_i L_i. */
    auto pms = sym2_list(m.r);
    Mat<K> rhs(pms.size(), Vec<K>(1, k.zero()));
    for (std::size_t pm = 0; pm < pms.size(); ++pm) {
        auto [a, b] = pms[pm];
        auto acc = k.zero();
        for (int qi = 0; qi < m.quadrics(); ++qi) {
            int i = m.r + 2 + qi;
            auto term = k.mul(y[m.col(i, a)], m.lin[qi][b]);
            if (a != b) term = k.add(term, k.mul(y[m.col(i, b)], m.lin[qi][a]));
            acc = k.add(acc, term);
        }
        rhs[pm][0] = k.neg(acc);
    }
    auto sol = solve_columns(k, m.mq, rhs);
    if (!sol) throw LiftFailure("contact-plane correction system is singular");
    Vec<K> beta(m.quadrics());
    for (int qi = 0; qi < m.quadrics(); ++qi) beta[qi] = (*sol)[qi][0];
    /* Residual plane: rows r+2..n ride along, the contact row picks up
     * -2 Y_{r+1} - sum_i (c_i Y_i + b_i L_i). */
    Vec<K> z = y;
    for (int a = 0; a <= m.r; ++a) {
        auto acc = k.mul(k.from_int(-2), y[m.col(m.r + 1, a)]);
        for (int qi = 0; qi < m.quadrics(); ++qi) {
            int i = m.r + 2 + qi;
            acc = k.sub(acc, k.mul(m.quad[qi], y[m.col(i, a)]));
            acc = k.sub(acc, k.mul(beta[qi], m.lin[qi][a]));
        }
        z[m.col(m.r + 1, a)] = acc;
    }
    return z;
}

template <class K>
Mat<K> matrix_of(const K& k, const Model<K>& m, const std::vector<Vec<K>>& basis) {
    int nb = static_cast<int>(basis.size());
    Mat<K> b(m.ambient(), Vec<K>(nb, k.zero()));
    Mat<K> images(m.ambient(), Vec<K>(nb, k.zero()));
    for (int j = 0; j < nb; ++j) {
        auto z = differential(k, m, basis[j]);
        for (int i = 0; i < m.ambient(); ++i) {
            b[i][j] = basis[j][i];
            images[i][j] = z[i];
        }
    }
    auto x = solve_columns(k, b, images);
    if (!x) throw PreconditionViolation("differential image left the tangent space");
    return *x;
}

template <class K>
struct Analysis {
    bool charpoly_ok = false;
    bool det_ok = false;
    bool eig_ok = false;
    typename K::T trace;
    Mat<K> a;
};

template <class K>
Analysis<K> analyze(const K& k, int r, const Model<K>& m, const std::vector<Vec<K>>& basis) {
    Analysis<K> out;
    out.a = matrix_of(k, m, basis);
    int nb = static_cast<int>(basis.size());
    out.charpoly_ok = charpoly(k, out.a) == expected_charpoly(k, r, nb);
    long long dt = 1;
    for (int i = 0; i <= r; ++i) dt *= -2;
    auto cp0 = charpoly(k, out.a)[0];
    auto det_a = (nb % 2 == 0) ? cp0 : k.neg(cp0);
    out.det_ok = det_a == k.from_int(dt);
    Mat<K> shifted = out.a;
    for (int i = 0; i < nb; ++i) shifted[i][i] = k.add(shifted[i][i], k.from_int(2));
    out.eig_ok = nb - rank_of(k, shifted) == r + 1;
    out.trace = k.zero();
    for (int i = 0; i < nb; ++i) out.trace = k.add(out.trace, out.a[i][i]);
    return out;
}

/* a/b mod p with the denominator inverted; fails if p divides b. */
long long rat_mod(const Rat& x, long long p) {
    Fp k(p);
    Int num = boost::multiprecision::numerator(x) % p;
    Int den = boost::multiprecision::denominator(x) % p;
    long long nl = num.convert_to<long long>();
    long long dl = den.convert_to<long long>();
    if (k.from_int(dl) == 0)
        throw PreconditionViolation("denominator divisible by the sampling prime");
    return k.mul(k.from_int(nl), k.inv(k.from_int(dl)));
}

void validate_r(int r) {
    if (r < 1 || r > 3) throw PreconditionViolation("r must be 1, 2, or 3");
}

void validate_prime(long long p, long tangent_dim) {
    if (p < 5 || p >= (1LL << 31))
        throw PreconditionViolation("prime must lie in [5, 2^31): characteristics 2 and 3 "
                                    "degenerate the eigenvalues");
    if (!is_prime_ll(p)) throw PreconditionViolation("modulus " + std::to_string(p) + " is not prime");
    if (p <= tangent_dim)
        throw PreconditionViolation("prime must exceed the tangent dimension " +
                                    std::to_string(tangent_dim));
}

}  // namespace

std::uint64_t coeff_stream(std::uint64_t seed, std::uint64_t attempt, std::uint64_t quadric,
                           std::uint64_t index) {
    const std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    std::uint64_t s = seed + golden;
    s = mix64(s + golden * (attempt + 1));
    s = mix64(s + golden * (quadric + 1));
    s = mix64(s + golden * (index + 1));
    return s;
}

CubicSample sample_cubic(int r, std::uint64_t seed, long long prime) {
    validate_r(r);
    auto spec = bott::fano_spec(r);
    validate_prime(prime, spec.dim_x());
    Fp k(prime);
    auto full = sym2_list(r + 1);
    auto pms = sym2_list(r);
    std::map<std::pair<int, int>, int> pm_index;
    for (std::size_t i = 0; i < pms.size(); ++i) pm_index[pms[i]] = static_cast<int>(i);
    int nq = spec.n - r - 1;
    for (int attempt = 1; attempt <= 16; ++attempt) {
        CubicSample s;
        s.r = r;
        s.n = spec.n;
        s.prime = prime;
        s.seed = seed;
        s.attempts_used = attempt;
        s.qp.assign(nq, std::vector<long long>(pms.size(), 0));
        s.lin.assign(nq, std::vector<long long>(r + 1, 0));
        s.quad.assign(nq, 0);
        for (int qi = 0; qi < nq; ++qi) {
            for (std::size_t ci = 0; ci < full.size(); ++ci) {
                long long v = static_cast<long long>(
                    coeff_stream(seed, static_cast<std::uint64_t>(attempt), qi, ci) %
                    static_cast<std::uint64_t>(prime));
                auto [a, b] = full[ci];
                if (b <= r)
                    s.qp[qi][pm_index.at({a, b})] = v;
                else if (a <= r)
                    s.lin[qi][a] = v;
                else
                    s.quad[qi] = v;
            }
        }
        auto m = model_from_sample(k, s);
        if (!k.is_zero(det(k, m.mq))) return s;
    }
    throw GenericityFailure("sampled quadrics never spanned the quadrics on the plane "
                            "(seed " + std::to_string(seed) + ", 16 attempts)");
}

std::vector<std::vector<long long>> tangent_basis(const CubicSample& s) {
    Fp k(s.prime);
    return basis_of(k, model_from_sample(k, s));
}

std::vector<long long> apply_differential(const CubicSample& s, const std::vector<long long>& y) {
    Fp k(s.prime);
    return differential(k, model_from_sample(k, s), y);
}

std::vector<std::vector<long long>> jet_matrix(const CubicSample& s,
                                               const std::vector<std::vector<long long>>& basis) {
    Fp k(s.prime);
    return matrix_of(k, model_from_sample(k, s), basis);
}

JetReport verify_eigenpoly(const JetOptions& opt) {
    validate_r(opt.r);
    auto spec = bott::fano_spec(opt.r);
    validate_prime(opt.prime, spec.dim_x());
    if (opt.exact && opt.r != 1)
        throw PreconditionViolation("exact verification is only supported for r = 1");
    if (opt.seeds.empty()) throw PreconditionViolation("at least one seed is required");
    JetReport report;
    report.r = opt.r;
    report.n = spec.n;
    report.tangent_dim = static_cast<int>(spec.dim_x());
    report.prime = opt.prime;
    report.all_ok = true;
    Fp k(opt.prime);
    for (std::uint64_t seed : opt.seeds) {
        auto sample = sample_cubic(opt.r, seed, opt.prime);
        auto model = model_from_sample(k, sample);
        auto basis = basis_of(k, model);
        auto an = analyze(k, opt.r, model, basis);
        SeedReport sr;
        sr.seed = seed;
        sr.attempts_used = sample.attempts_used;
        sr.charpoly_matches = an.charpoly_ok;
        sr.det_matches = an.det_ok;
        sr.eigenspace_matches = an.eig_ok;
        sr.trace = Int(an.trace > opt.prime / 2 ? an.trace - opt.prime : an.trace);
        if (opt.exact) {
            Rationals q;
            auto model_q = model_from_sample(q, sample);
            auto basis_q = basis_of(q, model_q);
            auto an_q = analyze(q, opt.r, model_q, basis_q);
            int nb = static_cast<int>(basis_q.size());
            bool congruent = static_cast<int>(basis.size()) == nb;
            for (int i = 0; congruent && i < nb; ++i)
                for (int j = 0; congruent && j < nb; ++j)
                    congruent = rat_mod(an_q.a[i][j], opt.prime) == an.a[i][j];
            sr.exact_ran = true;
            sr.exact_agrees = an_q.charpoly_ok && an_q.det_ok && an_q.eig_ok && congruent &&
                              an_q.trace == Rat(nb - 3 * (opt.r + 1));
        }
        bool ok = sr.charpoly_matches && sr.det_matches && sr.eigenspace_matches &&
                  (!sr.exact_ran || sr.exact_agrees);
        report.all_ok = report.all_ok && ok;
        report.seeds.push_back(std::move(sr));
    }
    return report;
}

}  // namespace grasscalc::jetcheck
