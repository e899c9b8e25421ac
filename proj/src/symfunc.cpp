/* Symmetric-function kernel implementation.  The production tableau rule and
 * the monomial-expansion oracle are kept as fully independent code paths. */
#include "grasscalc/symfunc.hpp"

#include <algorithm>
#include <climits>
#include <mutex>
#include <sstream>

#include "grasscalc/cache.hpp"

namespace grasscalc::symfunc {

bool is_dominant(const Weight& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] < w[i]) return false;
    return true;
}

Weight padded(Weight w, int n) {
    if (static_cast<int>(w.size()) > n)
        throw PreconditionViolation("weight longer than rank " + std::to_string(n));
    w.resize(n, 0);
    return w;
}

int weight_sum(const Weight& w) {
    int s = 0;
    for (int e : w) s += e;
    return s;
}

std::string weight_str(const Weight& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string schurvec_str(const SchurVector& v) {
    std::string s;
    bool first = true;
    for (const auto& [w, c] : v) {
        if (c == 0) continue;
        if (!first) s += ';';
        first = false;
        s += weight_str(w);
        s += ':';
        s += c.str();
    }
    return s;
}

SchurVector schurvec_parse(const std::string& s) {
    SchurVector v;
    if (s.empty()) return v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos)
            throw PreconditionViolation("malformed weight vector: " + item);
        Weight w;
        std::stringstream ws(item.substr(0, colon));
        std::string ent;
        while (std::getline(ws, ent, ',')) w.push_back(std::stoi(ent));
        v[w] = Int(item.substr(colon + 1));
    }
    return v;
}

namespace {

Weight strip_zeros(Weight w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
    return w;
}

void require_dominant(const Weight& w, const char* what) {
    if (!is_dominant(w))
        throw PreconditionViolation(std::string(what) + " is not weakly decreasing: " +
                                    weight_str(w));
}

/* Tableau enumeration for s_lambda * s_mu in GL(nvars): letters of mu are
 * placed as horizontal strips subject to column strictness and the ballot
 * condition (letter i count in rows <= r bounded by letter i-1 count in rows
 * <= r-1).  Shapes never grow past nvars rows. */
struct LrEnum {
    int nvars;
    std::vector<int> mu;
    SchurVector out;

    struct LetterState {
        std::vector<int> shape;
        std::vector<int> prev_pref;  // prev_pref[r]: previous-letter boxes in rows < r
    };

    void run(const Weight& lambda) {
        LetterState st;
        st.shape = lambda;
        st.shape.resize(nvars, 0);
        st.prev_pref.assign(nvars + 1, 0);
        place_letter(0, st);
    }

    void place_letter(size_t li, const LetterState& st) {
        if (li == mu.size()) {
            out[st.shape] += 1;
            return;
        }
        std::vector<int> shape = st.shape;
        std::vector<int> counts(nvars, 0);
        place_row(li, st, 0, mu[li], 0, shape, counts);
    }

    void place_row(size_t li, const LetterState& st, int r, int remaining, int cum,
                   std::vector<int>& shape, std::vector<int>& counts) {
        if (r == nvars) {
            if (remaining != 0) return;
            LetterState next;
            next.shape = shape;
            next.prev_pref.assign(nvars + 1, 0);
            for (int i = 0; i < nvars; ++i)
                next.prev_pref[i + 1] = next.prev_pref[i] + counts[i];
            place_letter(li + 1, next);
            return;
        }
        int cap = remaining;
        if (r > 0) cap = std::min(cap, st.shape[r - 1] - st.shape[r]);
        if (li > 0) cap = std::min(cap, st.prev_pref[r] - cum);
        for (int a = 0; a <= cap; ++a) {
            shape[r] += a;
            counts[r] = a;
            place_row(li, st, r + 1, remaining - a, cum + a, shape, counts);
            shape[r] -= a;
            counts[r] = 0;
        }
    }
};

/* Partition product core: inputs are nonnegative partitions. */
SchurVector lr_core(const Weight& a, const Weight& b, int nvars) {
    LrEnum e;
    e.nvars = nvars;
    e.mu = strip_zeros(b);
    e.run(a);
    return e.out;
}

struct Shifted {
    Weight part;  // nonnegative partition, padded to nvars
    int shift;
};

Shifted det_shift(const Weight& w, int nvars, const char* what) {
    Weight p = padded(w, nvars);
    require_dominant(p, what);
    int sh = p.empty() ? 0 : std::max(0, -p.back());
    for (int& e : p) e += sh;
    return {p, sh};
}

SchurVector unshift(SchurVector v, int total_shift) {
    if (total_shift == 0) return v;
    SchurVector out;
    for (auto& [w, c] : v) {
        Weight nw = w;
        for (int& e : nw) e -= total_shift;
        out[nw] = c;
    }
    return out;
}

}  // namespace

SchurVector lr_product_uncached(const Weight& a, const Weight& b, int nvars) {
    if (nvars <= 0) throw PreconditionViolation("nvars must be positive");
    Shifted sa = det_shift(a, nvars, "first factor");
    Shifted sb = det_shift(b, nvars, "second factor");
    return unshift(lr_core(sa.part, sb.part, nvars), sa.shift + sb.shift);
}

SchurVector lr_product(const Weight& a, const Weight& b, int nvars) {
    const std::string key = "lr|n=" + std::to_string(nvars) + "|a=" + weight_str(a) +
                            "|b=" + weight_str(b);
    if (auto hit = cache::get(key)) return schurvec_parse(*hit);
    SchurVector v = lr_product_uncached(a, b, nvars);
    cache::put(key, schurvec_str(v));
    return v;
}

namespace {

using MonoKey = std::vector<int>;

std::map<std::pair<Weight, int>, MonoMap>& mono_memo() {
    static std::map<std::pair<Weight, int>, MonoMap> memo;
    return memo;
}
std::mutex& mono_mutex() {
    static std::mutex mu;
    return mu;
}

MonoMap schur_monomials_rec(const Weight& lambda, int nvars) {
    {
        std::lock_guard<std::mutex> lock(mono_mutex());
        auto it = mono_memo().find({lambda, nvars});
        if (it != mono_memo().end()) return it->second;
    }
    MonoMap out;
    if (nvars == 0) {
        if (lambda.empty()) out[{}] = 1;
        return out;
    }
    Weight lp = lambda;
    lp.resize(nvars, 0);
    if (nvars == 1) {
        out[{lp[0]}] = 1;
    } else {
        // Branch over interlacing weights for the last variable.
        std::vector<int> mu(nvars - 1, 0);
        int total = 0;
        for (int e : lp) total += e;
        std::function<void(int, int)> rec = [&](int i, int musum) {
            if (i == nvars - 1) {
                MonoMap sub = schur_monomials_rec(strip_zeros(mu), nvars - 1);
                int last = total - musum;
                for (const auto& [exp, c] : sub) {
                    MonoKey k = exp;
                    k.resize(nvars - 1, 0);
                    k.push_back(last);
                    out[k] += c;
                }
                return;
            }
            for (int v = lp[i + 1]; v <= lp[i]; ++v) {
                mu[i] = v;
                rec(i + 1, musum + v);
            }
        };
        rec(0, 0);
    }
    std::lock_guard<std::mutex> lock(mono_mutex());
    mono_memo()[{lambda, nvars}] = out;
    return out;
}

}  // namespace

MonoMap schur_monomials(const Weight& partition, int nvars) {
    Weight p = strip_zeros(partition);
    require_dominant(p, "partition");
    if (!p.empty() && p.back() < 0)
        throw PreconditionViolation("partition has negative entries: " + weight_str(p));
    if (static_cast<int>(p.size()) > nvars) return {};
    return schur_monomials_rec(p, nvars);
}

SchurVector schur_expand(const MonoMap& p, int nvars) {
    for (const auto& [exp, c] : p) {
        if (static_cast<int>(exp.size()) != nvars)
            throw PreconditionViolation("monomial arity mismatch");
        for (int e : exp)
            if (e < 0) throw PreconditionViolation("negative exponent in monomial");
        MonoKey sorted = exp;
        std::sort(sorted.rbegin(), sorted.rend());
        auto it = p.find(sorted);
        if (it == p.end() || it->second != c)
            throw NotSymmetric("coefficient of " + weight_str(exp) +
                               " differs from its sorted orbit representative");
    }
    MonoMap work = p;
    SchurVector out;
    const long bound = std::max<long>(16, static_cast<long>(p.size()) * static_cast<long>(p.size()));
    long steps = 0;
    while (!work.empty()) {
        auto it = work.begin();
        if (it->second == 0) {
            work.erase(it);
            continue;
        }
        if (++steps > bound)
            throw NotSymmetric("expansion exceeded the iteration bound");
        Weight lambda = it->first;
        if (!is_dominant(lambda))
            throw NotSymmetric("leading monomial " + weight_str(lambda) + " is not a partition");
        Int c = it->second;
        out[lambda] += c;
        for (const auto& [exp, mc] : schur_monomials(lambda, nvars)) {
            auto jt = work.find(exp);
            Int nv = (jt == work.end() ? Int(0) : jt->second) - c * mc;
            if (nv == 0) {
                if (jt != work.end()) work.erase(jt);
            } else {
                work[exp] = nv;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

SchurVector lr_product_oracle(const Weight& a, const Weight& b, int nvars) {
    if (nvars <= 0) throw PreconditionViolation("nvars must be positive");
    Shifted sa = det_shift(a, nvars, "first factor");
    Shifted sb = det_shift(b, nvars, "second factor");
    MonoMap ma = schur_monomials(sa.part, nvars);
    MonoMap mb = schur_monomials(sb.part, nvars);
    MonoMap prod;
    for (const auto& [ea, ca] : ma)
        for (const auto& [eb, cb] : mb) {
            MonoKey k(nvars);
            for (int i = 0; i < nvars; ++i) k[i] = ea[i] + eb[i];
            prod[k] += ca * cb;
        }
    return unshift(schur_expand(prod, nvars), sa.shift + sb.shift);
}

SchurVector wedge_of_sym(int k, int d, int nvars) {
    if (k < 0 || d < 0 || nvars <= 0)
        throw PreconditionViolation("wedge_of_sym arguments must be nonnegative with nvars > 0");
    std::vector<MonoKey> monos;
    MonoKey cur(nvars, 0);
    std::function<void(int, int)> gen = [&](int i, int rem) {
        if (i == nvars - 1) {
            cur[i] = rem;
            monos.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[i] = v;
            gen(i + 1, rem - v);
        }
    };
    gen(0, d);
    const int m = static_cast<int>(monos.size());
    if (k > m) return {};
    MonoMap acc;
    MonoKey sum(nvars, 0);
    std::function<void(int, int)> choose = [&](int idx, int left) {
        if (left == 0) {
            acc[sum] += 1;
            return;
        }
        if (m - idx < left) return;
        for (int i = idx; i <= m - left; ++i) {
            for (int j = 0; j < nvars; ++j) sum[j] += monos[i][j];
            choose(i + 1, left - 1);
            for (int j = 0; j < nvars; ++j) sum[j] -= monos[i][j];
        }
    };
    choose(0, k);
    return schur_expand(acc, nvars);
}

Int weyl_dim(const Weight& xi, int n) {
    Weight w = padded(xi, n);
    require_dominant(w, "highest weight");
    Int num = 1, den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= w[i] - w[j] + j - i;
            den *= j - i;
        }
    return num / den;
}

void SymPoly::add_term(const std::vector<int>& exp, const Rat& c) {
    if (exp.size() != symbols.size())
        throw PreconditionViolation("term arity does not match symbol table");
    auto it = terms.find(exp);
    Rat nv = (it == terms.end() ? Rat(0) : it->second) + c;
    if (nv == 0) {
        if (it != terms.end()) terms.erase(it);
    } else {
        terms[exp] = nv;
    }
}

SymPoly SymPoly::operator*(const SymPoly& other) const {
    SymPoly out(symbols);
    const size_t n = symbols.size();
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : other.terms) {
            std::vector<int> k(n);
            for (size_t i = 0; i < n; ++i) k[i] = ea[i] + eb[i];
            out.add_term(k, ca * cb);
        }
    return out;
}

SymPoly SymPoly::operator+(const SymPoly& other) const {
    SymPoly out = *this;
    for (const auto& [e, c] : other.terms) out.add_term(e, c);
    return out;
}

SymPoly SymPoly::operator-(const SymPoly& other) const {
    SymPoly out = *this;
    for (const auto& [e, c] : other.terms) out.add_term(e, -c);
    return out;
}

bool SymPoly::operator==(const SymPoly& other) const { return terms == other.terms; }

SymPoly SymPoly::constant(std::vector<Symbol> syms, const Rat& c) {
    SymPoly p(std::move(syms));
    if (c != 0) p.terms[std::vector<int>(p.symbols.size(), 0)] = c;
    return p;
}

SymPoly SymPoly::variable(std::vector<Symbol> syms, int slot) {
    SymPoly p(std::move(syms));
    std::vector<int> e(p.symbols.size(), 0);
    e.at(slot) = 1;
    p.terms[e] = 1;
    return p;
}

namespace {

/* Orders terms by alphabet projection (lex descending), then full key. */
struct AlphaCmp {
    int first, count;
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        for (int i = 0; i < count; ++i) {
            int x = a[first + i], y = b[first + i];
            if (x != y) return x > y;
        }
        return a > b;
    }
};

}  // namespace

SymPoly elementary_reduce(const SymPoly& p, int alpha_first, int alpha_count, int gen_first) {
    const int n = static_cast<int>(p.symbols.size());
    if (alpha_first < 0 || alpha_count <= 0 || alpha_first + alpha_count > n ||
        gen_first < 0 || gen_first + alpha_count > n)
        throw PreconditionViolation("alphabet or generator slots out of range");
    if (std::max(alpha_first, gen_first) < std::min(alpha_first + alpha_count, gen_first + alpha_count))
        throw PreconditionViolation("alphabet and generator slots overlap");

    // Subset expansions of e_i over the alphabet slots, computed on demand.
    std::vector<std::vector<std::vector<int>>> elem(alpha_count + 1);
    auto elem_terms = [&](int i) -> const std::vector<std::vector<int>>& {
        if (elem[i].empty() && i > 0) {
            std::vector<int> pick;
            std::function<void(int)> rec = [&](int from) {
                if (static_cast<int>(pick.size()) == i) {
                    std::vector<int> e(n, 0);
                    for (int s : pick) e[alpha_first + s] = 1;
                    elem[i].push_back(e);
                    return;
                }
                for (int s = from; s <= alpha_count - (i - static_cast<int>(pick.size())); ++s) {
                    pick.push_back(s);
                    rec(s + 1);
                    pick.pop_back();
                }
            };
            rec(0);
        }
        return elem[i];
    };

    using Work = std::map<std::vector<int>, Rat, AlphaCmp>;
    Work work(AlphaCmp{alpha_first, alpha_count});
    for (const auto& [e, c] : p.terms) work[e] = c;

    SymPoly out(p.symbols);
    long guard = 0;
    while (!work.empty()) {
        if (++guard > 2000000)
            throw NotSymmetric("elementary reduction exceeded the iteration bound");
        std::vector<int> alpha(alpha_count);
        for (int i = 0; i < alpha_count; ++i) alpha[i] = work.begin()->first[alpha_first + i];
        for (size_t i = 1; i < alpha.size(); ++i)
            if (alpha[i - 1] < alpha[i])
                throw NotSymmetric("leading alphabet exponent " + weight_str(alpha) +
                                   " is not a partition");
        // Collect the leading group.
        std::vector<std::pair<std::vector<int>, Rat>> group;
        for (auto it = work.begin(); it != work.end();) {
            bool same = true;
            for (int i = 0; i < alpha_count; ++i)
                if (it->first[alpha_first + i] != alpha[i]) { same = false; break; }
            if (!same) break;
            group.emplace_back(it->first, it->second);
            it = work.erase(it);
        }
        // Emit q * prod(gen_i^{delta_i}) and subtract q * (prod e_i^{delta_i} - alpha).
        std::vector<int> delta(alpha_count);
        for (int i = 0; i < alpha_count; ++i)
            delta[i] = alpha[i] - (i + 1 < alpha_count ? alpha[i + 1] : 0);
        std::map<std::vector<int>, Rat> expansion;
        expansion[std::vector<int>(n, 0)] = 1;
        for (int i = 1; i <= alpha_count; ++i)
            for (int rep = 0; rep < delta[i - 1]; ++rep) {
                std::map<std::vector<int>, Rat> next;
                for (const auto& [e, c] : expansion)
                    for (const auto& f : elem_terms(i)) {
                        std::vector<int> k(n);
                        for (int s = 0; s < n; ++s) k[s] = e[s] + f[s];
                        next[k] += c;
                    }
                expansion = std::move(next);
            }
        for (auto& [qe, qc] : group) {
            std::vector<int> base = qe;
            for (int i = 0; i < alpha_count; ++i) base[alpha_first + i] = 0;
            std::vector<int> gexp = base;
            for (int i = 0; i < alpha_count; ++i) gexp[gen_first + i] += delta[i];
            out.add_term(gexp, qc);
            for (const auto& [ee, ec] : expansion) {
                std::vector<int> k(n);
                for (int s = 0; s < n; ++s) k[s] = base[s] + ee[s];
                bool is_alpha_itself = true;
                for (int i = 0; i < alpha_count; ++i)
                    if (ee[alpha_first + i] != alpha[i]) { is_alpha_itself = false; break; }
                if (is_alpha_itself) continue;  // already erased with the group
                auto it = work.find(k);
                Rat nv = (it == work.end() ? Rat(0) : it->second) - qc * ec;
                if (nv == 0) {
                    if (it != work.end()) work.erase(it);
                } else {
                    work[k] = nv;
                }
            }
        }
    }
    return out;
}

}  // namespace grasscalc::symfunc
