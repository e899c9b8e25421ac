/* Graded exact-coefficient classes and Chern/Segre constructions. */
#include "grasscalc/chowring.hpp"

#include <algorithm>
#include <sstream>

namespace grasscalc::chowring {

namespace {

std::vector<int> zero_exp(size_t n) { return std::vector<int>(n, 0); }

/* In-place multiply of a symmetric-function polynomial by (1 + sum of the
 * listed unit monomials), dropping terms whose total degree over the slots
 * [0, alpha_count) exceeds alpha_bound when alpha_bound >= 0. */
void mul_linear_root(std::map<std::vector<int>, Rat>& terms, const std::vector<int>& slots,
                     int alpha_count, int alpha_bound) {
    std::map<std::vector<int>, Rat> out = terms;
    for (const auto& [e, c] : terms) {
        for (int s : slots) {
            std::vector<int> ne = e;
            ne[s] += 1;
            if (alpha_bound >= 0) {
                int deg = 0;
                for (int i = 0; i < alpha_count; ++i) deg += ne[i];
                if (deg > alpha_bound) continue;
            }
            Rat& slot = out[ne];
            slot += c;
            if (slot == 0) out.erase(ne);
        }
    }
    terms = std::move(out);
}

}  // namespace

int GradedClass::term_degree(const std::vector<int>& exp) const {
    int d = 0;
    for (size_t i = 0; i < gens.size(); ++i) d += exp[i] * gens[i].degree;
    return d;
}

bool GradedClass::keep(const std::vector<int>& exp) const {
    if (total_cutoff >= 0 && term_degree(exp) > total_cutoff) return false;
    for (const auto& cut : subset_cutoffs) {
        int d = 0;
        for (size_t i = 0; i < gens.size(); ++i)
            if (cut.member[i]) d += exp[i] * gens[i].degree;
        if (d > cut.bound) return false;
    }
    return true;
}

void GradedClass::add_term(const std::vector<int>& exp, const Rat& c) {
    if (exp.size() != gens.size())
        throw PreconditionViolation("class term arity does not match generator table");
    if (c == 0 || !keep(exp)) return;
    Rat& slot = terms[exp];
    slot += c;
    if (slot == 0) terms.erase(exp);
}

Rat GradedClass::coefficient(const std::vector<int>& exp) const {
    auto it = terms.find(exp);
    return it == terms.end() ? Rat(0) : it->second;
}

GradedClass GradedClass::like() const {
    GradedClass r = *this;
    r.terms.clear();
    return r;
}

GradedClass GradedClass::one(std::vector<Generator> g, int cutoff) {
    GradedClass r(std::move(g), cutoff);
    r.terms[zero_exp(r.gens.size())] = 1;
    return r;
}

GradedClass GradedClass::var(std::vector<Generator> g, int slot, int cutoff) {
    GradedClass r(std::move(g), cutoff);
    std::vector<int> e = zero_exp(r.gens.size());
    e[slot] = 1;
    r.add_term(e, 1);
    return r;
}

GradedClass GradedClass::operator+(const GradedClass& o) const {
    GradedClass r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
}

GradedClass GradedClass::operator-(const GradedClass& o) const {
    GradedClass r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
}

GradedClass GradedClass::operator*(const GradedClass& o) const {
    GradedClass r = like();
    for (const auto& [e1, c1] : terms)
        for (const auto& [e2, c2] : o.terms) {
            std::vector<int> e = e1;
            for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

GradedClass GradedClass::operator*(const Rat& s) const {
    GradedClass r = like();
    for (const auto& [e, c] : terms) r.add_term(e, c * s);
    return r;
}

GradedClass GradedClass::pow(int e) const {
    if (e < 0) throw PreconditionViolation("negative class power");
    GradedClass r = one(gens, total_cutoff);
    r.subset_cutoffs = subset_cutoffs;
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

GradedClass GradedClass::graded_piece(int d) const {
    GradedClass r = like();
    for (const auto& [e, c] : terms)
        if (term_degree(e) == d) r.add_term(e, c);
    return r;
}

GradedClass GradedClass::inverse() const {
    if (total_cutoff < 0)
        throw PreconditionViolation("series inverse requires a finite degree cutoff");
    auto z = zero_exp(gens.size());
    auto it = terms.find(z);
    if (it == terms.end() || it->second != 1)
        throw PreconditionViolation("series inverse requires constant term 1");
    GradedClass u = *this;
    u.terms.erase(z);
    GradedClass acc = like();
    acc.terms[z] = 1;
    GradedClass p = acc;
    for (int j = 1; j <= total_cutoff && !p.terms.empty(); ++j) {
        p = p * u;
        if (j % 2 == 1)
            acc = acc - p;
        else
            acc = acc + p;
    }
    return acc;
}

std::string GradedClass::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        Rat c = it->second;
        bool neg = c < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        Rat a = neg ? Rat(-c) : c;
        std::string mono;
        for (size_t i = 0; i < gens.size(); ++i) {
            int e = it->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += ' ';
            mono += gens[i].name;
            if (e > 1) mono += '^' + std::to_string(e);
        }
        if (mono.empty()) {
            os << a;
        } else {
            if (a != 1) os << a << ' ';
            os << mono;
        }
    }
    return os.str();
}

GradedClass from_sympoly(const symfunc::SymPoly& p, const std::vector<int>& slot_map,
                         GradedClass target_shape) {
    if (slot_map.size() != p.symbols.size())
        throw PreconditionViolation("slot map arity does not match polynomial");
    GradedClass r = target_shape.like();
    for (const auto& [e, c] : p.terms) {
        std::vector<int> ne = zero_exp(r.gens.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (slot_map[i] < 0)
                throw PreconditionViolation("unreduced symbol " + p.symbols[i].name +
                                            " in class conversion");
            ne[slot_map[i]] += e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

GradedClass embed(const GradedClass& src, const std::vector<int>& gen_map,
                  GradedClass target_shape) {
    if (gen_map.size() != src.gens.size())
        throw PreconditionViolation("generator map arity does not match class");
    GradedClass r = target_shape.like();
    for (const auto& [e, c] : src.terms) {
        std::vector<int> ne = zero_exp(r.gens.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (gen_map[i] < 0)
                throw PreconditionViolation("generator " + src.gens[i].name +
                                            " has no image in target table");
            ne[gen_map[i]] += e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

FormalBundle line_bundle(const GradedClass& c1) {
    FormalBundle b;
    b.rank = 1;
    b.total_chern = GradedClass::one(c1.gens, c1.total_cutoff);
    b.total_chern.subset_cutoffs = c1.subset_cutoffs;
    for (const auto& [e, c] : c1.terms) b.total_chern.add_term(e, c);
    return b;
}

FormalBundle direct_sum(const FormalBundle& a, const FormalBundle& b) {
    return FormalBundle{a.rank + b.rank, a.total_chern * b.total_chern};
}

FormalBundle line_power_sum(const GradedClass& h, const std::vector<std::pair<int, int>>& parts) {
    FormalBundle b;
    b.rank = 0;
    b.total_chern = GradedClass::one(h.gens, h.total_cutoff);
    b.total_chern.subset_cutoffs = h.subset_cutoffs;
    for (const auto& [mult, count] : parts) {
        FormalBundle line = line_bundle(h * Rat(mult));
        for (int i = 0; i < count; ++i) b = direct_sum(b, line);
    }
    return b;
}

GradedClass chern_piece(const FormalBundle& b, int k) { return b.total_chern.graded_piece(k); }

GradedClass segre_series(const FormalBundle& b) { return b.total_chern.inverse(); }

std::vector<GradedClass> chern_of_sym(int k, int rank, int up_to_degree) {
    if (k != 2 && k != 3) throw PreconditionViolation("symmetric power must be 2 or 3");
    if (rank < 1 || rank > 7) throw PreconditionViolation("symmetric power rank out of range");

    std::vector<symfunc::Symbol> syms;
    for (int i = 1; i <= rank; ++i) syms.push_back({"x" + std::to_string(i), 1});
    for (int i = 1; i <= rank; ++i) syms.push_back({"c" + std::to_string(i), i});

    std::vector<std::vector<int>> roots;
    for (int i = 0; i < rank; ++i)
        for (int j = i; j < rank; ++j) {
            if (k == 2) {
                roots.push_back({i, j});
            } else {
                for (int l = j; l < rank; ++l) roots.push_back({i, j, l});
            }
        }

    std::map<std::vector<int>, Rat> terms;
    terms[zero_exp(syms.size())] = 1;
    for (const auto& root : roots) mul_linear_root(terms, root, rank, up_to_degree);

    symfunc::SymPoly p(syms);
    p.terms = std::move(terms);
    symfunc::SymPoly reduced = symfunc::elementary_reduce(p, 0, rank, rank);

    std::vector<Generator> gens;
    for (int i = 1; i <= rank; ++i) gens.push_back({"c" + std::to_string(i), i});
    std::vector<int> slot_map(2 * rank, -1);
    for (int i = 0; i < rank; ++i) slot_map[rank + i] = i;
    GradedClass total =
        from_sympoly(reduced, slot_map, GradedClass(gens, up_to_degree));

    int srank = static_cast<int>(binomial(rank + k - 1, k).convert_to<long long>());
    int top = up_to_degree >= 0 ? std::min(srank, up_to_degree) : srank;
    std::vector<GradedClass> pieces;
    for (int d = 0; d <= top; ++d) pieces.push_back(total.graded_piece(d));
    return pieces;
}

GradedClass euler_tensor(int a, int b, int c_cutoff) {
    if (a < 1 || b < 1) throw PreconditionViolation("tensor factors must have positive rank");

    std::vector<symfunc::Symbol> syms;
    for (int i = 1; i <= a; ++i) syms.push_back({"l" + std::to_string(i), 1});
    for (int j = 1; j <= b; ++j) syms.push_back({"m" + std::to_string(j), 1});
    for (int i = 1; i <= a; ++i) syms.push_back({"c" + std::to_string(i), i});
    for (int j = 1; j <= b; ++j) syms.push_back({"d" + std::to_string(j), j});

    /* Product of (l_i + m_j); terms with l-degree above the cutoff reduce to
     * c-monomials above the cutoff, so they can be dropped as we go. */
    std::map<std::vector<int>, Rat> terms;
    terms[zero_exp(syms.size())] = 1;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            std::map<std::vector<int>, Rat> out;
            for (const auto& [e, c] : terms) {
                for (int s : {i, a + j}) {
                    std::vector<int> ne = e;
                    ne[s] += 1;
                    if (c_cutoff >= 0 && s < a) {
                        int ldeg = 0;
                        for (int t = 0; t < a; ++t) ldeg += ne[t];
                        if (ldeg > c_cutoff) continue;
                    }
                    Rat& slot = out[ne];
                    slot += c;
                    if (slot == 0) out.erase(ne);
                }
            }
            terms = std::move(out);
        }

    symfunc::SymPoly p(syms);
    p.terms = std::move(terms);
    symfunc::SymPoly q = symfunc::elementary_reduce(p, a, b, a + b + a);
    symfunc::SymPoly reduced = symfunc::elementary_reduce(q, 0, a, a + b);

    std::vector<Generator> gens;
    for (int i = 1; i <= a; ++i) gens.push_back({"c" + std::to_string(i), i});
    for (int j = 1; j <= b; ++j) gens.push_back({"d" + std::to_string(j), j});
    GradedClass shape = GradedClass(gens, -1);
    if (c_cutoff >= 0) {
        SubsetCutoff cut;
        cut.member.assign(gens.size(), 0);
        for (int i = 0; i < a; ++i) cut.member[i] = 1;
        cut.bound = c_cutoff;
        shape.subset_cutoffs.push_back(cut);
    }
    std::vector<int> slot_map(2 * (a + b), -1);
    for (int i = 0; i < a + b; ++i) slot_map[a + b + i] = i;
    return from_sympoly(reduced, slot_map, shape);
}

GradedClass euler_line_twist(const GradedClass& line_c1, const std::vector<GradedClass>& pieces) {
    if (pieces.empty()) throw PreconditionViolation("twist of a rank-zero bundle");
    int s = static_cast<int>(pieces.size()) - 1;
    GradedClass acc = pieces[s];
    GradedClass lp = line_c1;
    for (int i = 1; i <= s; ++i) {
        acc = acc + lp * pieces[s - i];
        if (i < s) lp = lp * line_c1;
    }
    return acc;
}

GradedClass porteous_ind0(int r) {
    if (r < 1) throw PreconditionViolation("plane dimension must be at least 1");
    int rank = r + 1;
    std::vector<Generator> gens{{"c1", 1}, {"c2", 2}};
    GradedClass ce = GradedClass::one(gens, 2);
    ce.add_term({1, 0}, 1);
    ce.add_term({0, 1}, 1);

    std::vector<GradedClass> sym = chern_of_sym(2, rank, 2);
    GradedClass cs = GradedClass::one(gens, 2);
    for (size_t d = 1; d < sym.size(); ++d) {
        std::vector<int> gmap(sym[d].gens.size(), -1);
        gmap[0] = 0;
        if (gmap.size() > 1) gmap[1] = 1;
        GradedClass piece = embed(sym[d], gmap, GradedClass(gens, 2));
        /* Dual bundle: the Chern roots flip sign. */
        cs = (d % 2 == 1) ? cs - piece : cs + piece;
    }
    return (ce * cs).inverse().graded_piece(2);
}

}  // namespace grasscalc::chowring
