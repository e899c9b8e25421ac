/* Schubert calculus on Gr(k, N). */
#include "grasscalc/grassmann.hpp"

#include <algorithm>

namespace grasscalc::grassmann {

using symfunc::SchurVector;
using symfunc::Weight;

namespace {

void validate(const GrassSpec& g) {
    if (g.k < 1 || g.N <= g.k)
        throw PreconditionViolation("grassmannian requires 0 < k < N");
}

bool in_box(const Weight& w, const GrassSpec& g) {
    return w.empty() || w.front() <= g.cols();
}

}  // namespace

SchurClass schur_one(const GrassSpec& g) {
    validate(g);
    SchurClass r;
    r[Weight(g.k, 0)] = 1;
    return r;
}

SchurClass box_truncate(const SchurVector& v, const GrassSpec& g) {
    validate(g);
    SchurClass r;
    for (const auto& [w, c] : v) {
        if (c == 0) continue;
        Weight p = symfunc::padded(w, g.k);  // throws when the length exceeds k
        if (!in_box(p, g)) continue;
        if (p.back() < 0) throw PreconditionViolation("schur class with negative row");
        r[p] += c;
        if (r[p] == 0) r.erase(p);
    }
    return r;
}

SchurClass mul_truncated(const SchurClass& a, const Weight& w, const GrassSpec& g) {
    validate(g);
    SchurClass r;
    for (const auto& [u, c] : a) {
        for (const auto& [v, m] : symfunc::lr_product(u, w, g.k)) {
            if (!in_box(v, g)) continue;
            Weight p = v;
            r[p] += c * m;
            if (r[p] == 0) r.erase(p);
        }
    }
    return r;
}

SchurClass to_schur(const GrassSpec& g, const std::vector<int>& c_exp,
                    const std::vector<int>& d_exp) {
    validate(g);
    for (size_t i = 0; i < c_exp.size(); ++i)
        if (c_exp[i] != 0 && static_cast<int>(i) >= g.k)
            throw GeneratorOutOfRange("subbundle chern index " + std::to_string(i + 1) +
                                      " exceeds rank " + std::to_string(g.k));
    for (size_t j = 0; j < d_exp.size(); ++j)
        if (d_exp[j] != 0 && static_cast<int>(j) >= g.cols())
            throw GeneratorOutOfRange("quotient chern index " + std::to_string(j + 1) +
                                      " exceeds rank " + std::to_string(g.cols()));

    SchurClass acc = schur_one(g);
    for (size_t i = 0; i < c_exp.size(); ++i) {
        if (c_exp[i] < 0) throw PreconditionViolation("negative chern exponent");
        Weight col(i + 1, 1);
        for (int e = 0; e < c_exp[i]; ++e) acc = mul_truncated(acc, col, g);
    }
    for (size_t j = 0; j < d_exp.size(); ++j) {
        if (d_exp[j] < 0) throw PreconditionViolation("negative chern exponent");
        Weight row{static_cast<int>(j + 1)};
        for (int e = 0; e < d_exp[j]; ++e) acc = mul_truncated(acc, row, g);
    }
    return acc;
}

Int degree(const SchurClass& v, const GrassSpec& g) {
    validate(g);
    Weight box(g.k, g.cols());
    auto it = v.find(box);
    return it == v.end() ? Int(0) : it->second;
}

chowring::GradedClass pushforward_to_x(const chowring::GradedClass& mixed, const GrassSpec& g,
                                       const std::vector<SlotRole>& roles) {
    validate(g);
    if (roles.size() != mixed.gens.size())
        throw PreconditionViolation("slot roles do not match generator table");
    for (const auto& role : roles) {
        if (role.kind == SlotRole::SubDualChern && (role.index < 1 || role.index > g.k))
            throw GeneratorOutOfRange("subbundle chern index " + std::to_string(role.index) +
                                      " exceeds rank " + std::to_string(g.k));
        if (role.kind == SlotRole::QuotChern && (role.index < 1 || role.index > g.cols()))
            throw GeneratorOutOfRange("quotient chern index " + std::to_string(role.index) +
                                      " exceeds rank " + std::to_string(g.cols()));
    }

    std::vector<chowring::Generator> xgens;
    std::vector<int> xslot(roles.size(), -1);
    for (size_t i = 0; i < roles.size(); ++i) {
        if (roles[i].kind == SlotRole::XPart) {
            xslot[i] = static_cast<int>(xgens.size());
            xgens.push_back(mixed.gens[i]);
        }
    }

    chowring::GradedClass out{xgens};
    std::map<std::pair<std::vector<int>, std::vector<int>>, Int> memo;
    for (const auto& [e, coeff] : mixed.terms) {
        std::vector<int> c_exp(g.k, 0), d_exp(g.cols(), 0), xe(xgens.size(), 0);
        long fdeg = 0;
        for (size_t i = 0; i < roles.size(); ++i) {
            if (e[i] == 0) continue;
            switch (roles[i].kind) {
                case SlotRole::XPart:
                    xe[xslot[i]] = e[i];
                    break;
                case SlotRole::SubDualChern:
                    c_exp[roles[i].index - 1] += e[i];
                    fdeg += static_cast<long>(roles[i].index) * e[i];
                    break;
                case SlotRole::QuotChern:
                    d_exp[roles[i].index - 1] += e[i];
                    fdeg += static_cast<long>(roles[i].index) * e[i];
                    break;
            }
        }
        if (fdeg != g.dim()) continue;
        auto key = std::make_pair(c_exp, d_exp);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, degree(to_schur(g, c_exp, d_exp), g)).first;
        if (it->second != 0) out.add_term(xe, coeff * Rat(it->second));
    }
    return out;
}

}  // namespace grasscalc::grassmann
