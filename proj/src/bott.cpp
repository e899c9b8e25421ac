/* Homogeneous-bundle cohomology and Koszul first-page assembly. */
#include "grasscalc/bott.hpp"

#include <algorithm>
#include <sstream>

namespace grasscalc::bott {

using symfunc::SchurVector;
using symfunc::Weight;

long FanoSpec::section_rank() const {
    return binomial(r + 3, 3).convert_to<long>();
}

FanoSpec fano_spec(int r) {
    if (r < 0) throw PreconditionViolation("plane dimension must be nonnegative");
    FanoSpec s;
    s.r = r;
    s.n = binomial(r + 3, 2).convert_to<int>() - 1;
    return s;
}

namespace {

Weight require_dominant_padded(const Weight& w, int len, const char* what) {
    Weight p = symfunc::padded(w, len);
    if (!symfunc::is_dominant(p))
        throw PreconditionViolation(std::string(what) + " weight is not dominant");
    return p;
}

std::string cell_name(int k, int j) {
    return "E1(-" + std::to_string(k) + "," + std::to_string(j) + ")";
}

}  // namespace

BottResult bott_cohomology(int N, int k, const Weight& lambda_q, const Weight& lambda_e) {
    if (k < 1 || N <= k) throw PreconditionViolation("grassmannian requires 0 < k < N");
    Weight lq = require_dominant_padded(lambda_q, N - k, "quotient");
    Weight le = require_dominant_padded(lambda_e, k, "subbundle");

    std::vector<long> mu(N);
    for (int i = 0; i < N - k; ++i) mu[i] = lq[i] - (i + 1);
    for (int i = 0; i < k; ++i) mu[N - k + i] = le[i] - (N - k + i + 1);

    std::vector<long> sorted = mu;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (int i = 0; i + 1 < N; ++i)
        if (sorted[i] == sorted[i + 1]) return BottResult{};

    int q = 0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (mu[i] < mu[j]) ++q;

    BottResult res;
    res.vanishing = false;
    res.q = q;
    res.xi.resize(N);
    for (int i = 0; i < N; ++i) res.xi[i] = static_cast<int>(sorted[i] + i + 1);
    res.dim = symfunc::weyl_dim(res.xi, N);
    return res;
}

BundleFactor bundle_by_name(const FanoSpec& spec, const std::string& name) {
    const int k = spec.k(), q = spec.qrank();
    BundleFactor b;
    b.name = name;
    b.qweight.assign(q, 0);
    if (name == "sym3e") {
        Weight w(k, 0);
        w[0] = 3;
        b.eparts[w] = 1;
    } else if (name == "sym3e-dual") {
        Weight w(k, 0);
        w[k - 1] = -3;
        b.eparts[w] = 1;
    } else if (name == "e-qdual") {
        b.qweight[q - 1] = -1;
        Weight w(k, 0);
        w[0] = 1;
        b.eparts[w] = 1;
    } else if (name == "edual-q") {
        b.qweight[0] = 1;
        Weight w(k, 0);
        w[k - 1] = -1;
        b.eparts[w] = 1;
    } else {
        throw PreconditionViolation("unknown bundle name " + name +
                                    " (known: sym3e, sym3e-dual, e-qdual, edual-q)");
    }
    return b;
}

Int KoszulTable::euler() const {
    Int e = 0;
    for (const auto& [kj, cell] : cells) {
        int sign = ((kj.second - kj.first) % 2 + 2) % 2;
        e += sign == 0 ? cell.total : -cell.total;
    }
    return e;
}

KoszulTable koszul_e1_table(const FanoSpec& spec, const BundleFactor& bundle) {
    const int k = spec.k(), N = spec.N();
    const long srank = spec.section_rank();

    Int bundle_rank = 0;
    for (const auto& [ep, me] : bundle.eparts)
        bundle_rank += me * symfunc::weyl_dim(ep, k);
    Int qdim = symfunc::weyl_dim(bundle.qweight, spec.qrank());

    KoszulTable table;
    table.spec = spec;
    table.bundle = bundle.name;
    table.fibre_rank.assign(srank + 1, 0);

    for (long kw = 0; kw <= srank; ++kw) {
        Int fibre = 0;
        for (const auto& [w, mw] : symfunc::wedge_of_sym(static_cast<int>(kw), 3, k)) {
            for (const auto& [ep, me] : bundle.eparts) {
                for (const auto& [v, mv] : symfunc::lr_product(w, ep, k)) {
                    Int mult = mw * me * mv;
                    fibre += mult * symfunc::weyl_dim(v, k) * qdim;
                    BottResult br = bott_cohomology(N, k, bundle.qweight, v);
                    if (br.vanishing) continue;
                    KoszulCell& cell = table.cells[{static_cast<int>(kw), br.q}];
                    auto& part = cell.parts[br.xi];
                    part.first += mult;
                    part.second = br.dim;
                    cell.total += mult * br.dim;
                }
            }
        }
        if (fibre != binomial(srank, kw) * bundle_rank * qdim)
            throw PreconditionViolation("fibre rank mismatch in the resolution table");
        table.fibre_rank[kw] = fibre;
    }
    return table;
}

WindowReport verify_vanishing_window(const FanoSpec& spec, const std::string& window) {
    WindowReport rep;
    rep.window = window;
    std::string bundle_name;
    if (window == "alpha")
        bundle_name = "sym3e-dual";
    else if (window == "beta")
        bundle_name = "edual-q";
    else
        throw PreconditionViolation("unknown window " + window + " (known: alpha, beta)");
    rep.bundle = bundle_name;

    KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, bundle_name));
    const long dim_gr = spec.dim_gr();
    const long srank = spec.section_rank();

    for (long k = 0; k <= srank; ++k) {
        std::vector<int> forbidden;
        if (window == "alpha" && k >= 2)
            forbidden = {static_cast<int>(k) - 2, static_cast<int>(k) - 1, static_cast<int>(k)};
        if (window == "beta" && k >= 1)
            forbidden = {static_cast<int>(k) - 1, static_cast<int>(k), static_cast<int>(k) + 1};
        for (int j : forbidden) {
            if (j < 0 || j > dim_gr) continue;
            ++rep.cells_checked;
            auto it = table.cells.find({static_cast<int>(k), j});
            if (it != table.cells.end() && it->second.total != 0)
                rep.violations.push_back({static_cast<int>(k), j, it->second.total});
        }
    }

    if (window == "alpha") {
        for (int j : {0, 1}) {
            auto it = table.cells.find({1, j});
            rep.info_cells[{1, j}] = it == table.cells.end() ? Int(0) : it->second.total;
        }
    } else {
        auto it = table.cells.find({0, 0});
        rep.info_cells[{0, 0}] = it == table.cells.end() ? Int(0) : it->second.total;
    }
    return rep;
}

const std::map<int, Int>& SSReport::exact_values() const {
    if (!exact) {
        std::string degs;
        for (const auto& [d, range] : ranges)
            if (range.first != range.second) degs += (degs.empty() ? "" : ", ") + std::to_string(d);
        throw AmbiguousAssembly("abutment not determined without rank assumptions (degrees " +
                                degs + ")");
    }
    return values;
}

SSReport assemble_restriction(const KoszulTable& table, Policy policy) {
    SSReport rep;
    rep.policy = policy;
    rep.euler = table.euler();

    std::map<std::pair<int, int>, Int> cur;
    int maxk = 0;
    for (const auto& [kj, cell] : table.cells) {
        cur[kj] = cell.total;
        maxk = std::max(maxk, kj.first);
    }

    if (policy == Policy::MaximalRank) {
        for (int p = 1; p <= maxk; ++p) {
            std::map<std::pair<int, int>, Int> received, emitted;
            /* Sources in descending column order; incoming images consume
             * kernel capacity before the cell emits. */
            std::vector<std::pair<int, int>> keys;
            for (const auto& [kj, d] : cur)
                if (d > 0) keys.push_back(kj);
            std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
                return a.first != b.first ? a.first > b.first : a.second > b.second;
            });
            for (const auto& src : keys) {
                std::pair<int, int> tgt{src.first - p, src.second - p + 1};
                auto it = cur.find(tgt);
                if (it == cur.end() || it->second <= 0) continue;
                Int cap_src = cur[src] - received[src];
                Int cap_tgt = it->second - received[tgt];
                Int rank = std::min(cap_src, cap_tgt);
                if (rank <= 0) continue;
                emitted[src] += rank;
                received[tgt] += rank;
                std::ostringstream os;
                os << "page " << p << ": differential " << cell_name(src.first, src.second)
                   << " -> " << cell_name(tgt.first, tgt.second) << " taken with maximal rank "
                   << rank;
                rep.assumptions.push_back(os.str());
            }
            for (auto& [kj, d] : cur) d -= received[kj] + emitted[kj];
        }
        rep.exact = true;
        for (const auto& [kj, d] : cur) {
            if (d == 0) continue;
            rep.values[kj.second - kj.first] += d;
        }
        for (const auto& [deg, v] : rep.values) rep.ranges[deg] = {v, v};
        Int alt = 0;
        for (const auto& [deg, v] : rep.values) alt += deg % 2 == 0 ? v : -v;
        if (alt != rep.euler)
            throw PreconditionViolation("assembled limit does not match the euler number");
    } else {
        std::map<int, Int> lo, hi;
        bool all_points = true;
        for (const auto& [kj, d] : cur) {
            Int loss = 0;
            for (int p = 1; p <= maxk; ++p) {
                auto in = cur.find({kj.first + p, kj.second + p - 1});
                if (in != cur.end()) loss += std::min(d, in->second);
                auto out = cur.find({kj.first - p, kj.second - p + 1});
                if (out != cur.end()) loss += std::min(d, out->second);
            }
            Int lower = loss >= d ? Int(0) : d - loss;
            int deg = kj.second - kj.first;
            lo[deg] += lower;
            hi[deg] += d;
            if (lower != d) all_points = false;
        }
        for (const auto& [deg, h] : hi)
            if (!(lo[deg] == 0 && h == 0)) rep.ranges[deg] = {lo[deg], h};
        rep.exact = all_points;
        if (rep.exact)
            for (const auto& [deg, range] : rep.ranges) rep.values[deg] = range.first;
        rep.assumptions.push_back("no rank assumptions made; bounds only");
    }
    return rep;
}

const std::vector<ExternalFact>& hodge_external_facts() {
    static const std::vector<ExternalFact> facts{
        {"h10-zero",
         "h^{1,0}(X) = 0: no holomorphic 1-forms, and dually h^{11} of the cotangent "
         "bundle vanishes"},
        {"degree8-iso",
         "the degree-8 comparison map from H^8 of the restricted cubic bundle to H^8 of the "
         "restricted cotangent bundle is an isomorphism"},
    };
    return facts;
}

HodgeReport hodge_numbers_omega(int r, Policy policy, const std::set<std::string>& omitted_facts) {
    if (r != 2)
        throw PreconditionViolation("cotangent cohomology table is implemented for r = 2");
    for (const auto& key : omitted_facts) {
        bool known = false;
        for (const auto& f : hodge_external_facts()) known = known || f.key == key;
        if (!known) throw PreconditionViolation("unknown external fact " + key);
    }
    auto enabled = [&](const std::string& key) { return omitted_facts.count(key) == 0; };

    FanoSpec spec = fano_spec(r);
    const int dimx = static_cast<int>(spec.dim_x());

    SSReport ra = assemble_restriction(koszul_e1_table(spec, bundle_by_name(spec, "sym3e")), policy);
    SSReport rb =
        assemble_restriction(koszul_e1_table(spec, bundle_by_name(spec, "e-qdual")), policy);

    std::vector<Int> A(dimx + 1, 0), B(dimx + 1, 0);
    for (const auto& [deg, v] : ra.exact_values()) {
        if (deg < 0 || deg > dimx)
            throw PreconditionViolation("nonzero cohomology above the dimension");
        A[deg] = v;
    }
    for (const auto& [deg, v] : rb.exact_values()) {
        if (deg < 0 || deg > dimx)
            throw PreconditionViolation("nonzero cohomology above the dimension");
        B[deg] = v;
    }

    /* Long exact sequence 0 -> A^0 -> B^0 -> T^0 -> A^1 -> ...; the unknowns
     * are the connecting ranks r_p = rank(T^p -> A^{p+1}).  Interval
     * propagation pins them down, or reports what stays open. */
    Int inf = 1;
    for (int p = 0; p <= dimx; ++p) inf += A[p] + B[p];
    std::vector<Int> lo(dimx + 2, 0), hi(dimx + 2, inf);  // index p+1 holds r_p
    lo[0] = hi[0] = 0;                                    // r_{-1}
    lo[dimx + 1] = hi[dimx + 1] = 0;                      // r_{dimx}

    auto tighten = [&](int idx, const Int& l, const Int& h) {
        bool changed = false;
        if (l > lo[idx]) lo[idx] = l, changed = true;
        if (h < hi[idx]) hi[idx] = h, changed = true;
        if (lo[idx] > hi[idx])
            throw PreconditionViolation("external facts are inconsistent with the tables");
        return changed;
    };

    bool changed = true;
    for (int pass = 0; changed && pass < 4 * (dimx + 2); ++pass) {
        changed = false;
        for (int p = 0; p <= dimx; ++p) {
            Int l = A[p] - std::min(A[p], B[p]);
            changed |= tighten(p, l, A[p]);
        }
        if (enabled("degree8-iso") && dimx >= 8) {
            Int s8 = std::min(A[8], B[8]);
            changed |= tighten(8, A[8] - s8, A[8] - s8);
        }
        if (enabled("h10-zero")) {
            for (int p : {0, dimx}) {
                Int K = A[p] - B[p];
                if (K < 0)
                    throw PreconditionViolation("external facts are inconsistent with the tables");
                changed |= tighten(p + 1, K - hi[p], K - lo[p]);
                changed |= tighten(p, K - hi[p + 1], K - lo[p + 1]);
            }
        }
    }

    std::string open;
    for (int p = 0; p <= dimx + 1; ++p)
        if (lo[p] != hi[p]) open += (open.empty() ? "" : ", ") + std::to_string(p - 1);
    if (!open.empty())
        throw AmbiguousAssembly("connecting ranks undetermined at p = " + open +
                                "; supply the omitted external facts");

    HodgeReport rep;
    Int alt = 0;
    for (int p = 0; p <= dimx; ++p) {
        Int u = B[p] - (A[p] - lo[p]);  // rank(B^p -> T^p)
        if (u < 0) throw PreconditionViolation("external facts are inconsistent with the tables");
        Int t = u + lo[p + 1];
        if (t != 0) rep.h[p] = t;
        alt += p % 2 == 0 ? t : -t;
    }
    Int chi = 0;
    for (int p = 0; p <= dimx; ++p) chi += p % 2 == 0 ? B[p] - A[p] : A[p] - B[p];
    if (alt != chi)
        throw PreconditionViolation("cotangent euler characteristic check failed");
    rep.euler = alt;

    rep.assumptions.push_back(
        "genericity: a generic choice of the defining cubic section makes the contraction "
        "map surjective, so the page-1 differentials below have maximal rank");
    for (const auto& a : ra.assumptions) rep.assumptions.push_back(a);
    for (const auto& f : hodge_external_facts())
        if (enabled(f.key)) rep.assumptions.push_back("external fact " + f.key + ": " + f.statement);
    return rep;
}

}  // namespace grasscalc::bott
