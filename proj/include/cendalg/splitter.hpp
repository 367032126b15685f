#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cendalg/cochain.hpp"
#include "cendalg/linalg.hpp"

namespace cendalg {

// Dynamic coordinates for module elements: one axis per (basis key, D-degree)
// pair actually encountered.
class CoordIndexer {
public:
    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::pair<ModKey, int>>& labels() const { return labels_; }

    int axis(const ModKey& e, int ddeg) {
        auto [it, fresh] = axes_.try_emplace({e, ddeg}, size());
        if (fresh) labels_.emplace_back(e, ddeg);
        return it->second;
    }

    Vec to_coords(const ModElem& v) {
        Vec out;
        for (const auto& [e, p] : v.terms())
            for (const auto& [d, c] : p.coeffs()) {
                int ax = axis(e, d);
                if (ax >= static_cast<int>(out.size())) out.resize(ax + 1);
                out[static_cast<std::size_t>(ax)] = c;
            }
        out.resize(static_cast<std::size_t>(size()));
        return out;
    }

    // Coordinates without allocating axes; nullopt when v uses an unseen pair.
    std::optional<Vec> try_coords(const ModElem& v) const {
        Vec out(static_cast<std::size_t>(size()));
        for (const auto& [e, p] : v.terms())
            for (const auto& [d, c] : p.coeffs()) {
                auto it = axes_.find({e, d});
                if (it == axes_.end()) return std::nullopt;
                out[static_cast<std::size_t>(it->second)] = c;
            }
        return out;
    }

    ModElem from_coords(const Vec& v) const {
        ModElem out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            const auto& [e, d] = labels_[i];
            out.add_term(e, DPoly::monomial(d, v[i]));
        }
        return out;
    }

private:
    std::map<std::pair<ModKey, int>, int> axes_;
    std::vector<std::pair<ModKey, int>> labels_;
};

// Finite-dimensional subspace of a bimodule closed under the generator when
// built by orbit_subspace: the index-1 left multiplication and the composite
// generators L_0^m R_{m+1}.
class OrbitSpace {
public:
    explicit OrbitSpace(BimodulePtr module) : module_(std::move(module)) {}

    const BimodulePtr& module() const { return module_; }
    int dim() const { return span_.rank(); }
    const std::vector<ModElem>& basis_elems() const { return basis_elems_; }
    const CoordSpace& span() const { return span_; }
    const CoordIndexer& coords() const { return coords_; }
    const std::vector<std::string>& provenance() const { return provenance_; }

    bool insert(const ModElem& v, const std::string& word) {
        if (v.is_zero()) return false;
        Vec vec = coords_.to_coords(v);
        span_.extend_ambient(coords_.size());
        if (!span_.insert(std::move(vec))) return false;
        provenance_.push_back(word);
        refresh_basis_elems();
        return true;
    }

    bool contains(const ModElem& v) const { return coefficients(v).has_value(); }

    // Coefficients of v in basis_elems(), when v lies in the span.
    std::optional<Vec> coefficients(const ModElem& v) const {
        auto vec = coords_.try_coords(v);
        if (!vec) return v.is_zero() ? std::make_optional(Vec(span_.basis().size()))
                                     : std::nullopt;
        return span_.coefficients(std::move(*vec));
    }

    ModElem from_basis_coeffs(const Vec& c) const {
        ModElem out;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out += basis_elems_[i].scaled(c[i]);
        return out;
    }

    // Matrix of op in the stored basis, when the space is op-invariant.
    std::optional<Matrix> restricted_matrix(
        const std::function<ModElem(const ModElem&)>& op) const {
        Matrix m(basis_elems_.size(), basis_elems_.size());
        for (std::size_t j = 0; j < basis_elems_.size(); ++j) {
            auto col = coefficients(op(basis_elems_[j]));
            if (!col) return std::nullopt;
            for (std::size_t i = 0; i < basis_elems_.size(); ++i) m.at(i, j) = (*col)[i];
        }
        return m;
    }

private:
    void refresh_basis_elems() {
        basis_elems_.clear();
        for (const auto& row : span_.basis()) basis_elems_.push_back(coords_.from_coords(row));
    }

    BimodulePtr module_;
    CoordIndexer coords_;
    CoordSpace span_;
    std::vector<ModElem> basis_elems_;
    std::vector<std::string> provenance_;
};

namespace detail {

inline ModElem l0m_r(const Bimodule& m, int mm, const ModElem& v) {
    ModElem w = m.act_right(v, mm + 1, x_gen());
    for (int i = 0; i < mm; ++i) w = m.act_left(x_gen(), 0, w);
    return w;
}

}  // namespace detail

// Smallest subspace containing the seed and closed under L_1 and all
// L_0^m R_{m+1}.  Finiteness holds for every valid bimodule; the pass cap
// turns a divergent closure (inconsistent tables) into an error.
inline OrbitSpace orbit_subspace(const ModElem& seed, BimodulePtr module) {
    OrbitSpace v(module);
    if (seed.is_zero()) return v;
    v.insert(seed, "seed");
    const Bimodule& m = *module;
    int cap = 64 + v.coords().size();
    for (int pass = 0;; ++pass) {
        if (pass > cap)
            throw ClosureDiverged("orbit closure exceeded " + std::to_string(cap) + " passes");
        bool grew = false;
        std::vector<ModElem> snapshot = v.basis_elems();
        for (const auto& b : snapshot) {
            grew |= v.insert(m.act_left(x_gen(), 1, b), "L_1");
            int rb = m.right_elem_bound(b, 1);
            for (int mm = 0; mm + 1 < rb; ++mm) {
                std::string word =
                    (mm == 0 ? std::string("R_1")
                             : "L_0^" + std::to_string(mm) + " R_" + std::to_string(mm + 1));
                grew |= v.insert(detail::l0m_r(m, mm, b), word);
            }
        }
        if (!grew) break;
    }
    return v;
}

// Exact spectral data of the index-1 left multiplication on an orbit space:
// distinct non-negative integer eigenvalues with projection matrices obtained
// by Lagrange interpolation.
struct EigenDecomposition {
    std::vector<long> eigenvalues;               // ascending
    std::vector<Matrix> projections;             // aligned with eigenvalues
    std::vector<std::vector<Vec>> eigenbases;    // kernel bases, orbit coordinates

    std::optional<std::size_t> index_of(long eigenvalue) const {
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            if (eigenvalues[i] == eigenvalue) return i;
        return std::nullopt;
    }
};

inline EigenDecomposition l1_eigendecompose(const OrbitSpace& v) {
    EigenDecomposition dec;
    const int d = v.dim();
    if (d == 0) return dec;
    auto l1 = v.restricted_matrix([&](const ModElem& u) {
        return v.module()->act_left(x_gen(), 1, u);
    });
    if (!l1) throw NotSemisimple("space not invariant under the index-1 left action");

    Rat tr = l1->trace();
    if (!tr.is_integer() || tr < Rat(0))
        throw NotSemisimple("trace " + tr.str() + " excludes non-negative integer spectrum");
    long bound = tr.num().convert_to<long>();

    int total = 0;
    for (long i = 0; i <= bound && total < d; ++i) {
        Matrix shifted = *l1 - Matrix::identity(d).scaled(Rat(i));
        auto kernel = nullspace(shifted);
        if (kernel.empty()) continue;
        dec.eigenvalues.push_back(i);
        total += static_cast<int>(kernel.size());
        dec.eigenbases.push_back(std::move(kernel));
    }
    if (total != d)
        throw NotSemisimple("eigenspaces span " + std::to_string(total) + " of " +
                            std::to_string(d) + " dimensions");

    for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
        Matrix p = Matrix::identity(d);
        for (std::size_t j = 0; j < dec.eigenvalues.size(); ++j) {
            if (j == i) continue;
            Rat denom(dec.eigenvalues[i] - dec.eigenvalues[j]);
            Matrix factor = *l1 - Matrix::identity(d).scaled(Rat(dec.eigenvalues[j]));
            p = p * factor.scaled(Rat(1) / denom);
        }
        dec.projections.push_back(std::move(p));
    }
    return dec;
}

struct NormalizeResult {
    Cochain2 phi_prime;                    // phi - delta xi
    Cochain1 xi;                           // xi(x) = z, zero elsewhere
    ModElem z;
    ModElem phi1;                          // phi_1(x, x) before normalization
    std::map<long, ModElem> components;    // eigencomponents of phi1
    int residual_checked_to = 1;           // R_k phi'_1 verified zero for 2 <= k <= this
};

// Shifts phi by a coboundary so that the diagonal value at index 1 loses all
// right actions of index >= 2: z solves (L_1 - 1) z = phi1 minus its
// eigenvalue-1 component, xi(x) = z, phi' = phi - delta xi.
inline NormalizeResult normalize_cocycle(const Cochain2& phi) {
    BimodulePtr module = phi.module();
    const Bimodule& m = *module;
    NormalizeResult res{phi, Cochain1::zero(module), {}, phi.basis_value(1, 1, 1), {}, 1};
    if (!res.phi1.is_zero()) {
        OrbitSpace v = orbit_subspace(res.phi1, module);
        EigenDecomposition dec = l1_eigendecompose(v);
        Vec c = *v.coefficients(res.phi1);
        Vec zc(c.size());
        for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
            Vec comp = dec.projections[i] * c;
            if (!is_zero_vec(comp))
                res.components[dec.eigenvalues[i]] = v.from_basis_coeffs(comp);
            if (dec.eigenvalues[i] == 1) continue;
            Rat inv = Rat(1) / Rat(dec.eigenvalues[i] - 1);
            for (std::size_t j = 0; j < zc.size(); ++j) zc[j] += comp[j] * inv;
        }
        res.z = v.from_basis_coeffs(zc);
        Cochain1 xi(module);
        xi.set(1, res.z);
        res.xi = xi;
        res.phi_prime = Cochain2::difference(phi, d1(xi));
    }
    ModElem phi1p = res.phi_prime.basis_value(1, 1, 1);
    int rb = m.right_elem_bound(phi1p, 1);
    for (int k = 2; k < rb; ++k)
        if (!m.act_right(phi1p, k, x_gen()).is_zero())
            throw NormalizationFailed("residual right action at index " + std::to_string(k));
    res.residual_checked_to = std::max(rb - 1, 1);
    return res;
}

struct Psi1Result {
    ModElem psi1;       // psi0_part + psi1_part
    ModElem psi0_part;  // solves (L_1 - 1) psi = kernel component
    ModElem psi1_part;  // solves L_1 psi = fixed component
};

// Solves (L_1 + R_1 - 1) psi1 = phi1p on the orbit of phi1p, splitting along
// the projection R_1 and inverting L_1 eigenvalue by eigenvalue.  Requires
// R_k phi1p = 0 for k >= 2.
inline Psi1Result solve_psi1(const ModElem& phi1p, BimodulePtr module) {
    Psi1Result res;
    if (phi1p.is_zero()) return res;
    const Bimodule& m = *module;
    OrbitSpace v = orbit_subspace(phi1p, module);
    EigenDecomposition dec = l1_eigendecompose(v);
    auto r1 = v.restricted_matrix(
        [&](const ModElem& u) { return m.act_right(u, 1, x_gen()); });
    if (!r1) throw NoSolution("orbit space not invariant under the index-1 right action");

    Vec c = *v.coefficients(phi1p);
    Vec fixed = *r1 * c;            // component fixed by the projection
    Vec kernel = c;
    for (std::size_t i = 0; i < c.size(); ++i) kernel[i] -= fixed[i];

    Vec psi0(c.size()), psi1(c.size());
    for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
        long ev = dec.eigenvalues[i];
        Vec comp0 = dec.projections[i] * kernel;
        if (ev == 1) {
            if (!is_zero_vec(comp0))
                throw NoSolution("kernel component meets the eigenvalue-1 space");
        } else {
            Rat inv = Rat(1) / Rat(ev - 1);
            for (std::size_t j = 0; j < psi0.size(); ++j) psi0[j] += comp0[j] * inv;
        }
        Vec comp1 = dec.projections[i] * fixed;
        if (ev == 0) {
            if (!is_zero_vec(comp1))
                throw NoSolution("fixed component meets the eigenvalue-0 space");
        } else {
            Rat inv = Rat(1) / Rat(ev);
            for (std::size_t j = 0; j < psi1.size(); ++j) psi1[j] += comp1[j] * inv;
        }
    }
    res.psi0_part = v.from_basis_coeffs(psi0);
    res.psi1_part = v.from_basis_coeffs(psi1);
    res.psi1 = res.psi0_part + res.psi1_part;

    ModElem check = m.act_left(x_gen(), 1, res.psi1) - res.psi1 +
                    m.act_right(res.psi1, 1, x_gen());
    if (!(check == phi1p))
        throw NoSolution("candidate does not satisfy the index-1 identity");
    return res;
}

// psi(x) = psi1 and
//   psi_{l+1} = -phi'_0(x, x^l) + x o_0 psi_l + psi1 o_0 x^l,  1 <= l < l_max.
inline Cochain1 build_psi(const Cochain2& phi_prime, const ModElem& psi1, long l_max) {
    BimodulePtr module = phi_prime.module();
    const Bimodule& m = *module;
    Cochain1 psi(module);
    psi.set(1, psi1);
    ModElem prev = psi1;
    for (long l = 1; l < l_max; ++l) {
        ModElem next = -phi_prime.basis_value(0, 1, l);
        next += m.act_left(x_gen(), 0, prev);
        next += m.act_right(psi1, 0, x_power(l));
        psi.set(l + 1, next);
        prev = next;
    }
    return psi;
}

struct SplitBounds {
    int kmax = 5;
    int nmax = 6;
    long l_check = 8;
};

struct CheckRecord {
    std::string identity;
    std::vector<long> indices;
    bool pass = false;
};

// Full record of one splitting run: the section cochain, every intermediate,
// and the transcript of exact identities that certify delta psi_total = phi.
struct SplitCertificate {
    std::string module_name;
    SplitBounds bounds;
    SeedData input_seeds;
    Cochain1 psi_total, xi, psi;
    ModElem z, psi1, psi0_part, psi1_part;
    std::map<long, ModElem> phi1_components;
    std::vector<CheckRecord> transcript;
    std::string rationale;
    bool pass = false;
};

// Produces psi_total with delta psi_total = phi, or throws the stage error:
// NotACocycle, NormalizationFailed, NoSolution.
inline SplitCertificate split_cocycle(const Cochain2& phi, const SplitBounds& bounds = {}) {
    SplitCertificate cert;
    cert.module_name = phi.module()->name();
    cert.bounds = bounds;
    cert.input_seeds = seeds_of(phi, bounds.l_check);

    CocycleReport cr = is_cocycle(phi, bounds.kmax, bounds.nmax);
    if (!cr.pass()) {
        const auto& v = cr.violations.front();
        throw NotACocycle("differential does not vanish at (m=" + std::to_string(v.m) +
                              ", n=" + std::to_string(v.n) + ", x^" + std::to_string(v.k) +
                              ", x^" + std::to_string(v.l) + ", x^" + std::to_string(v.q) +
                              ")",
                          v.m, v.n, v.k, v.l, v.q);
    }

    NormalizeResult norm = normalize_cocycle(phi);
    cert.xi = norm.xi;
    cert.z = norm.z;
    cert.phi1_components = norm.components;
    for (long k = 2; k <= norm.residual_checked_to; ++k)
        cert.transcript.push_back({"residual_right_action_vanishes", {k}, true});

    ModElem phi1p = norm.phi_prime.basis_value(1, 1, 1);
    Psi1Result ps = solve_psi1(phi1p, phi.module());
    cert.psi1 = ps.psi1;
    cert.psi0_part = ps.psi0_part;
    cert.psi1_part = ps.psi1_part;

    cert.psi = build_psi(norm.phi_prime, ps.psi1, bounds.l_check + 1);
    cert.psi_total = cert.xi + cert.psi;

    const Bimodule& m = *phi.module();
    ModElem eq12 = m.act_left(x_gen(), 1, ps.psi1) - ps.psi1 +
                   m.act_right(ps.psi1, 1, x_gen());
    cert.transcript.push_back({"index1_identity", {}, eq12 == phi1p});

    Cochain2 delta = d1(cert.psi_total);
    Cochain2 diff = Cochain2::difference(phi, delta);
    long t_hi = std::max<long>(1, std::max(phi.locality_bound(), delta.locality_bound()));
    for (long t = 1; t <= t_hi; ++t)
        cert.transcript.push_back(
            {"diagonal_difference_vanishes", {t}, diff.basis_value(static_cast<int>(t), 1, 1).is_zero()});
    for (long l = 1; l <= bounds.l_check; ++l)
        cert.transcript.push_back(
            {"first_row_difference_vanishes", {l}, diff.basis_value(0, 1, l).is_zero()});

    cert.rationale =
        "a 2-cocycle is determined by its diagonal values at (x, x) and its first-row "
        "values at (x, x^l); both vanish for phi - delta(psi_total), so the difference "
        "vanishes identically";
    cert.pass = true;
    for (const auto& rec : cert.transcript) cert.pass = cert.pass && rec.pass;
    return cert;
}

}  // namespace cendalg
