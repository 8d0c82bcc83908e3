#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bicomplex.hpp"
#include "chain_complex.hpp"

namespace cychom {

// Finitely generated data of a precyclic module with last degeneracy, stored
// degreewise as integer matrices over a chosen basis of each C_n:
//
//   faces[n]        d_0 .. d_n : C_n -> C_{n-1}           (n >= 1)
//   cyclic[n]       T_n : C_n -> C_n with T_n^{n+1} = id  (unsigned rotation)
//   last_degeneracy s_n : C_n -> C_{n+1}                  (n <= top-1, optional)
//
// The expected relations are checked by verify_identities, not assumed.
struct PrecyclicModule {
    std::vector<std::size_t> ranks;
    std::vector<std::vector<Matrix>> faces; // faces[0] stays empty
    std::vector<Matrix> cyclic;
    std::vector<Matrix> last_degeneracy; // empty vector: module has none

    std::size_t max_degree() const { return ranks.empty() ? 0 : ranks.size() - 1; }
    std::size_t rank(std::size_t n) const { return n < ranks.size() ? ranks[n] : 0; }
    const Matrix& face(std::size_t n, std::size_t i) const { return faces[n][i]; }
    const Matrix& cyclic_op(std::size_t n) const { return cyclic[n]; }
    bool has_last_degeneracy() const { return !last_degeneracy.empty(); }
    const Matrix& last_deg(std::size_t n) const {
        if (!has_last_degeneracy())
            throw MissingLastDegeneracy("module carries no last degeneracy");
        return last_degeneracy[n];
    }
};

inline void validate_precyclic_shapes(const PrecyclicModule& m) {
    if (m.ranks.empty()) throw ShapeError("precyclic module needs at least degree 0");
    const std::size_t top = m.max_degree();
    if (m.faces.size() != top + 1 || !m.faces[0].empty())
        throw ShapeError("faces must hold one (possibly empty) family per degree");
    if (m.cyclic.size() != top + 1) throw ShapeError("cyclic operators must cover every degree");
    for (std::size_t n = 1; n <= top; ++n) {
        if (m.faces[n].size() != n + 1)
            throw ShapeError("degree " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                             " faces, found " + std::to_string(m.faces[n].size()));
        for (std::size_t i = 0; i <= n; ++i)
            if (m.faces[n][i].rows() != m.rank(n - 1) || m.faces[n][i].cols() != m.rank(n))
                throw ShapeError("face " + std::to_string(i) + " at degree " + std::to_string(n) +
                                 " has shape " + m.faces[n][i].shape_str());
    }
    for (std::size_t n = 0; n <= top; ++n)
        if (m.cyclic[n].rows() != m.rank(n) || m.cyclic[n].cols() != m.rank(n))
            throw ShapeError("cyclic operator at degree " + std::to_string(n) + " has shape " +
                             m.cyclic[n].shape_str());
    if (m.has_last_degeneracy()) {
        if (m.last_degeneracy.size() != top)
            throw ShapeError("last degeneracy must cover degrees 0.." + std::to_string(top - 1));
        for (std::size_t n = 0; n < top; ++n)
            if (m.last_degeneracy[n].rows() != m.rank(n + 1) ||
                m.last_degeneracy[n].cols() != m.rank(n))
                throw ShapeError("last degeneracy at degree " + std::to_string(n) +
                                 " has shape " + m.last_degeneracy[n].shape_str());
    }
}

// ---- derived operators -------------------------------------------------------

// t_n = (-1)^n T_n, the signed rotation.
inline Matrix signed_cyclic(const PrecyclicModule& m, std::size_t n) {
    return n % 2 == 0 ? m.cyclic_op(n) : -m.cyclic_op(n);
}

// Alternating sum of all faces, the differential of the underlying complex.
inline Matrix boundary(const PrecyclicModule& m, std::size_t n) {
    Matrix b(m.rank(n - 1), m.rank(n));
    for (std::size_t i = 0; i <= n; ++i)
        b = i % 2 == 0 ? b + m.face(n, i) : b - m.face(n, i);
    return b;
}

// Alternating sum with the last face omitted, the bar differential.
inline Matrix bar_boundary(const PrecyclicModule& m, std::size_t n) {
    Matrix b(m.rank(n - 1), m.rank(n));
    for (std::size_t i = 0; i < n; ++i) b = i % 2 == 0 ? b + m.face(n, i) : b - m.face(n, i);
    return b;
}

// N = 1 + t + ... + t^n on C_n.
inline Matrix norm_operator(const PrecyclicModule& m, std::size_t n) {
    Matrix t = signed_cyclic(m, n);
    Matrix acc = Matrix::identity(m.rank(n));
    Matrix sum = acc;
    for (std::size_t j = 1; j <= n; ++j) {
        acc = t * acc;
        sum = sum + acc;
    }
    return sum;
}

// T_{n+1} s_n : C_n -> C_{n+1}; prepending the basepoint slot. Contracts the
// bar complex from the left end.
inline Matrix extra_degeneracy(const PrecyclicModule& m, std::size_t n) {
    return m.cyclic_op(n + 1) * m.last_deg(n);
}

// (-1)^n s_n, the other normalization that contracts the bar complex.
inline Matrix signed_last_degeneracy(const PrecyclicModule& m, std::size_t n) {
    return n % 2 == 0 ? m.last_deg(n) : -m.last_deg(n);
}

inline ChainComplex underlying_complex(const PrecyclicModule& m) {
    std::vector<Matrix> diffs;
    for (std::size_t n = 1; n <= m.max_degree(); ++n) diffs.push_back(boundary(m, n));
    return make_complex(m.ranks, std::move(diffs));
}

inline ChainComplex bar_complex(const PrecyclicModule& m) {
    std::vector<Matrix> diffs;
    for (std::size_t n = 1; n <= m.max_degree(); ++n) diffs.push_back(bar_boundary(m, n));
    return make_complex(m.ranks, std::move(diffs));
}

// ---- identity verification ---------------------------------------------------

struct IdentityFamilyResult {
    std::string name;
    bool applicable = true; // false: module lacks the data this family needs
    bool informational = false; // excluded from all_hold
    std::size_t instances = 0;
    std::vector<std::string> failures; // capped at a handful per family

    bool holds() const { return failures.empty(); }
};

struct IdentityReport {
    std::vector<IdentityFamilyResult> families;

    bool all_hold() const {
        for (const auto& f : families)
            if (f.applicable && !f.informational && !f.holds()) return false;
        return true;
    }
    const IdentityFamilyResult* family(std::string_view name) const {
        for (const auto& f : families)
            if (f.name == name) return &f;
        return nullptr;
    }
    std::string summary() const {
        std::string out;
        for (const auto& f : families) {
            out += f.name;
            out += ": ";
            if (!f.applicable)
                out += "skipped (module carries no last degeneracy)";
            else if (f.holds())
                out += "holds (" + std::to_string(f.instances) + " instances)";
            else
                out += "FAILS (" + std::to_string(f.failures.size()) + " of " +
                       std::to_string(f.instances) + " instances)";
            if (f.informational) out += " [informational]";
            out += "\n";
        }
        return out;
    }
};

namespace detail {

class IdentityChecker {
  public:
    explicit IdentityChecker(IdentityReport& report) : report_(report) {}

    IdentityFamilyResult& open(std::string name, bool applicable, bool informational = false) {
        IdentityFamilyResult f;
        f.name = std::move(name);
        f.applicable = applicable;
        f.informational = informational;
        report_.families.push_back(std::move(f));
        return report_.families.back();
    }

    static void record(IdentityFamilyResult& f, bool ok, const std::string& where) {
        ++f.instances;
        if (!ok && f.failures.size() < 8) f.failures.push_back(where);
    }

  private:
    IdentityReport& report_;
};

} // namespace detail

inline IdentityReport verify_identities(const PrecyclicModule& m) {
    validate_precyclic_shapes(m);
    const std::size_t top = m.max_degree();
    const bool with_s = m.has_last_degeneracy();
    IdentityReport report;
    detail::IdentityChecker chk(report);
    auto at = [](std::size_t n, const std::string& rest = "") {
        return "degree " + std::to_string(n) + (rest.empty() ? "" : ", " + rest);
    };

    {
        auto& f = chk.open("simplicial face relations", true);
        for (std::size_t n = 2; n <= top; ++n)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    chk.record(f,
                               m.face(n - 1, i) * m.face(n, j) == m.face(n - 1, j - 1) * m.face(n, i),
                               at(n, "i=" + std::to_string(i) + " j=" + std::to_string(j)));
    }
    {
        auto& f = chk.open("cyclic operator order", true);
        for (std::size_t n = 0; n <= top; ++n) {
            Matrix p = Matrix::identity(m.rank(n));
            for (std::size_t k = 0; k <= n; ++k) p = m.cyclic_op(n) * p;
            chk.record(f, p == Matrix::identity(m.rank(n)), at(n));
        }
    }
    {
        auto& f = chk.open("cyclic face compatibility", true);
        for (std::size_t n = 1; n <= top; ++n) {
            chk.record(f, m.face(n, 0) * m.cyclic_op(n) == m.face(n, n), at(n, "i=0"));
            for (std::size_t i = 1; i <= n; ++i)
                chk.record(f, m.face(n, i) * m.cyclic_op(n) == m.cyclic_op(n - 1) * m.face(n, i - 1),
                           at(n, "i=" + std::to_string(i)));
        }
    }
    {
        auto& f = chk.open("last degeneracy compatibility", with_s);
        if (with_s)
            for (std::size_t n = 0; n < top; ++n) {
                for (std::size_t i = 0; i + 1 <= n; ++i)
                    chk.record(f, m.face(n + 1, i) * m.last_deg(n) == m.last_deg(n - 1) * m.face(n, i),
                               at(n, "i=" + std::to_string(i)));
                Matrix id = Matrix::identity(m.rank(n));
                chk.record(f, m.face(n + 1, n) * m.last_deg(n) == id, at(n, "penultimate face"));
                chk.record(f, m.face(n + 1, n + 1) * m.last_deg(n) == id, at(n, "final face"));
            }
    }
    {
        auto& f = chk.open("last degeneracy, shifted indexing", with_s, true);
        if (with_s)
            for (std::size_t n = 1; n < top; ++n)
                for (std::size_t i = 1; i < n; ++i)
                    chk.record(f,
                               m.face(n + 1, i) * m.last_deg(n) == m.last_deg(n - 1) * m.face(n, i - 1),
                               at(n, "i=" + std::to_string(i)));
    }
    {
        auto& f = chk.open("boundary squares to zero", true);
        for (std::size_t n = 2; n <= top; ++n)
            chk.record(f, (boundary(m, n - 1) * boundary(m, n)).is_zero(), at(n));
    }
    {
        auto& f = chk.open("bar boundary squares to zero", true);
        for (std::size_t n = 2; n <= top; ++n)
            chk.record(f, (bar_boundary(m, n - 1) * bar_boundary(m, n)).is_zero(), at(n));
    }
    {
        auto& f = chk.open("boundary intertwines the cyclic difference", true);
        for (std::size_t n = 1; n <= top; ++n) {
            Matrix lhs = boundary(m, n) * (Matrix::identity(m.rank(n)) - signed_cyclic(m, n));
            Matrix rhs =
                (Matrix::identity(m.rank(n - 1)) - signed_cyclic(m, n - 1)) * bar_boundary(m, n);
            chk.record(f, lhs == rhs, at(n));
        }
    }
    {
        auto& f = chk.open("norm intertwines the boundaries", true);
        for (std::size_t n = 1; n <= top; ++n)
            chk.record(f, bar_boundary(m, n) * norm_operator(m, n) ==
                              norm_operator(m, n - 1) * boundary(m, n),
                       at(n));
    }
    {
        auto& f = chk.open("norm annihilates the cyclic difference", true);
        for (std::size_t n = 0; n <= top; ++n) {
            Matrix diff = Matrix::identity(m.rank(n)) - signed_cyclic(m, n);
            Matrix nrm = norm_operator(m, n);
            chk.record(f, (nrm * diff).is_zero() && (diff * nrm).is_zero(), at(n));
        }
    }
    {
        auto& f = chk.open("face and cyclic power commutation", true);
        for (std::size_t n = 1; n <= top; ++n) {
            Matrix tpow = Matrix::identity(m.rank(n));
            Matrix tpow_prev = Matrix::identity(m.rank(n - 1));
            for (std::size_t j = 1; j <= n; ++j) {
                tpow = signed_cyclic(m, n) * tpow; // t^j on C_n
                Matrix tprev_j = signed_cyclic(m, n - 1) * tpow_prev; // t^j on C_{n-1}
                for (std::size_t i = 0; i <= n; ++i) {
                    Matrix lhs = m.face(n, i) * tpow;
                    Matrix rhs;
                    if (i >= j) {
                        rhs = tprev_j * m.face(n, i - j);
                        if (j % 2 == 1) rhs = -rhs;
                    } else {
                        rhs = tpow_prev * m.face(n, n + 1 + i - j);
                        if ((n - j + 1) % 2 == 1) rhs = -rhs;
                    }
                    chk.record(f, lhs == rhs,
                               at(n, "i=" + std::to_string(i) + " j=" + std::to_string(j)));
                }
                tpow_prev = tprev_j;
            }
        }
    }
    {
        auto& f = chk.open("extra degeneracy contracts the bar complex", with_s);
        if (with_s)
            for (std::size_t n = 0; n < top; ++n) {
                Matrix lhs = bar_boundary(m, n + 1) * extra_degeneracy(m, n);
                if (n >= 1) lhs = lhs + extra_degeneracy(m, n - 1) * bar_boundary(m, n);
                chk.record(f, lhs == Matrix::identity(m.rank(n)), at(n));
            }
    }
    {
        auto& f = chk.open("signed last degeneracy contracts the bar complex", with_s);
        if (with_s)
            for (std::size_t n = 0; n < top; ++n) {
                Matrix lhs = bar_boundary(m, n + 1) * signed_last_degeneracy(m, n);
                if (n >= 1) lhs = lhs + signed_last_degeneracy(m, n - 1) * bar_boundary(m, n);
                chk.record(f, lhs == Matrix::identity(m.rank(n)), at(n));
            }
    }
    return report;
}

// ---- bar acyclicity ------------------------------------------------------------

struct BarReport {
    bool has_last_degeneracy = false;
    bool contraction_holds = false; // both normalizations, all degrees in range
    std::vector<AbelianGroupStructure> bar_homology; // degrees 0..up_to
    bool acyclic = true;
};

// The contraction identities certify acyclicity syntactically; the homology
// column is the direct computation and must agree.
inline BarReport verify_bar_acyclicity(const PrecyclicModule& m, std::size_t up_to) {
    validate_precyclic_shapes(m);
    if (up_to + 1 > m.max_degree())
        throw IncompleteData("bar acyclicity through degree " + std::to_string(up_to) +
                             " needs module degree " + std::to_string(up_to + 1));
    BarReport r;
    r.has_last_degeneracy = m.has_last_degeneracy();
    if (r.has_last_degeneracy) {
        r.contraction_holds = true;
        for (std::size_t n = 0; n < m.max_degree(); ++n) {
            Matrix a = bar_boundary(m, n + 1) * extra_degeneracy(m, n);
            Matrix b = bar_boundary(m, n + 1) * signed_last_degeneracy(m, n);
            if (n >= 1) {
                a = a + extra_degeneracy(m, n - 1) * bar_boundary(m, n);
                b = b + signed_last_degeneracy(m, n - 1) * bar_boundary(m, n);
            }
            Matrix id = Matrix::identity(m.rank(n));
            if (a != id || b != id) r.contraction_holds = false;
        }
    }
    ChainComplex bar = bar_complex(m);
    for (std::size_t n = 0; n <= up_to; ++n) {
        r.bar_homology.push_back(homology(bar, n).structure);
        if (!r.bar_homology.back().trivial()) r.acyclic = false;
    }
    return r;
}

// ---- the cyclic bicomplex -------------------------------------------------------

// Columns repeat the underlying complex: even columns carry the full boundary,
// odd columns the negated bar boundary. Rows alternate the cyclic difference
// 1 - t (into even columns) and the norm N (into odd columns). All squares
// anticommute on the nose.
inline Bicomplex build_cc(const PrecyclicModule& m, std::size_t width, std::size_t height) {
    validate_precyclic_shapes(m);
    if (height == 0 || width == 0) throw ShapeError("cyclic bicomplex needs a nonempty window");
    if (height - 1 > m.max_degree())
        throw IncompleteData("cyclic bicomplex of height " + std::to_string(height) +
                             " needs module degree " + std::to_string(height - 1));
    Bicomplex b = bicomplex_frame(width, height, [&](std::size_t, std::size_t q) { return m.rank(q); });
    for (std::size_t p = 0; p < width; ++p)
        for (std::size_t q = 1; q < height; ++q)
            b.vertical[p][q] = p % 2 == 0 ? boundary(m, q) : -bar_boundary(m, q);
    for (std::size_t p = 1; p < width; ++p)
        for (std::size_t q = 0; q < height; ++q)
            b.horizontal[p][q] = p % 2 == 1
                                     ? Matrix::identity(m.rank(q)) - signed_cyclic(m, q)
                                     : norm_operator(m, q);
    return b;
}

inline PrecyclicModule truncate_module(PrecyclicModule m, std::size_t top) {
    validate_precyclic_shapes(m);
    if (top > m.max_degree()) throw IncompleteData("cannot truncate above the stored degree");
    m.ranks.resize(top + 1);
    m.faces.resize(top + 1);
    m.cyclic.resize(top + 1);
    if (m.has_last_degeneracy()) m.last_degeneracy.resize(top);
    return m;
}

} // namespace cychom
