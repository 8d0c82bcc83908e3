#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <cychom/errors.hpp>
#include <cychom/matrix.hpp>

namespace cychom {

// Coordinate rings of the algebraic simplices: k[t_0..t_n] modulo one linear
// relation, either sum(t) = 1 or sum(t) = 0. The faces, degeneracies and the
// inverse cyclic rotation are all ring maps determined by linear generator
// images, so every identity between them reduces to comparing linear forms
// modulo integer multiples of the relation. No polynomial machinery needed.

enum class SimplexKind { SumOne, SumZero };

struct LinearForm {
    Int constant;
    std::vector<Int> coeffs;

    explicit LinearForm(std::size_t vars = 0) : constant(0), coeffs(vars) {}

    static LinearForm variable(std::size_t i, std::size_t vars) {
        if (i >= vars) throw ShapeError("generator index out of range");
        LinearForm f(vars);
        f.coeffs[i] = 1;
        return f;
    }

    std::size_t vars() const { return coeffs.size(); }

    bool operator==(const LinearForm&) const = default;

    void add_scaled(const LinearForm& o, const Int& c) {
        if (o.vars() != vars()) throw ShapeError("linear forms live in different rings");
        constant += o.constant * c;
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i] * c;
    }

    std::string render() const {
        std::string out;
        auto term = [&out](const Int& c, const std::string& sym) {
            if (c == 0) return;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            Int a = int_abs(c);
            if (a != 1 || sym.empty()) out += a.str();
            out += sym;
        };
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            term(coeffs[i], "t_" + std::to_string(i));
        term(constant, "");
        return out.empty() ? "0" : out;
    }
};

inline LinearForm relation_form(SimplexKind kind, std::size_t vars) {
    LinearForm f(vars);
    for (Int& c : f.coeffs) c = 1;
    if (kind == SimplexKind::SumOne) f.constant = -1;
    return f;
}

// The relation ideal is principal and the relation is linear, so a linear
// form lies in the ideal exactly when it is an integer multiple of the
// relation itself.
inline bool equal_mod_relation(const LinearForm& a, const LinearForm& b, SimplexKind kind) {
    if (a.vars() != b.vars()) throw ShapeError("linear forms live in different rings");
    LinearForm d = a;
    d.add_scaled(b, -1);
    if (d.vars() == 0) return kind == SimplexKind::SumOne || d.constant == 0;
    const Int& lambda = d.coeffs[0];
    for (const Int& c : d.coeffs)
        if (c != lambda) return false;
    return d.constant == (kind == SimplexKind::SumOne ? Int(-lambda) : Int(0));
}

struct LinearSubstitution {
    std::size_t target_vars = 0;
    std::vector<LinearForm> images; // one per source generator

    LinearSubstitution(std::size_t source, std::size_t target)
        : target_vars(target), images(source, LinearForm(target)) {}

    std::size_t source_vars() const { return images.size(); }

    bool operator==(const LinearSubstitution&) const = default;

    static LinearSubstitution identity(std::size_t vars) {
        LinearSubstitution s(vars, vars);
        for (std::size_t i = 0; i < vars; ++i) s.images[i] = LinearForm::variable(i, vars);
        return s;
    }

    LinearForm apply(const LinearForm& f) const {
        if (f.vars() != source_vars())
            throw ShapeError("form has " + std::to_string(f.vars()) +
                             " generators, substitution expects " +
                             std::to_string(source_vars()));
        LinearForm out(target_vars);
        out.constant = f.constant;
        for (std::size_t i = 0; i < images.size(); ++i) out.add_scaled(images[i], f.coeffs[i]);
        return out;
    }
};

// Apply f's table first, then rewrite through g; the result is the pullback
// along "f's map followed by g's map" downstairs.
inline LinearSubstitution compose(const LinearSubstitution& f, const LinearSubstitution& g) {
    if (f.target_vars != g.source_vars())
        throw ShapeError("substitutions do not compose: " + std::to_string(f.target_vars) +
                         " target generators vs " + std::to_string(g.source_vars()) +
                         " source generators");
    LinearSubstitution out(f.source_vars(), g.target_vars);
    for (std::size_t i = 0; i < out.images.size(); ++i) out.images[i] = g.apply(f.images[i]);
    return out;
}

inline bool equal_mod_relation(const LinearSubstitution& a, const LinearSubstitution& b,
                               SimplexKind kind) {
    if (a.source_vars() != b.source_vars() || a.target_vars != b.target_vars)
        throw ShapeError("substitutions live between different rings");
    for (std::size_t i = 0; i < a.images.size(); ++i)
        if (!equal_mod_relation(a.images[i], b.images[i], kind)) return false;
    return true;
}

// Pullback of the j-th face of the n-simplex: kill t_j and close the gap.
inline LinearSubstitution face_star(std::size_t j, std::size_t n) {
    if (n == 0) throw ShapeError("the 0-simplex has no faces");
    if (j > n) throw ShapeError("face index out of range");
    LinearSubstitution s(n + 1, n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (i < j)
            s.images[i] = LinearForm::variable(i, n);
        else if (i > j)
            s.images[i] = LinearForm::variable(i - 1, n);
    }
    return s;
}

// Pullback of the j-th degeneracy collapsing the (n+1)-simplex onto the
// n-simplex: t_j picks up both merged coordinates.
inline LinearSubstitution degeneracy_star(std::size_t j, std::size_t n) {
    if (j > n) throw ShapeError("degeneracy index out of range");
    LinearSubstitution s(n + 1, n + 2);
    for (std::size_t i = 0; i <= n; ++i) {
        if (i < j) {
            s.images[i] = LinearForm::variable(i, n + 2);
        } else if (i == j) {
            s.images[i] = LinearForm::variable(j, n + 2);
            s.images[i].add_scaled(LinearForm::variable(j + 1, n + 2), 1);
        } else {
            s.images[i] = LinearForm::variable(i + 1, n + 2);
        }
    }
    return s;
}

// Pullback of the inverse rotation: t_i rolls forward, t_n wraps to t_0.
inline LinearSubstitution cyclic_star_inverse(std::size_t n) {
    LinearSubstitution s(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        s.images[i] = LinearForm::variable((i + 1) % (n + 1), n + 1);
    return s;
}

struct SimplexIdentityFailure {
    std::size_t n = 0;
    std::string identity;
    std::size_t generator = 0;
    std::string left, right; // rendered images of that generator
};

struct SimplexIdentityReport {
    SimplexKind kind = SimplexKind::SumOne;
    std::size_t n_max = 0;
    std::size_t instances = 0;
    std::vector<SimplexIdentityFailure> failures;

    bool ok() const { return failures.empty(); }

    std::string summary() const {
        std::string flavor =
            kind == SimplexKind::SumOne ? "sum(t) = 1 simplices" : "sum(t) = 0 simplices";
        if (ok())
            return "all " + std::to_string(instances) + " identity instances hold on the " +
                   flavor + " through n = " + std::to_string(n_max);
        return std::to_string(failures.size()) + " generator comparisons fail across " +
               std::to_string(instances) + " identity instances on the " + flavor;
    }
};

// Compare two substitutions generator by generator and record mismatches.
inline void check_identity(SimplexIdentityReport& r, std::size_t n, const std::string& identity,
                           const LinearSubstitution& lhs, const LinearSubstitution& rhs) {
    if (lhs.source_vars() != rhs.source_vars() || lhs.target_vars != rhs.target_vars)
        throw ShapeError("identity sides live between different rings: " + identity);
    ++r.instances;
    for (std::size_t i = 0; i < lhs.source_vars(); ++i)
        if (!equal_mod_relation(lhs.images[i], rhs.images[i], r.kind))
            r.failures.push_back(
                {n, identity, i, lhs.images[i].render(), rhs.images[i].render()});
}

// Sweep every identity instance whose rings stay within the n_max-simplex:
// the two exchange laws and the three-branch mixed law of the simplex
// category, the cyclic rotation's order, the two compatibilities between the
// faces and the rotation, and descent of each substitution to the quotient.
inline SimplexIdentityReport verify_simplex_identities(std::size_t n_max, SimplexKind kind) {
    if (n_max < 1) throw ShapeError("identity sweep needs at least the 1-simplex");
    SimplexIdentityReport r;
    r.kind = kind;
    r.n_max = n_max;

    auto descends = [&r, kind](std::size_t n, const LinearSubstitution& s) {
        LinearForm image = s.apply(relation_form(kind, s.source_vars()));
        ++r.instances;
        if (!equal_mod_relation(image, LinearForm(s.target_vars), kind))
            r.failures.push_back({n, "substitution preserves the simplex relation", 0,
                                  image.render(), relation_form(kind, s.target_vars).render()});
    };

    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n >= 2)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    check_identity(r, n, "face exchange",
                                   compose(face_star(j, n), face_star(i, n - 1)),
                                   compose(face_star(i, n), face_star(j - 1, n - 1)));

        if (n >= 2)
            for (std::size_t j = 0; j + 2 <= n; ++j)
                for (std::size_t i = 0; i <= j; ++i)
                    check_identity(r, n, "degeneracy exchange",
                                   compose(degeneracy_star(j, n - 2), degeneracy_star(i, n - 1)),
                                   compose(degeneracy_star(i, n - 2),
                                           degeneracy_star(j + 1, n - 1)));

        for (std::size_t j = 0; j + 1 <= n; ++j)
            for (std::size_t i = 0; i <= n; ++i) {
                LinearSubstitution lhs =
                    compose(degeneracy_star(j, n - 1), face_star(i, n));
                if (i == j || i == j + 1)
                    check_identity(r, n, "degeneracy absorbs its own faces", lhs,
                                   LinearSubstitution::identity(n));
                else if (i < j)
                    check_identity(r, n, "face slides past a later degeneracy", lhs,
                                   compose(face_star(i, n - 1), degeneracy_star(j - 1, n - 2)));
                else
                    check_identity(r, n, "face slides past an earlier degeneracy", lhs,
                                   compose(face_star(i - 1, n - 1), degeneracy_star(j, n - 2)));
            }

        LinearSubstitution rot = cyclic_star_inverse(n);
        LinearSubstitution power = LinearSubstitution::identity(n + 1);
        for (std::size_t k = 0; k <= n; ++k) power = compose(power, rot);
        check_identity(r, n, "inverse rotation has order n+1", power,
                       LinearSubstitution::identity(n + 1));

        check_identity(r, n, "rotation turns the first face into the last",
                       compose(rot, face_star(0, n)), face_star(n, n));
        for (std::size_t j = 1; j <= n; ++j)
            check_identity(r, n, "rotation shifts the remaining faces",
                           compose(rot, face_star(j, n)),
                           compose(face_star(j - 1, n), cyclic_star_inverse(n - 1)));

        for (std::size_t j = 0; j <= n; ++j) descends(n, face_star(j, n));
        for (std::size_t j = 0; j + 1 <= n; ++j) descends(n, degeneracy_star(j, n - 1));
        descends(n, rot);
    }
    return r;
}

} // namespace cychom
