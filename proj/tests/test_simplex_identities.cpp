#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <cychom/simplex_identities.hpp>

using namespace cychom;

namespace {

LinearForm t(std::size_t i, std::size_t vars) { return LinearForm::variable(i, vars); }

} // namespace

TEST_CASE("generator tables of the simplex operators") {
    LinearSubstitution f0 = face_star(0, 2);
    REQUIRE(f0.source_vars() == 3);
    REQUIRE(f0.target_vars == 2);
    REQUIRE(f0.images[0] == LinearForm(2));
    REQUIRE(f0.images[1] == t(0, 2));
    REQUIRE(f0.images[2] == t(1, 2));

    LinearSubstitution s1 = degeneracy_star(1, 2);
    REQUIRE(s1.source_vars() == 3);
    REQUIRE(s1.target_vars == 4);
    REQUIRE(s1.images[0] == t(0, 4));
    LinearForm merged = t(1, 4);
    merged.add_scaled(t(2, 4), 1);
    REQUIRE(s1.images[1] == merged);
    REQUIRE(s1.images[2] == t(3, 4));

    LinearSubstitution rot = cyclic_star_inverse(2);
    REQUIRE(rot.images[0] == t(1, 3));
    REQUIRE(rot.images[1] == t(2, 3));
    REQUIRE(rot.images[2] == t(0, 3));

    REQUIRE_THROWS_AS(face_star(3, 2), ShapeError);
    REQUIRE_THROWS_AS(face_star(0, 0), ShapeError);
    REQUIRE_THROWS_AS(degeneracy_star(3, 2), ShapeError);
}

TEST_CASE("composition substitutes the second table into the first") {
    LinearSubstitution rot = cyclic_star_inverse(2);
    REQUIRE(compose(LinearSubstitution::identity(3), rot) == rot);
    REQUIRE(compose(rot, LinearSubstitution::identity(3)) == rot);

    // rotate then drop the zeroth coordinate: t_1 goes to t_2 and back to t_1
    LinearSubstitution c = compose(rot, face_star(0, 2));
    REQUIRE(c.images[1] == t(1, 2));
    REQUIRE(c == face_star(2, 2));

    REQUIRE_THROWS_AS(compose(face_star(0, 2), face_star(0, 2)), ShapeError);
    REQUIRE_THROWS_AS(face_star(0, 2).apply(LinearForm(2)), ShapeError);
}

TEST_CASE("equality modulo the simplex relation") {
    LinearForm sum = relation_form(SimplexKind::SumZero, 3); // t_0 + t_1 + t_2
    LinearForm one(3);
    one.constant = 1;

    REQUIRE(equal_mod_relation(sum, one, SimplexKind::SumOne));
    REQUIRE(equal_mod_relation(sum, LinearForm(3), SimplexKind::SumZero));
    REQUIRE_FALSE(equal_mod_relation(sum, one, SimplexKind::SumZero));
    REQUIRE_FALSE(equal_mod_relation(t(0, 3), t(1, 3), SimplexKind::SumOne));
    REQUIRE_THROWS_AS(equal_mod_relation(t(0, 3), t(0, 2), SimplexKind::SumOne), ShapeError);

    // congruence survives shifting any image by a multiple of the relation
    std::mt19937_64 rng(4444);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        SimplexKind kind = trial % 2 == 0 ? SimplexKind::SumOne : SimplexKind::SumZero;
        LinearForm a(4);
        for (Int& c : a.coeffs) c = coeff(rng);
        LinearForm b = a;
        b.add_scaled(relation_form(kind, 4), coeff(rng));
        REQUIRE(equal_mod_relation(a, b, kind));
        REQUIRE(equal_mod_relation(b, a, kind));
        LinearForm c = b;
        c.add_scaled(relation_form(kind, 4), coeff(rng));
        REQUIRE(equal_mod_relation(a, c, kind)); // transitivity along the chain
        c.add_scaled(t(2, 4), 1);
        REQUIRE_FALSE(equal_mod_relation(a, c, kind));
    }
}

TEST_CASE("forms render readably") {
    LinearForm f(3);
    f.coeffs[0] = 1;
    f.coeffs[2] = -2;
    f.constant = 1;
    REQUIRE(f.render() == "t_0 - 2t_2 + 1");
    REQUIRE(LinearForm(3).render() == "0");
    LinearForm neg(2);
    neg.coeffs[0] = -1;
    neg.constant = -1;
    REQUIRE(neg.render() == "-t_0 - 1");
}

TEST_CASE("identity sweep passes on both simplex flavors") {
    for (SimplexKind kind : {SimplexKind::SumOne, SimplexKind::SumZero}) {
        SimplexIdentityReport r = verify_simplex_identities(6, kind);
        for (const SimplexIdentityFailure& f : r.failures)
            INFO(f.identity << " at n=" << f.n << ", t_" << f.generator << ": " << f.left
                            << " vs " << f.right);
        REQUIRE(r.ok());
        REQUIRE(r.instances == 289);
        REQUIRE(r.summary().find("hold") != std::string::npos);
    }
    REQUIRE(verify_simplex_identities(1, SimplexKind::SumOne).ok());
    REQUIRE_THROWS_AS(verify_simplex_identities(0, SimplexKind::SumZero), ShapeError);
}

TEST_CASE("mutated face breaks the exchange law and is reported") {
    LinearSubstitution mutated = face_star(1, 2);
    mutated.images[1] = t(1, 2); // should be 0

    SimplexIdentityReport r;
    r.kind = SimplexKind::SumOne;
    check_identity(r, 2, "face exchange", compose(mutated, face_star(0, 1)),
                   compose(face_star(0, 2), face_star(0, 1)));
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.failures[0].n == 2);
    REQUIRE(r.failures[0].identity == "face exchange");
    REQUIRE(r.failures[0].generator == 1);
    REQUIRE(r.failures[0].left != r.failures[0].right);
    REQUIRE(r.summary().find("fail") != std::string::npos);
}

TEST_CASE("broken rotation order and broken descent are caught") {
    LinearSubstitution rot = cyclic_star_inverse(3);
    std::swap(rot.images[0], rot.images[1]); // now a 3-cycle, order does not divide 4
    LinearSubstitution power = LinearSubstitution::identity(4);
    for (int k = 0; k < 4; ++k) power = compose(power, rot);
    REQUIRE_FALSE(
        equal_mod_relation(power, LinearSubstitution::identity(4), SimplexKind::SumOne));

    LinearSubstitution stretch = LinearSubstitution::identity(3);
    stretch.images[0].add_scaled(t(0, 3), 1); // t_0 -> 2 t_0 no longer fixes the relation
    for (SimplexKind kind : {SimplexKind::SumOne, SimplexKind::SumZero}) {
        LinearForm image = stretch.apply(relation_form(kind, 3));
        REQUIRE_FALSE(equal_mod_relation(image, LinearForm(3), kind));
    }
}
