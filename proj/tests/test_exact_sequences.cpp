#include <catch2/catch_amalgamated.hpp>

#include <cychom/bicomplex.hpp>
#include <cychom/exact_sequences.hpp>

#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace cychom;

namespace {

// 0 -> A -> A (+) Q -> Q -> 0 with a twisted total differential
// [[dA, h], [0, dQ]] where h = dA k - k dQ for a random degreewise k, which is
// exactly the condition for the total square to vanish.
DegreewiseSplitSES random_extension(std::mt19937_64& rng, std::size_t max_degree) {
    auto a = builders::random_elementary_complex(rng, max_degree, true);
    auto q = builders::random_elementary_complex(rng, max_degree, true);
    std::vector<Matrix> k;
    for (std::size_t n = 0; n <= max_degree; ++n)
        k.push_back(oracles::random_matrix(rng, a.complex.rank(n), q.complex.rank(n), -3, 3));

    DegreewiseSplitSES s;
    s.sub = a.complex;
    s.quotient = q.complex;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> diffs;
    for (std::size_t n = 0; n <= max_degree; ++n)
        ranks.push_back(a.complex.rank(n) + q.complex.rank(n));
    for (std::size_t n = 1; n <= max_degree; ++n) {
        Matrix h = a.complex.differential(n) * k[n] - k[n - 1] * q.complex.differential(n);
        Matrix d(ranks[n - 1], ranks[n]);
        d.set_block(0, 0, a.complex.differential(n));
        d.set_block(0, a.complex.rank(n), h);
        d.set_block(a.complex.rank(n - 1), a.complex.rank(n), q.complex.differential(n));
        diffs.push_back(std::move(d));
    }
    s.total = make_complex(std::move(ranks), std::move(diffs));
    for (std::size_t n = 0; n <= max_degree; ++n) {
        std::size_t ra = a.complex.rank(n), rq = q.complex.rank(n);
        Matrix inc(ra + rq, ra), proj(rq, ra + rq), split(ra + rq, rq);
        inc.set_block(0, 0, Matrix::identity(ra));
        proj.set_block(0, ra, Matrix::identity(rq));
        split.set_block(ra, 0, Matrix::identity(rq));
        s.inclusion.push_back(std::move(inc));
        s.projection.push_back(std::move(proj));
        s.splitting.push_back(std::move(split));
    }
    return s;
}

ChainComplex conjugated(const ChainComplex& c, const std::vector<std::pair<Matrix, Matrix>>& p) {
    std::vector<Matrix> diffs;
    for (std::size_t n = 1; n <= c.max_degree(); ++n)
        diffs.push_back(p[n - 1].first * c.differential(n) * p[n].second);
    return make_complex(c.ranks, std::move(diffs));
}

} // namespace

TEST_CASE("totalization of an anticommuting square") {
    Bicomplex b = bicomplex_frame(2, 2, [](std::size_t, std::size_t) { return std::size_t{1}; });
    b.vertical[0][1] = Matrix::scalar(1, 1);
    b.vertical[1][1] = Matrix::scalar(1, 1);
    b.horizontal[1][0] = Matrix::scalar(1, -2);
    b.horizontal[1][1] = Matrix::scalar(1, 2);
    REQUIRE(validate_bicomplex(b).ok);

    ChainComplex tot = totalize(b);
    REQUIRE(tot.ranks == std::vector<std::size_t>{1, 2, 1});
    REQUIRE(tot.differential(1) == Matrix::from_rows({{1, -2}}));
    REQUIRE(tot.differential(2) == Matrix::from_rows({{2}, {1}}));
    REQUIRE(validate_complex(tot).ok);
    REQUIRE(homology(tot, 0).structure.trivial());
    REQUIRE(homology(tot, 1).structure.trivial());

    Bicomplex broken = b;
    broken.horizontal[1][1] = Matrix::scalar(1, 3);
    auto r = validate_bicomplex(broken);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure.find("anticommute") != std::string::npos);

    Bicomplex misshapen = b;
    misshapen.vertical[1][1] = Matrix(2, 1);
    REQUIRE_THROWS_AS(validate_bicomplex(misshapen), ShapeError);
}

TEST_CASE("totalization detects failing column squares") {
    Bicomplex b = bicomplex_frame(1, 3, [](std::size_t, std::size_t) { return std::size_t{1}; });
    b.vertical[0][1] = Matrix::scalar(1, 1);
    b.vertical[0][2] = Matrix::scalar(1, 1);
    auto r = validate_bicomplex(b);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure.find("vertical square") != std::string::npos);
}

TEST_CASE("totalization offsets on a ragged grid") {
    // ranks grow with p so misplaced blocks would change the shapes
    Bicomplex b =
        bicomplex_frame(3, 2, [](std::size_t p, std::size_t q) { return p + q + 1; });
    REQUIRE(tot_rank(b, 0) == 1);
    REQUIRE(tot_rank(b, 1) == 2 + 2);
    REQUIRE(tot_rank(b, 2) == 3 + 3);
    REQUIRE(tot_block_offset(b, 1, 0) == 0);
    REQUIRE(tot_block_offset(b, 1, 1) == 2);
    REQUIRE(tot_block_offset(b, 2, 2) == 3);
    ChainComplex tot = totalize(b);
    REQUIRE(tot.ranks == std::vector<std::size_t>{1, 4, 6});
    REQUIRE(validate_complex(tot).ok);
}

namespace {

DegreewiseSplitSES doubling_snake(std::size_t top) {
    // sub: Z 0 0 ...   total: Z <-2- Z 0 ...   quotient: 0 Z 0 ...
    DegreewiseSplitSES s;
    std::vector<std::size_t> ra{1}, rb{1, 1}, rq{0, 1};
    std::vector<Matrix> da, db{Matrix::scalar(1, 2)}, dq{Matrix(0, 1)};
    for (std::size_t n = ra.size(); n <= top; ++n) ra.push_back(0);
    for (std::size_t n = rb.size(); n <= top; ++n) rb.push_back(0);
    for (std::size_t n = rq.size(); n <= top; ++n) rq.push_back(0);
    for (std::size_t n = 1; n <= top; ++n) {
        if (da.size() < n) da.push_back(Matrix(ra[n - 1], ra[n]));
        if (db.size() < n) db.push_back(Matrix(rb[n - 1], rb[n]));
        if (dq.size() < n) dq.push_back(Matrix(rq[n - 1], rq[n]));
    }
    s.sub = make_complex(ra, da);
    s.total = make_complex(rb, db);
    s.quotient = make_complex(rq, dq);
    for (std::size_t n = 0; n <= top; ++n) {
        Matrix inc(rb[n], ra[n]), proj(rq[n], rb[n]), split(rb[n], rq[n]);
        if (n == 0) inc(0, 0) = 1;
        if (n == 1) proj(0, 0) = 1;
        if (n == 1) split(0, 0) = 1;
        s.inclusion.push_back(inc);
        s.projection.push_back(proj);
        s.splitting.push_back(split);
    }
    return s;
}

} // namespace

TEST_CASE("connecting homomorphism of the doubling extension") {
    DegreewiseSplitSES s = doubling_snake(2);
    validate_ses(s);
    LESReport r = assemble_les(s, 1);

    REQUIRE(r.sub_h[0].structure.format() == "ℤ");
    REQUIRE(r.total_h[0].structure.format() == "ℤ/2");
    REQUIRE(r.quotient_h[1].structure.format() == "ℤ");
    REQUIRE(r.total_h[1].structure.trivial());

    REQUIRE(r.delta[1] == Matrix::from_rows({{2}}));
    REQUIRE(r.nodes.size() == 6);
    REQUIRE(r.all_verified_exact());
    REQUIRE(r.unverified_count() == 1); // incoming map of H_1(sub) is outside the window
    REQUIRE_FALSE(r.delta_top.has_value());
}

TEST_CASE("padding the window closes every node") {
    DegreewiseSplitSES s = doubling_snake(3);
    LESReport r = assemble_les(s, 1);
    REQUIRE(r.delta_top.has_value());
    REQUIRE(r.unverified_count() == 0);
    REQUIRE(r.all_verified_exact());
    for (const LESNode& n : r.nodes) REQUIRE(n.detail.empty());
}

TEST_CASE("connecting map is independent of the splitting") {
    // sub: Z <-2- Z, quotient: Z <-0- Z, total differential [[2, 1], [0, 0]]
    auto build = [](Int x, Int y) {
        DegreewiseSplitSES s;
        s.sub = make_complex({1, 1, 0, 0}, {Matrix::scalar(1, 2), Matrix(1, 0), Matrix(0, 0)});
        s.total = make_complex(
            {2, 2, 0, 0}, {Matrix::from_rows({{2, 1}, {0, 0}}), Matrix(2, 0), Matrix(0, 0)});
        s.quotient =
            make_complex({1, 1, 0, 0}, {Matrix::scalar(1, 0), Matrix(1, 0), Matrix(0, 0)});
        for (std::size_t n = 0; n <= 3; ++n) {
            std::size_t ra = s.sub.rank(n), rq = s.quotient.rank(n);
            Matrix inc(ra + rq, ra), proj(rq, ra + rq), split(ra + rq, rq);
            inc.set_block(0, 0, Matrix::identity(ra));
            proj.set_block(0, ra, Matrix::identity(rq));
            split.set_block(ra, 0, Matrix::identity(rq));
            if (n == 0) split(0, 0) = y;
            if (n == 1) split(0, 0) = x;
            s.inclusion.push_back(inc);
            s.projection.push_back(proj);
            s.splitting.push_back(split);
        }
        return s;
    };

    LESReport base = assemble_les(build(0, 0), 1);
    REQUIRE(base.sub_h[0].structure.format() == "ℤ/2");
    REQUIRE(base.total_h[0].structure.format() == "ℤ");
    REQUIRE(base.total_h[1].structure.format() == "ℤ");
    REQUIRE(base.delta[1] == Matrix::from_rows({{1}}));
    REQUIRE(int_abs(base.p_star[1](0, 0)) == 2);
    REQUIRE(base.unverified_count() == 0);
    REQUIRE(base.all_verified_exact());

    LESReport twisted = assemble_les(build(5, -3), 1);
    REQUIRE(twisted.delta[1] == base.delta[1]);
    REQUIRE(twisted.delta_top == base.delta_top);
    for (std::size_t n = 0; n <= 1; ++n) {
        REQUIRE(twisted.i_star[n] == base.i_star[n]);
        REQUIRE(twisted.p_star[n] == base.p_star[n]);
    }
    REQUIRE(twisted.all_verified_exact());
    REQUIRE(twisted.unverified_count() == 0);
}

TEST_CASE("chain map validation rejects non-commuting squares") {
    ChainComplex c = make_complex({1, 1}, {Matrix::scalar(1, 2)});
    std::vector<Matrix> good{Matrix::scalar(1, 1), Matrix::scalar(1, 1)};
    std::vector<Matrix> bad{Matrix::scalar(1, 1), Matrix::scalar(1, 3)};
    REQUIRE_NOTHROW(require_chain_map(c, c, good, 1));
    REQUIRE_THROWS_AS(require_chain_map(c, c, bad, 1), NotAChainMap);
    REQUIRE_THROWS_AS(require_chain_map(c, c, {Matrix::scalar(1, 1)}, 1), ShapeError);
}

TEST_CASE("presented isomorphism inversion") {
    AbelianGroupStructure z{1, {}};
    AbelianGroupStructure z4{0, {4}};
    AbelianGroupStructure z_mixed{1, {2}};

    auto doubling = invert_presented_iso(Matrix::scalar(1, 2), z, z);
    REQUIRE_FALSE(doubling.has_value());

    REQUIRE_FALSE(invert_presented_iso(Matrix::scalar(1, 1), z, z4).has_value());

    auto unit = invert_presented_iso(Matrix::scalar(1, 3), z4, z4);
    REQUIRE(unit.has_value());
    REQUIRE(*unit == Matrix::scalar(1, 3)); // 3 * 3 = 9 = 1 mod 4

    REQUIRE_FALSE(invert_presented_iso(Matrix::scalar(1, 2), z4, z4).has_value());

    Matrix f = Matrix::from_rows({{1, 0}, {1, 1}});
    auto inv = invert_presented_iso(f, z_mixed, z_mixed);
    REQUIRE(inv.has_value());
    REQUIRE(maps_congruent(*inv * f, Matrix::identity(2), z_mixed));
    REQUIRE(maps_congruent(f * *inv, Matrix::identity(2), z_mixed));
}

TEST_CASE("exactness checker on hand-built nodes") {
    AbelianGroupStructure z{1, {}};
    AbelianGroupStructure z2{0, {2}};
    AbelianGroupStructure z4{0, {4}};

    auto ok = exact_at(Matrix::scalar(1, 2), z, Matrix::scalar(1, 1), z2);
    REQUIRE(ok.exact);

    auto too_big = exact_at(Matrix::scalar(1, 2), z, Matrix::scalar(1, 1), z4);
    REQUIRE_FALSE(too_big.exact);
    REQUIRE(too_big.detail == "image is not contained in the kernel");

    auto too_small = exact_at(Matrix::scalar(1, 8), z, Matrix::scalar(1, 1), z2);
    REQUIRE_FALSE(too_small.exact);
    REQUIRE(too_small.detail == "kernel is not contained in the image");
}

TEST_CASE("induced maps compose along changes of basis") {
    std::mt19937_64 rng(20260819);
    for (int trial = 0; trial < 30; ++trial) {
        auto base = builders::random_elementary_complex(rng, 4, false);
        const ChainComplex& c0 = base.complex;
        std::vector<std::pair<Matrix, Matrix>> p, q;
        for (std::size_t n = 0; n <= 4; ++n) {
            p.push_back(builders::random_unimodular_pair(rng, c0.rank(n)));
            q.push_back(builders::random_unimodular_pair(rng, c0.rank(n)));
        }
        ChainComplex c1 = conjugated(c0, p);
        std::vector<std::pair<Matrix, Matrix>> qp;
        for (std::size_t n = 0; n <= 4; ++n)
            qp.emplace_back(q[n].first * p[n].first, p[n].second * q[n].second);
        ChainComplex c2 = conjugated(c0, qp);

        std::vector<Matrix> fp, fq, fqp;
        for (std::size_t n = 0; n <= 4; ++n) {
            fp.push_back(p[n].first);
            fq.push_back(q[n].first);
            fqp.push_back(qp[n].first);
        }
        for (std::size_t n = 0; n <= 3; ++n) {
            HomologyGroup h0 = homology(c0, n), h1 = homology(c1, n), h2 = homology(c2, n);
            Matrix a = induced_map_on_homology(c0, c1, fp, n);
            Matrix b = induced_map_on_homology(c1, c2, fq, n);
            Matrix ba = induced_map_on_homology(c0, c2, fqp, n);
            REQUIRE(maps_congruent(b * a, ba, h2.structure));
            auto inv = invert_presented_iso(a, h0.structure, h1.structure);
            REQUIRE(inv.has_value());
            REQUIRE(maps_congruent(*inv * a, Matrix::identity(h0.generator_count()),
                                   h0.structure));
        }
    }
}

TEST_CASE("random degreewise split extensions have exact long sequences") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        DegreewiseSplitSES s = random_extension(rng, 4);
        REQUIRE(validate_complex(s.total).ok);
        LESReport r = assemble_les(s, 2);
        INFO("trial " << trial);
        for (const LESNode& n : r.nodes) {
            INFO(n.label << ": " << n.detail);
            REQUIRE(n.exact.has_value());
            REQUIRE(*n.exact);
        }
        REQUIRE(r.unverified_count() == 0);
    }
}

TEST_CASE("ses validation rejects broken data") {
    DegreewiseSplitSES s = doubling_snake(2);
    DegreewiseSplitSES bad = s;
    bad.splitting[1](0, 0) = 0; // no longer a section
    REQUIRE_THROWS_AS(validate_ses(bad), Error);

    DegreewiseSplitSES skew = s;
    skew.inclusion[0](0, 0) = 2; // [inclusion | splitting] drops index 2
    REQUIRE_THROWS(validate_ses(skew));
}
