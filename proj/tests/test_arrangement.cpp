#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "ella/arrangement.hpp"
#include "ella/sampling.hpp"

using namespace ella;

namespace {

modular_param test_mp() { return modular_param(cplx(0.3, 0.8)); }

earrangement desk_discriminantal(const modular_param& mp) {
    std::vector<epoint> z = {epoint(rational(0), rational(0)),
                             epoint(rational(1, 2), rational(0))};
    return discriminantal(2, 2, z, mp, sampler(500).unit_fraction_weights(2));
}

// Random small k=2 arrangement with distinct primitive hyperplanes and
// convenient unit-fraction weights.
earrangement seeded_arrangement(sampler& smp, const modular_param& mp, int count) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::set<ehyperplane> seen;
        std::vector<ehyperplane> hps;
        while ((int)hps.size() < count) {
            ehyperplane h(smp.primitive_column(2, 2), smp.ep(5));
            if (seen.insert(h).second) hps.push_back(h);
        }
        earrangement c(2, mp, smp.unit_fraction_weights(2), hps);
        if (is_convenient(c)) return c;
    }
    throw std::runtime_error("seeded_arrangement: no convenient draw");
}

} // namespace

TEST_CASE("hyperplane canonicalization") {
    ehyperplane h({-1, 2}, epoint(rational(1, 3), rational(0)));
    CHECK(h.c == std::vector<long long>{1, -2});
    CHECK(h.z == epoint(rational(2, 3), rational(0)));
    ehyperplane same({1, -2}, epoint(rational(2, 3), rational(0)));
    CHECK(h == same);
    CHECK_THROWS_AS(ehyperplane({0, 0}, epoint()), not_primitive);
    CHECK_THROWS_AS(ehyperplane({-2, 4}, epoint()), not_primitive);
}

TEST_CASE("arrangement construction guards") {
    modular_param mp = test_mp();
    std::vector<qpair> w = sampler(501).unit_fraction_weights(2);
    std::vector<ehyperplane> dup = {ehyperplane({1, 0}, epoint(rational(1, 3), rational(0))),
                                    ehyperplane({-1, 0}, epoint(rational(-1, 3), rational(0)))};
    CHECK_THROWS_AS(earrangement(2, mp, w, dup), duplicate_hyperplane);
    std::vector<ehyperplane> one = {ehyperplane({1, 0}, epoint())};
    CHECK_THROWS_AS(earrangement(0, mp, {}, {}), dimension_mismatch);
    CHECK_THROWS_AS(earrangement(2, mp, {w[0]}, one), dimension_mismatch);
}

TEST_CASE("marked point arrangement layout and vertex data") {
    earrangement c = desk_discriminantal(test_mp());
    REQUIRE(c.hps.size() == 5);
    CHECK(c.hps[0].c == std::vector<long long>{1, 0});
    CHECK(c.hps[1].c == std::vector<long long>{1, 0});
    CHECK(c.hps[2].c == std::vector<long long>{0, 1});
    CHECK(c.hps[3].c == std::vector<long long>{0, 1});
    CHECK(c.hps[4].c == std::vector<long long>{1, -1});
    CHECK(c.hps[1].z == epoint(rational(1, 2), rational(0)));

    auto verts = enumerate_vertices(c);
    REQUIRE(verts.size() == 4);
    CHECK(verts[0].incident == std::vector<int>{0, 2, 4});
    CHECK(verts[1].incident == std::vector<int>{0, 3});
    CHECK(verts[2].incident == std::vector<int>{1, 2});
    CHECK(verts[3].incident == std::vector<int>{1, 3, 4});
    CHECK(verts[3].point[0] == epoint(rational(1, 2), rational(0)));
    CHECK(verts[3].point[1] == epoint(rational(1, 2), rational(0)));
}

TEST_CASE("duplicate marked points are rejected") {
    modular_param mp = test_mp();
    std::vector<epoint> z = {epoint(rational(0), rational(0)), epoint(rational(0), rational(0))};
    CHECK_THROWS_AS(discriminantal(2, 2, z, mp, sampler(502).unit_fraction_weights(2)),
                    duplicate_hyperplane);
}

TEST_CASE("local dimensions agree with the presentation rank") {
    earrangement c = desk_discriminantal(test_mp());
    auto verts = enumerate_vertices(c);
    std::vector<int> dims;
    for (const auto& v : verts) {
        int fast = local_os_dim(c, v);
        CHECK(fast == local_os_dim_bruteforce(c, v));
        dims.push_back(fast);
    }
    CHECK(dims == std::vector<int>{2, 1, 1, 2});
}

TEST_CASE("local dimensions agree with the presentation rank on seeded arrangements") {
    sampler smp(503);
    modular_param mp = test_mp();
    for (int trial = 0; trial < 6; ++trial) {
        earrangement c = seeded_arrangement(smp, mp, 4);
        for (const auto& v : enumerate_vertices(c))
            CHECK(local_os_dim(c, v) == local_os_dim_bruteforce(c, v));
    }
}

TEST_CASE("betti sums local dimensions") {
    earrangement c = desk_discriminantal(test_mp());
    betti_report rep = betti(c);
    CHECK(rep.total == 6);
    CHECK(rep.os_dims == std::vector<int>{2, 1, 1, 2});
    CHECK(rep.vertices.size() == 4);
}

TEST_CASE("convenience scan and its witnesses") {
    modular_param mp = test_mp();
    earrangement good = desk_discriminantal(mp);
    std::vector<int> witness;
    CHECK(is_convenient(good, &witness));
    CHECK(witness.empty());

    std::vector<epoint> z = {epoint(rational(0), rational(0)),
                             epoint(rational(1, 2), rational(0))};
    std::vector<qpair> halves = {qpair(rational(1, 2), rational(0)),
                                 qpair(rational(1, 2), rational(0))};
    earrangement bad = discriminantal(2, 2, z, mp, halves);
    CHECK_FALSE(is_convenient(bad, &witness));
    CHECK(witness == std::vector<int>{4});
    CHECK_THROWS_AS(betti(bad), not_convenient);

    std::vector<qpair> integral = {qpair(rational(1), rational(0)),
                                   qpair(rational(2), rational(0))};
    earrangement ambient = discriminantal(2, 2, z, mp, integral);
    CHECK_FALSE(is_convenient(ambient, &witness));
    CHECK(witness.empty());
}

TEST_CASE("vertex admissibility of the dual systems") {
    earrangement c = desk_discriminantal(test_mp());
    CHECK(admissible_at_vertex(c, {0, 2}));
    CHECK(admissible_at_vertex(c, {0, 4}));
    std::vector<epoint> z = {epoint(rational(0), rational(0)),
                             epoint(rational(1, 2), rational(0))};
    std::vector<qpair> integral = {qpair(rational(1), rational(0)),
                                   qpair(rational(2), rational(0))};
    earrangement bad = discriminantal(2, 2, z, test_mp(), integral);
    CHECK_FALSE(admissible_at_vertex(bad, {0, 2}));
}

TEST_CASE("deletion drops one hyperplane") {
    earrangement c = desk_discriminantal(test_mp());
    earrangement d = deleted(c, 4);
    CHECK(d.hps.size() == 4);
    CHECK(betti(d).total == 4);
    earrangement d0 = deleted(c, 0);
    CHECK(d0.hps[0].z == epoint(rational(1, 2), rational(0)));
}

TEST_CASE("restriction to the diagonal merges sources") {
    earrangement c = desk_discriminantal(test_mp());
    arr_restriction r = restrict_arrangement(c, 4);
    CHECK(r.arr.k == 1);
    REQUIRE(r.arr.hps.size() == 2);
    CHECK(r.preimage == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
    CHECK(betti(r.arr).total == 2);
    CHECK(r.w_basis.at(0, 0) == 1);
    CHECK(r.w_basis.at(1, 0) == -1);
}

TEST_CASE("restriction to a coordinate hyperplane skips parallels") {
    earrangement c = desk_discriminantal(test_mp());
    arr_restriction r = restrict_arrangement(c, 0);
    // hyperplane 1 is parallel to hyperplane 0 and disappears
    REQUIRE(r.arr.hps.size() == 2);
    CHECK(r.preimage == std::vector<std::vector<int>>{{2, 4}, {3}});
}

TEST_CASE("restriction multiplies imprimitive traces into parallel copies") {
    // col (1,0) and col (1,2): restricting to the second, the first induces
    // content 2, hence 4 parallel hyperplanes.
    modular_param mp = test_mp();
    std::vector<ehyperplane> hps = {ehyperplane({1, 0}, epoint(rational(1, 3), rational(0))),
                                    ehyperplane({1, 2}, epoint(rational(0), rational(0)))};
    earrangement c(2, mp, sampler(504).unit_fraction_weights(2), hps);
    arr_restriction r = restrict_arrangement(c, 1);
    CHECK(r.arr.hps.size() == 4);
    for (const auto& h : r.arr.hps) CHECK(h.c == std::vector<long long>{1});
    for (const auto& pre : r.preimage) CHECK(pre == std::vector<int>{0});
}

TEST_CASE("deletion and restriction balance the top betti number") {
    earrangement c = desk_discriminantal(test_mp());
    for (int j0 : {0, 1, 2, 3, 4}) CHECK(deletion_restriction_defect(c, j0) == 0);
}

TEST_CASE("deletion and restriction balance on seeded arrangements") {
    sampler smp(505);
    modular_param mp = test_mp();
    for (int trial = 0; trial < 8; ++trial) {
        earrangement c = seeded_arrangement(smp, mp, 3 + int(smp.pick(0, 1)));
        int j0 = int(smp.pick(0, (long long)c.hps.size() - 1));
        CHECK(deletion_restriction_defect(c, j0) == 0);
    }
}

TEST_CASE("one-dimensional arrangements reduce to marked points") {
    modular_param mp = test_mp();
    std::vector<epoint> z = {epoint(rational(0), rational(0)),
                             epoint(rational(1, 3), rational(0)),
                             epoint(rational(1, 2), rational(1, 2))};
    earrangement c = discriminantal(3, 1, z, mp, {qpair(rational(1, 5), rational(0))});
    CHECK(betti(c).total == 3);
    for (int j0 = 0; j0 < 3; ++j0) CHECK(deletion_restriction_defect(c, j0) == 0);
}

TEST_CASE("unimodular coordinate changes preserve the invariants") {
    sampler smp(506);
    modular_param mp = test_mp();
    earrangement c = desk_discriminantal(mp);
    for (int trial = 0; trial < 5; ++trial) {
        intmat wmat = unimodular_complete(smp.primitive_column(2, 3));
        earrangement moved = change_coordinates(c, wmat);
        CHECK(betti(moved).total == betti(c).total);
        CHECK(enumerate_vertices(moved).size() == enumerate_vertices(c).size());
        CHECK(is_convenient(moved) == is_convenient(c));
        std::multiset<int> a, b;
        for (const auto& v : enumerate_vertices(c)) a.insert(local_os_dim(c, v));
        for (const auto& v : enumerate_vertices(moved)) b.insert(local_os_dim(moved, v));
        CHECK(a == b);
    }
    CHECK_THROWS_AS(change_coordinates(c, intmat(2, 2, {2, 0, 0, 1})), not_unimodular);
    CHECK_THROWS_AS(change_coordinates(c, intmat(1, 1, {1})), dimension_mismatch);
}

TEST_CASE("affine intersection-poset oracle at desk scale") {
    CHECK(affine_moebius_betti(1, 1) == 1);
    CHECK(affine_moebius_betti(2, 1) == 2);
    CHECK(affine_moebius_betti(3, 1) == 3);
    CHECK(affine_moebius_betti(1, 2) == 2);
    CHECK(affine_moebius_betti(2, 2) == 6);
    CHECK(affine_moebius_betti(1, 3) == 6);
}

TEST_CASE("vertex systems and their form families") {
    earrangement c = desk_discriminantal(test_mp());
    auto verts = enumerate_vertices(c);
    tsystem sys = vertex_system(c, {0, 2});
    CHECK(sys.k() == 2);
    CHECK(sys.a.at(0, 0) == 1);
    CHECK(sys.a.at(1, 1) == 1);
    CHECK_THROWS_AS(vertex_system(c, {0, 1}), not_transversal);

    auto sets = vertex_forms(c, verts[0]);
    REQUIRE(sets.size() == 2); // one per nbc pair at the triple vertex
    CHECK(sets[0].subset == std::vector<int>{0, 2});
    CHECK(sets[1].subset == std::vector<int>{0, 4});
    for (const auto& s : sets) {
        CHECK(s.which >= 0);
        CHECK(s.family.det_scaled > 1e-10);
        const auto& label = s.family.forms[s.which].label;
        for (int i = 0; i < 2; ++i) CHECK(epoint(label.u[i]) == verts[0].point[i]);
    }
    auto pair_sets = vertex_forms(c, verts[1]);
    REQUIRE(pair_sets.size() == 1);
    CHECK(pair_sets[0].subset == std::vector<int>{0, 3});
}

TEST_CASE("desk scale guards") {
    modular_param mp = test_mp();
    std::vector<ehyperplane> many;
    for (int j = 0; j < 15; ++j)
        many.push_back(ehyperplane({1, 0}, epoint(rational(j, 17), rational(0))));
    earrangement big(2, mp, sampler(507).unit_fraction_weights(2), many);
    CHECK_THROWS_AS(enumerate_vertices(big), size_limit);
}
