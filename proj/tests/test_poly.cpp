#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valdyn/bipoly.hpp"
#include "valdyn/resultant.hpp"
#include "valdyn/rng.hpp"

using namespace valdyn;

static PolyMap ex53() { return parse_map("P = x*(x - y^2); Q = x + y"); }

static PolyMap random_map(Rng& rng, int maxdeg) {
    PolyMap F;
    do {
        for (int k = 0; k < 2; ++k) {
            BiPoly p;
            for (int i = 0; i <= maxdeg; ++i)
                for (int j = 0; i + j <= maxdeg; ++j)
                    if (rng.range(0, 2) == 0) p.add_term(i, j, Coeff(Rat(rng.range(-4, 4))));
            F.component(k) = p;
        }
    } while (!is_dominant(F));
    return F;
}

TEST_CASE("parse_map on the fixture grammar") {
    PolyMap F = ex53();
    CHECK(F.P.to_string() == "-x*y^2 + x^2");
    CHECK(F.Q.to_string() == "x + y");
    CHECK(F.degree() == 3);

    PolyMap id = parse_map("P = x; Q = y");
    CHECK(id.P == BiPoly::var_x());
    CHECK(id.Q == BiPoly::var_y());

    PolyMap G = parse_map("P = y^3; Q = x^2");
    CHECK(G.P.to_string() == "y^3");
    CHECK(G.Q.to_string() == "x^2");

    PolyMap H = parse_map("# comment line\nP = 2*x + 1/2 ; Q = -3*y^2\n");
    CHECK(H.P.to_string() == "2*x + 1/2");
    CHECK(H.Q.to_string() == "-3*y^2");
}

TEST_CASE("parse_map rejects bad input with positions") {
    CHECK_THROWS_WITH_AS(parse_map("P = z; Q = y"), doctest::Contains("UnknownIdentifier"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_map("P = x"), doctest::Contains("missing Q"), Error);
    CHECK_THROWS_WITH_AS(parse_map("P = x + ; Q = y"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_AS(parse_map("P = x; P = y; Q = x"), Error);
    CHECK_THROWS_AS(parse_map("R = x; Q = y"), Error);
}

TEST_CASE("compose matches the worked examples") {
    PolyMap F = ex53();
    PolyMap F2 = compose(F, F);
    CHECK(F2.Q == F.P + F.Q);  // x(x-y^2) + x + y
    CHECK(std::max(F2.P.degree(), F2.Q.degree()) == 6);

    CHECK(compose(F, PolyMap::identity()).P == F.P);
    CHECK(compose(F, PolyMap::identity()).Q == F.Q);

    PolyMap G = parse_map("P = x^2; Q = x*y^2");
    PolyMap G2 = compose(G, G);
    CHECK(G2.P.to_string() == "x^4");
    CHECK(G2.Q.to_string() == "x^4*y^4");
    CHECK(G2.P.degree() == 4);
    CHECK(G2.Q.degree() == 8);
}

TEST_CASE("composition degree bound and generic equality") {
    Rng rng(41);
    for (int i = 0; i < 12; ++i) {
        PolyMap F = random_map(rng, 2), G = random_map(rng, 2);
        PolyMap FG = compose(F, G);
        CHECK(FG.degree() <= F.degree() * G.degree());
    }
}

TEST_CASE("jacobian determinant") {
    CHECK(jacobian_det(ex53()).to_string() == "2*x*y - y^2 + 2*x");
    CHECK(jacobian_det(parse_map("P = x^2; Q = y^2")).to_string() == "4*x*y");
    CHECK(jacobian_det(PolyMap::identity()).to_string() == "1");
}

TEST_CASE("jacobian chain rule on random small maps") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        PolyMap F = random_map(rng, 2), G = random_map(rng, 2);
        BiPoly lhs = jacobian_det(compose(F, G));
        BiPoly rhs = jacobian_det(F).substitute(G.P, G.Q) * jacobian_det(G);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("topological degree of the fixtures") {
    CHECK(topological_degree(ex53()) == 3);
    CHECK(topological_degree(parse_map("P = x^2; Q = y^2")) == 4);
    CHECK(topological_degree(parse_map("P = y; Q = y^2 - x")) == 1);
    CHECK(topological_degree(PolyMap::identity()) == 1);
    CHECK(topological_degree(parse_map("P = x; Q = x*y")) == 1);
    CHECK(topological_degree(parse_map("P = y^3; Q = x^2")) == 6);
    CHECK(topological_degree(parse_map("P = x^2; Q = x*y^2")) == 4);
    CHECK(topological_degree(parse_map("P = x*y; Q = x*y^2")) == 1);
    CHECK_THROWS_WITH_AS(topological_degree(parse_map("P = x*y; Q = x^2*y^2")),
                         doctest::Contains("NonDominant"), Error);
}

TEST_CASE("topological degree is multiplicative under composition") {
    PolyMap F = ex53();
    PolyMap G = parse_map("P = x^2; Q = y^2");
    CHECK(topological_degree(compose(F, G)) == 12);
    CHECK(topological_degree(compose(G, G)) == 16);
}

TEST_CASE("leading part under valuation weights") {
    BiPoly R1 = parse_map("P = x^2 + y; Q = y").P;
    CHECK(R1.leading_part(QuadReal(-1), QuadReal(-1)).to_string() == "x^2");

    BiPoly R2 = ex53().P;  // x(x - y^2)
    CHECK(R2.leading_part(QuadReal(-1), QuadReal(Rat(-1, 2))).to_string() == "-x*y^2 + x^2");

    BiPoly R3 = parse_map("P = y^3; Q = y").P;
    CHECK(R3.leading_part(QuadReal(-1), QuadReal(-1)).to_string() == "y^3");

    CHECK_THROWS_AS(BiPoly().leading_part(QuadReal(-1), QuadReal(-1)), Error);
}

TEST_CASE("resultants: univariate sanity and bareiss pivoting") {
    // res(x^2 - 1, x - 2) = 3 up to sign convention
    UniPoly<Coeff> f(std::vector<Coeff>{Coeff(-1), Coeff(0), Coeff(1)});
    UniPoly<Coeff> g(std::vector<Coeff>{Coeff(-2), Coeff(1)});
    Coeff r = resultant(f, g);
    CHECK((r == Coeff(3) || r == Coeff(-3)));

    // common root => zero resultant
    UniPoly<Coeff> h(std::vector<Coeff>{Coeff(-2), Coeff(1)});
    CHECK(resultant(g, h).is_zero());
}
