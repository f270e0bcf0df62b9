#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valdyn/bigint.hpp"
#include "valdyn/coeff.hpp"
#include "valdyn/quadreal.hpp"
#include "valdyn/rat.hpp"
#include "valdyn/rng.hpp"

using namespace valdyn;

TEST_CASE("bigint arithmetic round trips through strings") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("-98765432109876543210");
    CHECK((a * b).to_string() == "-12193263113702179522496570642237463801111263526900");
    CHECK((a + b).to_string() == "123456788913580246791358024680");
    CHECK((a - a).is_zero());
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK((q * b + r == a));
}

TEST_CASE("bigint division against 64-bit reference") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        long long x = rng.range(-1000000000000ll, 1000000000000ll);
        long long y = rng.range(1, 1000000);
        if (rng.next() & 1) y = -y;
        BigInt q, r;
        BigInt::divmod(BigInt(x), BigInt(y), q, r);
        CHECK(q.to_int64() == x / y);
        CHECK(r.to_int64() == x % y);
    }
}

TEST_CASE("bigint multi-limb divmod identity") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        BigInt a(1), b(1);
        int la = static_cast<int>(rng.range(1, 6)), lb = static_cast<int>(rng.range(1, 4));
        for (int k = 0; k < la; ++k) a = a * BigInt(static_cast<long long>(rng.next() >> 16) + 2);
        for (int k = 0; k < lb; ++k) b = b * BigInt(static_cast<long long>(rng.next() >> 16) + 2);
        if (rng.next() & 1) a = -a;
        if (rng.next() & 1) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
}

TEST_CASE("isqrt and iroot") {
    CHECK(BigInt::isqrt(BigInt(0)).to_int64() == 0);
    CHECK(BigInt::isqrt(BigInt(35)).to_int64() == 5);
    CHECK(BigInt::isqrt(BigInt(36)).to_int64() == 6);
    BigInt big = BigInt::from_string("152415787532388367501905199875019052100");
    CHECK(BigInt::isqrt(big).to_string() == "12345678901234567890");
    bool exact = false;
    CHECK(BigInt::iroot(BigInt(27), 3, &exact).to_int64() == 3);
    CHECK(exact);
    CHECK(BigInt::iroot(BigInt(26), 3, &exact).to_int64() == 2);
    CHECK(!exact);
}

TEST_CASE("rat field axioms on random triples") {
    Rng rng(3);
    auto rnd = [&] { return Rat(rng.range(-40, 40), rng.range(1, 23)); };
    for (int i = 0; i < 500; ++i) {
        Rat a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("rat normalization is idempotent and canonical") {
    Rat a(6, -4);
    CHECK(a.num().to_int64() == -3);
    CHECK(a.den().to_int64() == 2);
    CHECK(Rat(0, 17) == Rat(0));
    CHECK(Rat(-7, 1).to_string() == "-7");
    CHECK(Rat::parse("22/6") == Rat(11, 3));
    CHECK(Rat(7, 2).floor().to_int64() == 3);
    CHECK(Rat(-7, 2).floor().to_int64() == -4);
}

TEST_CASE("quadreal ordering on hand-checked pairs") {
    QuadReal one(1);
    QuadReal sqrt2(Rat(0), Rat(1), 2);
    CHECK(QuadReal::cmp(one, sqrt2) < 0);
    QuadReal sqrt6(Rat(0), Rat(1), 6);
    CHECK(QuadReal::cmp(sqrt6, QuadReal(2)) > 0);
    CHECK(QuadReal::cmp(QuadReal(3), QuadReal(0)) > 0);
}

TEST_CASE("quadreal comparison agrees with high-precision evaluation") {
    // Independent route: floor(value * 2^200) computed with integer isqrt.
    auto scaled_floor = [](const QuadReal& q) {
        BigInt two200 = BigInt(1).shifted_left(200);
        Rat r = q.rational_part(), s = q.surd_coeff();
        BigInt a = r.num() * s.den() * two200;
        BigInt b = s.num() * r.den() * two200;
        BigInt c = r.den() * s.den();
        BigInt f = BigInt::isqrt(b * b * BigInt(q.radicand()));
        if (b.is_negative()) f = -f - BigInt(1);
        if (q.is_rational()) f = BigInt(0);
        return Rat(a + f, c).floor();
    };
    Rng rng(99);
    const long long ds[] = {0, 2, 3, 5, 6, 7, 10};
    for (int i = 0; i < 1000; ++i) {
        long long d = ds[rng.range(0, 6)];
        QuadReal a(Rat(rng.range(-30, 30), rng.range(1, 9)),
                   d ? Rat(rng.range(-30, 30), rng.range(1, 9)) : Rat(0), d);
        QuadReal b(Rat(rng.range(-30, 30), rng.range(1, 9)),
                   d ? Rat(rng.range(-30, 30), rng.range(1, 9)) : Rat(0), d);
        int exact = QuadReal::cmp(a, b);
        BigInt fa = scaled_floor(a), fb = scaled_floor(b);
        if (fa != fb) {
            CHECK(exact == (fa < fb ? -1 : 1));
        }
        double da = a.to_double(), db = b.to_double();
        if (std::abs(da - db) > 1e-9) {
            CHECK(exact == (da < db ? -1 : 1));
        }
    }
}

TEST_CASE("quadreal cross-radicand comparison") {
    QuadReal sqrt2 = QuadReal::sqrt_of(Rat(2));
    QuadReal sqrt3 = QuadReal::sqrt_of(Rat(3));
    CHECK(sqrt2 < sqrt3);
    CHECK(QuadReal::sqrt_of(Rat(8)) > QuadReal::sqrt_of(Rat(7)));
    QuadReal x = QuadReal(Rat(1)) + QuadReal::sqrt_of(Rat(2));  // 2.414
    QuadReal y = QuadReal::sqrt_of(Rat(6));                     // 2.449
    CHECK(x < y);
    CHECK(y > x);
}

TEST_CASE("quadreal arithmetic stays in one field and rejects mixing") {
    QuadReal a(Rat(1, 2), Rat(3, 2), 5);
    QuadReal b(Rat(-2), Rat(1, 3), 5);
    QuadReal s = a * b;
    CHECK(s == QuadReal(Rat(-1) + Rat(5, 2), Rat(1, 6) - Rat(3), 5));
    QuadReal q = a / b;
    CHECK(q * b == a);
    CHECK_THROWS(a + QuadReal(Rat(0), Rat(1), 3));
    CHECK((a - a).is_zero());
    // sqrt of a perfect square collapses to a rational
    CHECK(QuadReal::sqrt_of(Rat(9, 4)) == QuadReal(Rat(3, 2)));
    CHECK(QuadReal::sqrt_of(Rat(2, 3)) * QuadReal::sqrt_of(Rat(2, 3)) == QuadReal(Rat(2, 3)));
}

TEST_CASE("quadreal floor") {
    CHECK(QuadReal(Rat(7, 2)).floor().to_int64() == 3);
    CHECK(QuadReal::sqrt_of(Rat(2)).floor().to_int64() == 1);
    CHECK((-QuadReal::sqrt_of(Rat(2))).floor().to_int64() == -2);
    QuadReal golden = (QuadReal(1) + QuadReal::sqrt_of(Rat(5))) / QuadReal(2);
    CHECK(golden.floor().to_int64() == 1);
}

TEST_CASE("min_poly on hand-checked values and root-back substitution") {
    auto m1 = QuadReal(2).min_poly();
    CHECK(m1.str() == "x - 2");
    CHECK(m1.integer);

    auto m2 = QuadReal::sqrt_of(Rat(6)).min_poly();
    CHECK(m2.str() == "x^2 - 6");
    CHECK(m2.integer);

    QuadReal a = (QuadReal(3) + QuadReal::sqrt_of(Rat(5))) / QuadReal(2);
    auto m3 = a.min_poly();
    CHECK(m3.str() == "x^2 - 3x + 1");
    CHECK(m3.integer);

    // evaluating the minimal polynomial at the value gives exactly zero
    const QuadReal vals[] = {a, QuadReal::sqrt_of(Rat(6)), QuadReal(Rat(7, 3)),
                             QuadReal(Rat(1, 2), Rat(-5, 7), 3)};
    for (const auto& v : vals) {
        auto m = v.min_poly();
        QuadReal acc(0);
        QuadReal p(1);
        for (auto& c : m.coeffs) {
            acc += QuadReal(c) * p;
            p *= v;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("coeff simple extension field ops") {
    Coeff half(Rat(1, 2));
    CHECK((half + half).is_one());
    // adjoin a square root of 2
    Coeff r = Coeff(Rat(2)).kth_root(2);
    CHECK(!r.is_rational());
    CHECK(r * r == Coeff(Rat(2)));
    Coeff inv = (Coeff(Rat(1)) + r).inv();
    CHECK((Coeff(Rat(1)) + r) * inv == Coeff(Rat(1)));
    // rational perfect powers stay rational
    CHECK(Coeff(Rat(27, 8)).kth_root(3) == Coeff(Rat(3, 2)));
    CHECK(Coeff(Rat(-27)).kth_root(3) == Coeff(Rat(-3)));
    CHECK(Coeff(Rat(4)).kth_root(2) == Coeff(Rat(2)));
    // nested towers are rejected
    CHECK_THROWS(r.kth_root(2));
    // two distinct extensions cannot mix
    Coeff s = Coeff(Rat(3)).kth_root(2);
    CHECK_THROWS(r + s);
}

TEST_CASE("squarefree split") {
    BigInt sf, root;
    squarefree_split(BigInt(720), sf, root);  // 720 = 144 * 5
    CHECK(sf.to_int64() == 5);
    CHECK(root.to_int64() == 12);
    squarefree_split(BigInt(1), sf, root);
    CHECK(sf.to_int64() == 1);
    squarefree_split(BigInt(6), sf, root);
    CHECK(sf.to_int64() == 6);
    CHECK(root.to_int64() == 1);
}
