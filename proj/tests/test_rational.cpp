#include <doctest.h>

#include "support.hpp"

using namespace segre;
using namespace segre::testing;

TEST_CASE("gauss rational arithmetic is exact and canonical") {
    GaussRational a = gr(1, 2), b = gr(1, 3);
    CHECK((a + b) == gr(5, 6));
    CHECK((a * b) == gr(1, 6));
    CHECK((a - a).is_zero());

    // canonical reduced form out of non-reduced input
    GaussRational c(mpq_class(2, 4));
    CHECK(c.re_str() == "1/2");

    GaussRational i = GaussRational::i();
    CHECK((i * i) == gr(-1));
    CHECK((gri(1, 1) * gri(1, -1)) == gr(2));
}

TEST_CASE("division and conjugation") {
    GaussRational z = gri(1, 2, 3); // 1/3 + 2/3 i
    GaussRational w = gri(0, 1);    // i
    CHECK(z / w == gri(2, -1, 3));
    CHECK((z / z) == gr(1));
    CHECK(z.conj() == gri(1, -2, 3));
    CHECK((z * z.conj()).im_str() == "0");
    CHECK(z.norm2() == mpq_class(5, 9));
}

TEST_CASE("display forms") {
    CHECK(GaussRational().str() == "0");
    CHECK(gr(-1, 2).str() == "-1/2");
    CHECK(gri(0, 1).str() == "i");
    CHECK(gri(0, -1).str() == "-i");
    CHECK(gri(0, 2, 3).str() == "2/3i");
    CHECK(gri(1, -1, 2).str() == "1/2-1/2i");
}
