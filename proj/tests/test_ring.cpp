#include "doctest.h"
#include "dimsub/ring.hpp"
#include "support.hpp"

using namespace dimsub;

namespace {
const Word gx = Word::generator(0), gy = Word::generator(1);
RingElement one() { return RingElement::scalar(1); }
}  // namespace

TEST_CASE("ring multiplication examples") {
  RingElement a = gx - one(), b = gy - one();
  CHECK(a * b == RingElement(gx * gy) - gx - gy + one());
  CHECK((a * RingElement{}).is_zero());
  // expanding both products by hand leaves uv - vu
  RingElement lhs = (one() - gx) * (one() - gy) - (one() - gy) * (one() - gx);
  CHECK(lhs.coefficient(gx * gy) == 1);
  CHECK(lhs.coefficient(gy * gx) == -1);
  CHECK(lhs.support_size() == 2);
}

TEST_CASE("augmentation, involution and delta") {
  CHECK(augmentation(gx - one()) == 0);
  CHECK(augmentation(RingElement::term(3, gx) + RingElement::term(2, gy)) == 5);
  CHECK(involution(one() - gx) == one() - gx.inverse());
  CHECK(involution((gx - one()) * (gy - one())) == (gy.inverse() - one()) * (gx.inverse() - one()));
  CHECK(delta_element(Word{}).is_zero());
  CHECK(delta_element(gx.inverse()) == -(RingElement(gx.inverse()) * delta_element(gx)));
}

TEST_CASE("ring axioms and identities on random elements") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto a = testsupport::random_element(rng, 3, 8, 4);
    auto b = testsupport::random_element(rng, 3, 8, 4);
    auto c = testsupport::random_element(rng, 3, 8, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(augmentation(a * b) == augmentation(a) * augmentation(b));
    CHECK(involution(involution(a)) == a);
    CHECK(involution(a * b) == involution(b) * involution(a));
    Word h1 = testsupport::random_word(rng, 3, 6), h2 = testsupport::random_word(rng, 3, 6);
    CHECK(delta_element(h1 * h2) ==
          delta_element(h1) + delta_element(h2) + delta_element(h1) * delta_element(h2));
  }
}

TEST_CASE("support cap") {
  RingElement a, b;
  for (int i = 0; i < 20; ++i) {
    a.add_term(gx.pow(i), 1);
    b.add_term(gy.pow(i), 1);
  }
  CHECK_THROWS_AS(RingElement::multiply(a, b, 100), CapExceeded);
  CHECK(RingElement::multiply(a, b, 400).support_size() == 400);
}

TEST_CASE("ring element literal") {
  Alphabet al({"x", "y"});
  RingElement e = parse_ring_element("2*[x,y] - 1 + x^-1", al);
  CHECK(e.coefficient(commutator(gx, gy)) == 2);
  CHECK(e.coefficient(Word{}) == -1);
  CHECK(e.coefficient(gx.inverse()) == 1);
  CHECK(parse_ring_element(e.format(al), al) == e);
  CHECK(parse_ring_element("x^-2 - x^-2", al).is_zero());
}
