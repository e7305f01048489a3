#include "doctest.h"

#include "samplers.hpp"
#include "toolkit/compalg.hpp"

using namespace toolkit;
using O = OctonionElement;

TEST_CASE("octonion table spot values") {
  CHECK(O::basis(1) * O::basis(2) == O::basis(4));
  CHECK(O::basis(1) * O::basis(3) == O::basis(7));
  CHECK(O::basis(2) * O::basis(4) == O::basis(1));
  CHECK(O::basis(4) * O::basis(2) == -O::basis(1));
  for (size_t i = 1; i < 8; ++i) CHECK(O::basis(i) * O::basis(i) == -O::basis(0));
  Engine g(1);
  O x = samplers::octonion(g);
  CHECK(O::basis(0) * x == x);
  CHECK(x * O::basis(0) == x);
  CHECK_NOTHROW(octonion_table().validate());
}

TEST_CASE("each line relation e_i e_{i+1} = e_{i+3} holds") {
  auto lab = [](int k) { return size_t((k - 1) % 7 + 1); };
  for (int i = 1; i <= 7; ++i) {
    CHECK(O::basis(lab(i)) * O::basis(lab(i + 1)) == O::basis(lab(i + 3)));
    CHECK(O::basis(lab(i + 1)) * O::basis(lab(i + 3)) == O::basis(lab(i)));
    CHECK(O::basis(lab(i + 3)) * O::basis(lab(i)) == O::basis(lab(i + 1)));
  }
}

TEST_CASE("norm trace conj") {
  CHECK(norm(O::basis(0)) == Rational(1));
  CHECK(norm(O::basis(3)) == Rational(1));
  O h;
  for (size_t i = 0; i < 8; ++i) h[i] = Rational(1, 2);
  CHECK(norm(h) == Rational(2));
  CHECK(trace(h) == Rational(1));
  CHECK(conj(conj(h)) == h);
}

TEST_CASE("alternativity and norm multiplicativity on seeded pairs") {
  Engine g(500);
  for (int t = 0; t < 500; ++t) {
    O x = samplers::octonion(g), y = samplers::octonion(g);
    CHECK((x * x) * y == x * (x * y));
    CHECK((y * x) * x == y * (x * x));
    CHECK((x * y) * x == x * (y * x));
    CHECK(norm(x * y) == norm(x) * norm(y));
    CHECK(conj(x * y) == conj(y) * conj(x));
  }
}

TEST_CASE("maximal order membership") {
  O h;
  for (size_t i = 0; i < 8; ++i) h[i] = Rational(1, 2);
  CHECK(in_maximal_order(h));
  CHECK_FALSE(in_maximal_order(O::basis(0)));
  CHECK(in_maximal_order(O::basis(0) + O::basis(1)));
  O q = h;
  q[3] = Rational(-1, 2);
  CHECK_FALSE(in_maximal_order(q));  // coordinate sum 3
  q[3] = Rational(5, 2);  // coordinate sum 6
  CHECK(in_maximal_order(q));
  O mixed = O::basis(0) + Rational(1, 2) * O::basis(1);
  CHECK_FALSE(in_maximal_order(mixed));
}

TEST_CASE("maximal order is closed under + and * at desk scale") {
  for (auto& e : maximal_order_generators()) CHECK(in_maximal_order(e));
  auto gens = maximal_order_generators();
  for (auto& a : gens)
    for (auto& b : gens) CHECK(in_maximal_order(a * b));
  Engine g(200);
  for (int t = 0; t < 200; ++t) {
    O x = samplers::maximal_order_element(g), y = samplers::maximal_order_element(g);
    CHECK(in_maximal_order(x + y));
    CHECK(in_maximal_order(x * y));
    CHECK(norm(x).is_integer());
    CHECK(trace(x).is_integer());
  }
}

TEST_CASE("derivation algebras") {
  auto der_o = derivation_algebra(octonion_table());
  CHECK(der_o.size() == 14);
  CHECK(commutator_closed(der_o));
  CHECK(derivation_algebra(rational_field()).empty());
  auto der_h = derivation_algebra(quaternion_subtable());
  CHECK(der_h.size() == 3);
  CHECK(commutator_closed(der_h));
  for (auto& d : der_o) CHECK(is_derivation(octonion_table(), d.matrix));
}

TEST_CASE("is_derivation rejects non-derivations") {
  auto alg = octonion_table();
  CHECK_FALSE(is_derivation(alg, RationalMatrix::identity(8)));
  CHECK(is_derivation(alg, RationalMatrix(8, 8)));
}

TEST_CASE("validate catches a broken table") {
  auto alg = quaternion_subtable();
  alg.table[1 * 4 + 2] = {{3, Rational(-1)}};  // e1 e2 = -e4, no longer anti-automorphic with e2 e1 = -e4
  CHECK_THROWS_AS(alg.validate(), InvalidArgument);
}
