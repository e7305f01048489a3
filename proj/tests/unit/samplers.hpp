#pragma once
// seeded generators shared by the property tests

#include "toolkit/compalg.hpp"
#include "toolkit/rng.hpp"

namespace samplers {

inline toolkit::Rational small_rational(toolkit::Engine& g, long num = 5, long den = 3) {
  return toolkit::Rational(toolkit::draw(g, -num, num), toolkit::draw(g, 1, den));
}

inline toolkit::OctonionElement octonion(toolkit::Engine& g, long num = 5, long den = 3) {
  toolkit::OctonionElement x;
  for (size_t i = 0; i < 8; ++i) x[i] = small_rational(g, num, den);
  return x;
}

// small integer combination of the chosen generators of the maximal order
inline toolkit::OctonionElement maximal_order_element(toolkit::Engine& g) {
  auto gens = toolkit::maximal_order_generators();
  toolkit::OctonionElement x;
  for (auto& e : gens) x = x + toolkit::Rational(toolkit::draw(g, -2, 2)) * e;
  return x;
}

}  // namespace samplers

#include "toolkit/jordan.hpp"

namespace samplers {

inline toolkit::JordanElement jordan(toolkit::Engine& g, const toolkit::GammaVector& gamma, long num = 4, long den = 2) {
  toolkit::JordanElement x(gamma);
  for (size_t i = 0; i < 3; ++i) {
    x.xi(i) = small_rational(g, num, den);
    x.x(i) = octonion(g, num, den);
  }
  return x;
}

inline toolkit::JordanElement jordan_order_element(toolkit::Engine& g, const toolkit::GammaVector& gamma) {
  toolkit::JordanElement x(gamma);
  for (size_t i = 0; i < 3; ++i) {
    x.xi(i) = toolkit::draw(g, -3, 3);
    x.x(i) = maximal_order_element(g);
  }
  return x;
}

}  // namespace samplers
