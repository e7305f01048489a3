#include "doctest.h"

#include <fstream>
#include <sstream>

#include "toolkit/domaincat.hpp"

using namespace toolkit;

namespace {
std::vector<std::string> chain_str(const FamilyDescriptor& d) {
  std::vector<std::string> out;
  for (auto& t : boundary_chain(d)) out.push_back(t.to_string());
  return out;
}
using SV = std::vector<std::string>;
}  // namespace

TEST_CASE("tits index labels") {
  CHECK(tits_index({Family::S2, 4, 0, 2}) == "C^(2)_{4,2}");
  CHECK(tits_index({Family::O2, 6, 0, 2}) == "D^(2)_{3,2}");
  CHECK(tits_index({Family::O2, 5, 0, 2}) == "2D^(2)_{2,2}");
  CHECK(tits_index({Family::U2, 0, 2, 1, 4, 2}) == "2A^(2)_{5,1}");
  CHECK(tits_index({Family::U1, 0, 0, 1, 4, 1}) == "2A_{4,1}");
  CHECK(tits_index({Family::S1, 3}) == "C_{3,3}");
  CHECK(tits_index({Family::O1, 6, 0, 2}) == "D_{6,2}");
  CHECK(tits_index({Family::O1, 8, 0, 1}) == "2D_{8,1}");
  CHECK(tits_index({Family::O1, 7, 0, 2}) == "B_{7,2}");
  CHECK(tits_index({Family::E7_28}) == "E^28_{7,3}");
}

TEST_CASE("boundary chains") {
  CHECK(chain_str({Family::S1, 3}) == SV{"III_2", "III_1", "pt"});
  CHECK(chain_str({Family::O2, 5, 0, 2}) == SV{"II_3", "II_1"});
  CHECK(chain_str({Family::U2, 0, 2, 1, 4, 2}) == SV{"I_{2,0}"});
  CHECK(chain_str({Family::E7_28}) == SV{"IV_10", "IV_1", "pt"});
  CHECK(chain_str({Family::E7_31}) == SV{"IV_10", "IV_1"});
  CHECK(chain_str({Family::E6_16}) == SV{"I_{5,1}", "pt"});
  CHECK(chain_str({Family::E6_35}) == SV{"I_{5,1}"});
  CHECK(chain_str({Family::E6_78}).empty());
  CHECK(chain_str({Family::O1, 5, 0, 2}) == SV{"IV_1", "pt"});
  CHECK(chain_str({Family::O1, 5, 0, 1}) == SV{"pt"});
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(validate({Family::O2, 5, 0, 3}), InvalidArgument);
  CHECK_THROWS_AS(validate({Family::U2, 0, 2, 2, 4, 2}), InvalidArgument);
  CHECK_THROWS_AS(validate({Family::U2, 0, 2, 1, 4, 3}), InvalidArgument);  // d does not divide p+q
  CHECK_THROWS_AS(validate({Family::U1, 0, 0, 1, 1, 2}), InvalidArgument);
  CHECK_THROWS_AS(validate({Family::S1, 3, 0, 2}), InvalidArgument);
  CHECK_THROWS_AS(validate({Family::E7_28, 0, 0, 2}), InvalidArgument);
  CHECK_THROWS_AS(parse_family("O.3"), InvalidArgument);
  CHECK(parse_family("S2") == Family::S2);
  CHECK(validate({Family::E6_16}).s == 2);
}

TEST_CASE("incident types") {
  FamilyDescriptor u1{Family::U1, 0, 0, 2, 5, 3};
  CHECK(incident_symmetric_type(u1, 1).type.to_string() == "I_{4,2} x I_{1,1}");
  CHECK(incident_symmetric_type(u1, 2).type.to_string() == "I_{3,1} x I_{2,2}");
  CHECK_THROWS_AS(incident_symmetric_type(u1, 3), InvalidArgument);
  CHECK_THROWS_AS(incident_symmetric_type(u1, 0), InvalidArgument);
  auto u1p = incident_symmetric_type({Family::U1, 0, 0, 1, 4, 1}, 1);
  CHECK(u1p.point_boundary);
  CHECK(u1p.type.to_string() == "I_{3,1}");
  CHECK(incident_symmetric_type({Family::O1, 7, 0, 2}, 2).type.to_string() == "IV_6");
  auto s2 = incident_symmetric_type({Family::S2, 4, 0, 2}, 2);
  CHECK(s2.point_boundary);
  CHECK(s2.exception);
  CHECK(s2.type.to_string() == "(III_2)^2");
  CHECK_FALSE(incident_symmetric_type({Family::S2, 5, 0, 2}, 2).exception);
  CHECK(incident_symmetric_type({Family::S1, 3}, 3).type.to_string() == "(III_1)^3");
  CHECK(incident_symmetric_type({Family::O2, 7, 0, 3}, 3).type.to_string() == "II_6");
  CHECK(incident_symmetric_type({Family::O2, 6, 0, 3}, 3).type.to_string() == "(II_2)^3");
  CHECK(incident_symmetric_type({Family::U2, 0, 2, 1, 4, 2}, 1).type.to_string() == "I_{2,2}");
  auto e7 = incident_symmetric_type({Family::E7_28}, 3);
  CHECK(e7.alternatives.size() == 2);
  CHECK(e7.alternatives[1].to_string() == "II_6");
  CHECK(incident_symmetric_type({Family::E6_16}, 2).alternatives.size() == 3);
}

TEST_CASE("ed set") {
  CHECK(is_ed_domain(I(3, 3)));
  CHECK_FALSE(is_ed_domain(I(4, 1)));
  CHECK_FALSE(is_ed_domain(II(5)));
  CHECK(is_ed_domain(II(6)));
  CHECK(is_ed_domain(III(2)));
  CHECK_FALSE(is_ed_domain(IV(5)));
}

TEST_CASE("parabolic shape dimensions") {
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= p; ++q) {
      auto s = parabolic_shape(I(p, q), true);
      CHECK(s.dim_V == q * (p - q));
      CHECK(s.dim_DN == std::vector<int>{q * (p - 1)});
    }
  for (int n : {3, 5, 7, 9}) CHECK(parabolic_shape(II(n), true).dim_V == n - 1);
  CHECK(parabolic_shape(II(8), true).dim_V == 0);  // tube
  CHECK(parabolic_shape(II(7), true).dim_DN == std::vector<int>{10});
  auto v = parabolic_shape(domain_of({Family::E6_16}), true);
  CHECK(v.dim_V == 16);
  CHECK(v.dim_DN == std::vector<int>{8, 10, 8});
  CHECK(parabolic_shape(III(4), true).dim_V == 0);
  CHECK(parabolic_shape(IV(9), true).dim_V == 0);
  CHECK_FALSE(parabolic_shape(I(3, 1), false).dim_V.has_value());
}

TEST_CASE("exceptional index table") {
  auto all = exceptional_indices();
  CHECK(all.size() == 7);
  size_t excluded = 0;
  for (auto& e : all)
    if (e.excluded) {
      ++excluded;
      CHECK(e.label == "2E^29_{6,1}");
      CHECK_FALSE(e.reason.empty());
      CHECK_FALSE(e.family.has_value());
    }
  CHECK(excluded == 1);
}

// chain length is s, ranks strictly drop, incident products lead with the chain entry
TEST_CASE("catalogue invariants over the corpus") {
  auto corpus = snapshot_corpus(4);
  CHECK(corpus.size() > 100);
  for (auto& d : corpus) {
    CAPTURE(describe(d));
    auto e = catalogue_entry(d);
    CHECK(e.chain.size() == size_t(e.desc.s));
    int prev = e.domain.rank();
    for (auto& c : e.chain) {
      CHECK(c.rank() < prev);
      prev = c.rank();
    }
    for (size_t i = 1; i < e.chain.size(); ++i) {
      int step = e.chain[i - 1].dim() > 0 && e.chain[i].factors[0].sym == e.chain[i - 1].factors[0].sym
                     ? (e.chain[i - 1].factors[0].n - e.chain[i].factors[0].n)
                     : 0;
      if (d.family == Family::O2 || d.family == Family::S2) CHECK(step == 2);
      if (d.family == Family::U2) CHECK(e.chain[i - 1].factors[0].p - e.chain[i].factors[0].p == d.d);
    }
    for (size_t b = 0; b < e.incident.size(); ++b) {
      auto& t = e.incident[b];
      CHECK(t.point_boundary == e.chain[b].is_point());
      if (!t.point_boundary) {
        REQUIRE(t.type.factors.size() == 2);
        CHECK(DomainType{{t.type.factors[0]}} == e.chain[b]);
      }
      CHECK(t.exception == (d.family == Family::S2 && t.point_boundary));
    }
  }
}

TEST_CASE("catalogue snapshot") {
  std::ifstream in(TOOLKIT_SNAPSHOT_DIR "/catalogue_rank3.txt");
  REQUIRE(in.good());
  std::vector<std::string> want;
  for (std::string line; std::getline(in, line);) want.push_back(line);
  std::vector<std::string> got;
  for (auto& d : snapshot_corpus(3)) got.push_back(snapshot_line(catalogue_entry(d)));
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
}
