#include "ltk/io.hpp"
#include "ltk/sampling.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <string>

using namespace ltk;

namespace {

std::string error_of(const std::string& text) {
  try {
    config_point_from_json(json::parse(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST(ConfigJson, RoundTripIsBitIdentical) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const ConfigPoint z = sample_complex_point(rng, rng.uniform_int(1, 4), rng.uniform_int(1, 5), 1e3);
    const std::string text = to_json(z).dump();
    const ConfigPoint back = config_point_from_json(json::parse(text));
    EXPECT_TRUE(bit_equal(back.matrix(), z.matrix()));
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(ConfigJson, Schema) {
  CMatrix m = CMatrix::Zero(3, 2);
  m(0, 1) = Complex(0.5, -2.0);
  const json j = to_json(ConfigPoint(m));
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["re"][0][1], 0.5);
  EXPECT_EQ(j["im"][0][1], -2.0);
}

TEST(ConfigJson, Errors) {
  EXPECT_NE(error_of(R"({"n":2,"N":1,"re":[[1],[0],[0]]})").find("\"im\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":2,"N":0,"re":[[],[],[]],"im":[[],[],[]]})").find("\"N\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":0,"N":1,"re":[[1]],"im":[[1]]})").find("\"n\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"N":1,"re":[[1],[0]],"im":[[1],["NaN"]]})").find("\"im\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"N":1,"re":[[1],[0]],"im":[[1],[null]]})").find("\"im\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"N":2,"re":[[1,0],[0]],"im":[[1,0],[0,0]]})").find("\"re\""), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"N":1,"re":[[1],[0],[0]],"im":[[1],[0]]})").find("\"re\""), std::string::npos);
  EXPECT_NE(error_of(R"([1,2])").find("\"n\""), std::string::npos);
  EXPECT_THROW(parse_json_text("{\"n\":", "input"), ParseError);
}

TEST(GroupJson, RoundTrip) {
  const GroupElement g = random_group_element(3, 72, 0.5, Realness::complex);
  const json j = to_json(g);
  EXPECT_EQ(j["classification"], "complex_SO");
  const GroupElement back = group_element_from_json(json::parse(j.dump()));
  EXPECT_TRUE(bit_equal(back.matrix(), g.matrix()));
  EXPECT_EQ(back.classification(), g.classification());
}

TEST(CartanJson, RoundTrip) {
  CartanParams p;
  p.variant = CartanVariant::H1;
  p.circle = std::make_pair(0.6, 0.8);
  p.hyperbolas = {{1.25, 0.75}};
  const CartanParams back = cartan_params_from_json(json::parse(to_json(p).dump()));
  EXPECT_EQ(back.variant, p.variant);
  EXPECT_EQ(back.circle, p.circle);
  EXPECT_EQ(back.hyperbolas, p.hyperbolas);
  EXPECT_THROW(cartan_params_from_json(json{{"variant", "H3"}}), ParseError);
  EXPECT_THROW(cartan_params_from_json(json{{"variant", "H0"}, {"hyperbolas", json::array()}}), ParseError);
}

TEST(Report, Header) {
  const json h = report_header("rho", 42, Tolerance{});
  EXPECT_EQ(h["command"], "rho");
  EXPECT_EQ(h["seed"], 42);
  EXPECT_EQ(h["version"], kVersion);
  EXPECT_EQ(h["tolerance"]["abs_tol"], Tolerance{}.abs_tol);
  EXPECT_TRUE(h.contains("timestamp"));
}
