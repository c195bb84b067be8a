#include <gtest/gtest.h>

#include <random>

#include "commands.hpp"
#include "io.hpp"
#include "pidc/commutator/decompose.hpp"
#include "pidc/similarity/lr_form.hpp"
#include "test_support.hpp"

using namespace pidc;
using namespace pidc::testing;
using io::json;

namespace {

const IntegerRing ZZ;

io::RingDesc ring(const std::string& s) { return io::parse_ring_flag(s); }

json int_matrix(const std::vector<std::vector<long>>& rows) {
  return io::matrix_json(ring("Z"), from_ints(ZZ, rows));
}

cli::Options with_ring(const std::string& s) {
  cli::Options o;
  o.ring = ring(s);
  return o;
}

}  // namespace

TEST(RingDescriptor, ParseAndPrint) {
  EXPECT_EQ(io::ring_json(ring("Z")), json({{"ring", "Z"}}));
  EXPECT_EQ(io::ring_json(ring("F5[x]")), json({{"ring", "Fp[x]"}, {"p", 5}}));
  EXPECT_EQ(io::ring_json(ring("Z/12")), json({{"ring", "Z/N"}, {"N", "12"}}));
  EXPECT_EQ(io::ring_name(io::parse_ring(json{{"ring", "Fp"}, {"p", 7}})), "F7");
  EXPECT_THROW(ring("F4[x]"), io::ParseError);
  EXPECT_THROW(ring("Q"), io::ParseError);
  EXPECT_THROW(io::parse_ring(json{{"ring", "Z/N"}, {"N", "1"}}), io::ParseError);
}

TEST(MatrixJson, RoundTripIntegers) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 50; ++it) {
    auto a = random_int_matrix(rng, 1 + it % 5, 1000);
    a(0, 0) = Integer("-123456789012345678901234567890");
    auto j = io::matrix_json(ring("Z"), a);
    auto back = io::parse_int_matrix(json::parse(j.dump()), ring("Z"));
    EXPECT_EQ(back, a);
  }
  // Big values stay decimal strings.
  EXPECT_TRUE(io::encode(Integer("99999999999999999999999")).is_string());
}

TEST(MatrixJson, RoundTripPolynomials) {
  std::mt19937_64 rng(22);
  auto d = ring("F3[x]");
  for (int it = 0; it < 30; ++it) {
    auto a = random_poly_matrix(rng, 3, 2 + it % 3, 3);
    EXPECT_EQ(io::parse_poly_matrix(json::parse(io::matrix_json(d, a).dump()), d), a);
  }
}

TEST(MatrixJson, Rejections) {
  EXPECT_THROW(io::parse_int_matrix(json{{"ring", "Z"}, {"entries", {{"1", "x"}}}}, ring("Z")), io::ParseError);
  EXPECT_THROW(io::parse_int_matrix(json{{"ring", "Z"}, {"entries", {{"1", "2"}, {"3"}}}}, ring("Z")),
               io::ParseError);
  EXPECT_THROW(io::parse_int_matrix(json{{"ring", "Z/N"}, {"N", "12"}, {"entries", {{"12"}}}}, ring("Z/12")),
               io::ParseError);
  EXPECT_THROW(io::parse_int_matrix(json{{"ring", "Z/N"}, {"N", "8"}, {"entries", {{"1"}}}}, ring("Z/12")),
               io::ParseError);
}

TEST(WitnessJson, RoundTrip) {
  std::mt19937_64 rng(23);
  auto d = ring("Z");
  for (int it = 0; it < 20; ++it) {
    auto a = make_trace_zero(ZZ, random_int_matrix(rng, 3 + it % 3, 9));
    if (is_scalar(ZZ, a)) continue;
    auto w = decompose(ZZ, a);
    auto cw = io::parse_int_commutator(json::parse(io::commutator_json(d, w).dump()), d);
    EXPECT_EQ(cw.x, w.x);
    EXPECT_EQ(cw.y, w.y);
    EXPECT_EQ(cw.log, w.log);
    auto f = lr_form(ZZ, a);
    auto lf = io::parse_int_lr(json::parse(io::lr_json(d, f).dump()), d);
    EXPECT_EQ(lf.b, f.b);
    EXPECT_EQ(lf.witness.g, f.witness.g);
    EXPECT_EQ(lf.witness.g_inverse, f.witness.g_inverse);
    EXPECT_EQ(lf.witness.det, f.witness.det);
    EXPECT_EQ(lf.pivot, f.pivot);
    ASSERT_EQ(lf.probe_log.size(), f.probe_log.size());
    for (std::size_t k = 0; k < f.probe_log.size(); ++k) EXPECT_EQ(lf.probe_log[k].probe, f.probe_log[k].probe);
  }
}

TEST(CmdDecompose, Examples) {
  auto ok = cli::run("decompose", int_matrix({{1, 0}, {0, -1}}), {});
  ASSERT_EQ(ok.code, cli::kOk) << ok.message;
  EXPECT_TRUE(ok.output["verified"].get<bool>());
  auto bad = cli::run("decompose", int_matrix({{1, 0}, {0, 0}}), {});
  EXPECT_EQ(bad.code, cli::kPrecondition);
  EXPECT_TRUE(bad.output.is_null());
  EXPECT_EQ(cli::run("decompose", json{{"entries", "oops"}}, with_ring("Z")).code, cli::kUsage);
  EXPECT_EQ(cli::run("decompose", json{{"entries", {{"0"}}}}, {}).code, cli::kUsage);
  EXPECT_EQ(cli::run("frobnicate", json{}, {}).code, cli::kUsage);
}

TEST(CmdDecompose, BatchPreservesOrder) {
  auto opt = with_ring("Z");
  opt.n = 4;
  opt.count = 100;
  opt.bound = 50;
  opt.seed = 7;
  auto gen = cli::generate(opt);
  ASSERT_EQ(gen.code, cli::kOk);
  cli::Options run_opt;
  run_opt.threads = 4;
  auto res = cli::run("decompose", gen.output, run_opt);
  ASSERT_EQ(res.code, cli::kOk) << res.message;
  ASSERT_EQ(res.output["results"].size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& r = res.output["results"][i];
    EXPECT_EQ(r["A"]["entries"], gen.output["matrices"][i]["entries"]);
    EXPECT_TRUE(r["verified"].get<bool>());
  }
  auto ver = cli::run("verify", res.output, {});
  EXPECT_EQ(ver.code, cli::kOk) << ver.message;
}

TEST(CmdVerify, Examples) {
  auto res = cli::run("decompose", int_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, -6}}), {});
  ASSERT_EQ(res.code, cli::kOk);
  EXPECT_EQ(cli::run("verify", res.output, {}).code, cli::kOk);

  auto corrupted = res.output;
  auto& e = corrupted["Y"]["entries"][1][2];
  e = Integer(io::decode_integer(e) + 1).get_str();
  auto bad = cli::run("verify", corrupted, {});
  EXPECT_EQ(bad.code, cli::kVerificationFailure);
  EXPECT_NE(bad.message.find("entry ("), std::string::npos);

  auto wrong_tag = res.output;
  wrong_tag["X"]["ring"] = "Z/N";
  wrong_tag["X"]["N"] = "12";
  EXPECT_EQ(cli::run("verify", wrong_tag, {}).code, cli::kUsage);
  auto unknown_tag = res.output;
  unknown_tag["A"]["ring"] = "R";
  EXPECT_EQ(cli::run("verify", unknown_tag, {}).code, cli::kUsage);
}

TEST(CmdNormalForm, Examples) {
  EXPECT_EQ(cli::run("normal-form", int_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), {}).code, cli::kPrecondition);
  auto two = cli::run("normal-form", int_matrix({{1, 2}, {3, 4}}), {});
  EXPECT_EQ(two.code, cli::kPrecondition);
  EXPECT_EQ(two.message, "n >= 3 required");
  std::mt19937_64 rng(24);
  for (int it = 0; it < 20; ++it) {
    auto a = random_int_matrix(rng, 3 + it % 3, 20);
    auto res = cli::run("normal-form", io::matrix_json(ring("Z"), a), {});
    ASSERT_EQ(res.code, cli::kOk) << res.message;
    EXPECT_EQ(cli::run("verify", res.output, {}).code, cli::kOk);
  }
}

TEST(CmdZeroDiag, Examples) {
  auto res = cli::run("zero-diag", int_matrix({{1, 0}, {0, -1}}), {});
  EXPECT_EQ(res.code, cli::kPrecondition);
  EXPECT_NE(res.message.find('2'), std::string::npos);
  auto ok = cli::run("zero-diag", int_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, -6}}), {});
  ASSERT_EQ(ok.code, cli::kOk) << ok.message;
  EXPECT_EQ(cli::run("verify", ok.output, {}).code, cli::kOk);
}

TEST(CmdGen, Reproducible) {
  auto opt = with_ring("Z/12");
  opt.count = 30;
  opt.seed = 1;
  auto a = cli::generate(opt), b = cli::generate(opt);
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.output["seed"], 1);
  for (const auto& m : a.output["matrices"]) {
    auto x = io::parse_int_matrix(m, ring("Z/12"));
    for (const auto& v : x.data()) EXPECT_TRUE(v >= 0 && v < 12);
    EXPECT_EQ(Integer(x.trace() % 12), 0);
  }
  opt.count = 0;
  EXPECT_TRUE(cli::generate(opt).output["matrices"].empty());
  opt.bound = 0;
  EXPECT_EQ(cli::generate(opt).code, cli::kUsage);
}

TEST(CmdFieldDecompose, PrimeField) {
  auto opt = with_ring("F3");
  opt.count = 20;
  auto gen = cli::generate(opt);
  cli::Options v;
  v.oracle = true;
  auto res = cli::run("field-decompose", gen.output, {});
  ASSERT_EQ(res.code, cli::kOk) << res.message;
  EXPECT_EQ(cli::run("verify", res.output, v).code, cli::kOk);
  EXPECT_EQ(cli::run("field-decompose", int_matrix({{1, 0}, {0, -1}}), {}).code, cli::kPrecondition);
}

TEST(CmdRegularCheck, Oracle) {
  cli::Options opt;
  opt.prime = "2";
  opt.oracle = true;
  auto res = cli::run("regular-check", int_matrix({{1, 0}, {0, 3}}), opt);
  ASSERT_EQ(res.code, cli::kOk) << res.message;
  EXPECT_TRUE(res.output["regularOverFractions"].get<bool>());
  EXPECT_FALSE(res.output["modPrime"]["regular"].get<bool>());
  EXPECT_EQ(res.output["modPrime"]["oracle"]["centraliserDim"], 4);
  auto pn = cli::run("regular-check", io::matrix_json(ring("Z"), pn_matrix(ZZ, 4)), opt);
  ASSERT_EQ(pn.code, cli::kOk);
  EXPECT_FALSE(pn.output["certificate"].is_null());
}
