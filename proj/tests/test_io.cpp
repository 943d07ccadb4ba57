#include <doctest.h>

#include <sstream>

#include "sdnls/io.hpp"
#include "support.hpp"

using namespace sdnls;

TEST_CASE("field csv round trip") {
  const TorusField f = sdnls::testing::random_field(6, 3);
  std::stringstream ss;
  write_field_csv(ss, f);
  CHECK(ss.str().rfind("k,re,im\n", 0) == 0);
  const TorusField back = read_field_csv(ss);
  REQUIRE(back.bandwidth() == 6);
  for (int k = -6; k <= 6; ++k) CHECK(back.at(k) == f.at(k));
}

TEST_CASE("field csv golden file") {
  TorusField f(1);
  f.set(-1, Complex(0.5, -0.25));
  f.set(0, Complex(1.0, 0.0));
  f.set(1, Complex(0.0, 2.0));
  std::stringstream ss;
  write_field_csv(ss, f);
  CHECK(ss.str() == "k,re,im\n-1,0.5,-0.25\n0,1,0\n1,0,2\n");
}

TEST_CASE("kernel debug dump uses the field layout") {
  auto base = std::make_shared<const BrownianPath>(sample_brownian(3, 1.0, 1.0 / 64.0));
  const WongZakaiPath wz(base, 1.0 / 8.0, kNoTruncation);
  const KernelTable K = sdlri_kernel(wz, 0.25, 1.0 / 8.0, 4);
  std::stringstream ss;
  write_kernel_csv(ss, K);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "k,re,im");
  int rows = 0;
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 9);  // k = -4..4
  // zero mode row carries tau exactly
  std::stringstream again;
  write_kernel_csv(again, K);
  std::string text = again.str();
  CHECK(text.find("\n0,0.125,0\n") != std::string::npos);
}

TEST_CASE("path csv starts at w = 0") {
  const BrownianPath p = sample_brownian(4, 1.0, 0.25);
  std::stringstream ss;
  write_path_csv(ss, p);
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  CHECK(header == "t,W");
  CHECK(first == "0,0");
}

TEST_CASE("error table csv round trip with the contracted header") {
  ErrorTable table;
  for (int i = 0; i < 3; ++i) {
    ErrorRow r;
    r.scheme = i == 0 ? "sdlri" : "relaxed_cn";
    r.tau = std::ldexp(1.0, -4 - i);
    r.delta = 1.0 / 4096.0;
    r.N = 128;
    r.s = 1.0;
    r.samples = 20;
    r.error = 1e-3 / (i + 1.0);
    r.seed = 2024;
    r.valid = i != 2;
    table.rows.push_back(r);
  }
  std::stringstream ss;
  write_table_csv(ss, table);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "scheme,tau,delta,N,s,M,error,seed,valid");
  ss.seekg(0);
  const ErrorTable back = read_table_csv(ss);
  REQUIRE(back.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.rows[i].scheme == table.rows[i].scheme);
    CHECK(back.rows[i].tau == table.rows[i].tau);
    CHECK(back.rows[i].error == table.rows[i].error);
    CHECK(back.rows[i].valid == table.rows[i].valid);
  }
}

TEST_CASE("dyadic time literals parse exactly") {
  CHECK(parse_time("2^-12", 0.0) == std::ldexp(1.0, -12));
  CHECK(parse_time("3*2^-10", 0.0) == 3.0 * std::ldexp(1.0, -10));
  CHECK(parse_time("2^0", 0.0) == 1.0);

  bool snapped = false;
  const double h = std::ldexp(1.0, -20);
  const double t = parse_time("0.1", h, &snapped);
  CHECK(snapped);
  CHECK(t == std::round(0.1 / h) * h);

  snapped = true;
  CHECK(parse_time("0.25", h, &snapped) == 0.25);
  CHECK(!snapped);  // exact dyadic decimal needs no snapping

  CHECK_THROWS_AS(parse_time("abc", h), ConfigError);
  CHECK_THROWS_AS(parse_time("10^-3", h), ConfigError);
}

TEST_CASE("truncation literals") {
  CHECK(parse_truncation("inf") == kNoTruncation);
  CHECK(parse_truncation("2.5") == 2.5);
  CHECK_THROWS_AS(parse_truncation("0.5"), ConfigError);
}

TEST_CASE("key = value config parsing") {
  std::stringstream ss("# comment\n tau = 2^-6 \nscheme=sdlri\n\nN = 128 # trailing\n");
  const auto kv = parse_key_value_config(ss);
  REQUIRE(kv.size() == 3);
  CHECK(kv.at("tau") == "2^-6");
  CHECK(kv.at("scheme") == "sdlri");
  CHECK(kv.at("N") == "128");

  std::stringstream bad("tau 2^-6\n");
  CHECK_THROWS_AS(parse_key_value_config(bad), ConfigError);
}

TEST_CASE("manifest round trips losslessly") {
  RunManifest m;
  m.command = "study";
  m.timestamp = current_timestamp();
  m.master_seed = 12345;
  m.params = {{"kind", "strong"}, {"tau", "2^-4,2^-5"}, {"N", "128"}};
  m.outputs = {"table.csv"};
  const RunManifest back = RunManifest::from_json(m.to_json());
  CHECK(back == m);
}
