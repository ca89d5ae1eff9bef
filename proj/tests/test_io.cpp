#include <gtest/gtest.h>

#include <zetadrive/config.hpp>
#include <zetadrive/csv.hpp>
#include <zetadrive/io.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace zetadrive;

TEST(Csv, DoublesRoundTripBitExact) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-1e6, 1e6);
  for (int i = 0; i < 5000; ++i) {
    const double v = U(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(csv::parse_double(csv::format_double(v)), v);
  }
  for (double v : {0.0, -0.0, 5e-324, std::numeric_limits<double>::max(), 0.1}) {
    EXPECT_EQ(csv::parse_double(csv::format_double(v)), v);
  }
}

TEST(Csv, NonFiniteValues) {
  EXPECT_EQ(csv::format_double(std::nan("")), "nan");
  EXPECT_EQ(csv::format_double(HUGE_VAL), "inf");
  EXPECT_EQ(csv::format_double(-HUGE_VAL), "-inf");
  EXPECT_TRUE(std::isnan(csv::parse_double("nan")));
  EXPECT_EQ(csv::parse_double("-inf"), -HUGE_VAL);
}

TEST(Csv, MalformedNumbersAreUsageErrors) {
  EXPECT_THROW(csv::parse_double(""), UsageError);
  EXPECT_THROW(csv::parse_double("1.5x"), UsageError);
  EXPECT_THROW(csv::parse_int("3.0"), UsageError);
  EXPECT_EQ(csv::parse_int("-12"), -12);
}

TEST(Csv, SplitKeepsEmptyFields) {
  const auto f = csv::split("a,,b,");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "");
  EXPECT_EQ(f[3], "");
}

TEST(Csv, ReadTableErrors) {
  std::istringstream empty("");
  EXPECT_THROW(csv::read_table(empty), UsageError);
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(csv::read_table(ragged), UsageError);
  std::istringstream crlf("a,b\r\n1,2\r\n\r\n");
  const auto t = csv::read_table(crlf);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1], "2");
  EXPECT_THROW(t.column("c"), UsageError);
}

TEST(ScanCsv, HeaderAndRoundTrip) {
  ScanRecord r;
  r.E = 14.25;
  r.omega = 8.0;
  r.S = -0.123456789012345678;
  r.deltaS = 0.0321;
  r.shots = 2000;
  r.seed = 42;
  r.P_hat = {0.5, 0.49, 0.51, 0.1, 0.9, 1.0 / 3.0};
  std::stringstream ss;
  io::write_scan(ss, {r});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "E,omega,S,deltaS,shots,seed,P5,P10,P15,P20,P25,P30");
  ss.seekg(0);
  const auto back = io::read_scan(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].E, r.E);
  EXPECT_EQ(back[0].S, r.S);
  EXPECT_EQ(back[0].deltaS, r.deltaS);
  EXPECT_EQ(back[0].shots, 2000);
  EXPECT_EQ(back[0].seed, 42u);
  EXPECT_EQ(back[0].P_hat, r.P_hat);
  EXPECT_TRUE(back[0].ok());
}

TEST(ScanCsv, NonFiniteSMarksRecord) {
  std::istringstream in("E,omega,S,deltaS,shots,seed\n20,8,nan,0,0,1\n");
  const auto recs = io::read_scan(in);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].ok());
}

TEST(ZerosCsv, CatalogueJoin) {
  ZeroEstimate near, far;
  near.mean = 14.14;
  near.std = 0.02;
  near.n_retained = 4000;
  far.mean = 17.0;
  far.kind = ZeroKind::re_only;
  std::stringstream ss;
  io::write_zeros(ss, {near, far});
  const auto t = csv::read_table(ss);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.header, (std::vector<std::string>{"index", "kind", "E_mean", "E_std", "n_retained",
                                                "exact_E", "abs_error"}));
  EXPECT_EQ(t.rows[0][t.column("exact_E")], "14.135");
  EXPECT_NEAR(csv::parse_double(t.rows[0][t.column("abs_error")]), 0.005, 1e-12);
  EXPECT_EQ(t.rows[1][t.column("kind")], "re_only");
  EXPECT_EQ(t.rows[1][t.column("exact_E")], "");
  EXPECT_EQ(t.rows[1][t.column("abs_error")], "");
}

TEST(ZerosCsv, ReadMeansWithAndWithoutKind) {
  std::istringstream with_kind("index,kind,E_mean\n1,riemann,14.1\n2,re_only,17\n3,riemann,21\n");
  EXPECT_EQ(io::read_zero_means(with_kind, true), (std::vector<double>{14.1, 21.0}));
  std::istringstream all("index,kind,E_mean\n1,riemann,14.1\n2,re_only,17\n");
  EXPECT_EQ(io::read_zero_means(all, false), (std::vector<double>{14.1, 17.0}));
  std::istringstream bare("index,E_mean,E_std\n1,14.03,0.03\n2,20.96,0.03\n");
  EXPECT_EQ(io::read_zero_means(bare, true), (std::vector<double>{14.03, 20.96}));
}

TEST(Config, ParseOverridesDefaults) {
  RunConfig cfg;
  std::istringstream in(
      "# recipe\n"
      "omega = 16   # trailing comment\n"
      "\n"
      "e_min=20\n"
      "  shots = auto\n"
      "seed = 7\n"
      "output_dir = out/run 1\n");
  const auto seen = parse_config(in, cfg);
  EXPECT_EQ(cfg.omega, 16.0);
  EXPECT_EQ(cfg.e_min, 20.0);
  EXPECT_EQ(cfg.e_max, 105.0);
  EXPECT_EQ(cfg.shots, -1);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.output_dir, "out/run 1");
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(seen.at("shots"), "auto");
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Defaults) {
  const RunConfig cfg;
  EXPECT_EQ(cfg.n_terms, 500);
  EXPECT_EQ(cfg.n_boot, 4000);
  EXPECT_EQ(cfg.shots, -1);
  const DrivingSpec s = cfg.driving(30.0);
  EXPECT_EQ(s.E, 30.0);
  EXPECT_EQ(s.omega, cfg.omega);
  EXPECT_EQ(s.n_terms, cfg.n_terms);
}

TEST(Config, Errors) {
  RunConfig cfg;
  std::istringstream unknown("omgea = 8\n");
  EXPECT_THROW(parse_config(unknown, cfg), UsageError);
  std::istringstream no_eq("omega 8\n");
  EXPECT_THROW(parse_config(no_eq, cfg), UsageError);
  std::istringstream bad_num("shots = many\n");
  EXPECT_THROW(parse_config(bad_num, cfg), UsageError);
  EXPECT_THROW(load_config("/nonexistent/zetadrive.cfg"), UsageError);

  RunConfig grid;
  grid.e_min = grid.e_max;
  EXPECT_THROW(grid.validate(), UsageError);
  grid = {};
  grid.e_step = 0.0;
  EXPECT_THROW(grid.validate(), UsageError);
  grid = {};
  grid.shots = -2;
  EXPECT_THROW(grid.validate(), UsageError);
  grid = {};
  grid.x_min = 1.0;
  EXPECT_THROW(grid.validate(), UsageError);
}
