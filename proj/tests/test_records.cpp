#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <sstream>

#include "nfpp/records.hpp"

using namespace nfpp;

namespace {

std::vector<ResultRecord> sample_records() {
  ResultRecord a;
  a.estimand = "estimate-mu";
  a.p = 0.4;
  a.params = {{"n", 64}, {"theta", 0.5235987755982988}};
  a.mean = 0.1 + 0.2;  // not representable in short decimal
  a.std_err = 1e-17;
  a.n = 500;
  a.seed = std::numeric_limits<std::uint64_t>::max();
  a.wall_time = 1.25;
  ResultRecord b;
  b.estimand = "odd,name \"quoted\"";
  b.p = -0.0;
  b.params = {{"note", "a, b"}, {"list", {1, 2, 3}}};
  b.mean = 5e-324;
  b.n = 1;
  return {a, b};
}

}  // namespace

TEST(RecordsCsv, RoundTripIsExact) {
  const auto rs = sample_records();
  std::stringstream ss;
  write_csv(ss, rs);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kCsvHeader);
  const auto back = read_csv(ss);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) EXPECT_TRUE(back[i].same_data(rs[i])) << i;
  EXPECT_EQ(back[0].wall_time, 0.0);  // not carried by CSV
}

TEST(RecordsCsv, RandomNumbersRoundTrip) {
  std::mt19937_64 rng(5);
  std::vector<ResultRecord> rs(200);
  for (auto& r : rs) {
    r.estimand = "x";
    r.p = std::uniform_real_distribution<double>(0, 1)(rng);
    r.mean = std::normal_distribution<double>(0, 1e6)(rng);
    r.std_err = std::exp(std::uniform_real_distribution<double>(-300, 300)(rng));
    r.seed = rng();
  }
  std::stringstream ss;
  write_csv(ss, rs);
  const auto back = read_csv(ss);
  for (std::size_t i = 0; i < rs.size(); ++i) EXPECT_TRUE(back[i].same_data(rs[i]));
}

TEST(RecordsCsv, SchemaErrors) {
  std::stringstream none("");
  EXPECT_THROW(read_csv(none), ArgumentError);
  std::stringstream wrong("estimand,p,mean\n");
  EXPECT_THROW(read_csv(wrong), ArgumentError);
  std::stringstream short_row(std::string(kCsvHeader) + "\nx,0.1,{}\n");
  EXPECT_THROW(read_csv(short_row), ArgumentError);
  std::stringstream not_object(std::string(kCsvHeader) + "\nx,0.1,[1],0,0,1,1\n");
  EXPECT_THROW(read_csv(not_object), ArgumentError);
  std::stringstream open_quote(std::string(kCsvHeader) + "\n\"x,0.1,{},0,0,1,1\n");
  EXPECT_THROW(read_csv(open_quote), ArgumentError);
  // CRLF files are accepted
  std::stringstream crlf(std::string(kCsvHeader) + "\r\nx,0.5,{},1,0,2,3\n");
  EXPECT_EQ(read_csv(crlf).size(), 1u);
}

TEST(RecordsCsv, SplitHandlesQuotes) {
  EXPECT_EQ(csv_split("a,\"b,c\",\"d\"\"e\""), (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_EQ(csv_split(",,"), (std::vector<std::string>{"", "", ""}));
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a\"b"), "\"a\"\"b\"");
}

TEST(RecordsJson, RoundTripKeepsWallTime) {
  const auto rs = sample_records();
  const Json j = to_json(rs);
  EXPECT_EQ(j.at("schema"), "v1");
  const auto back = from_json(Json::parse(j.dump()));
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_TRUE(back[i].same_data(rs[i]));
    EXPECT_EQ(back[i].wall_time, rs[i].wall_time);
  }
  EXPECT_THROW(from_json(Json{{"schema", "v0"}, {"records", Json::array()}}), ArgumentError);
  EXPECT_THROW(from_json(Json::array()), ArgumentError);
}

TEST(Records, SameDataIgnoresWallTime) {
  auto rs = sample_records();
  ResultRecord c = rs[0];
  c.wall_time = 99;
  EXPECT_TRUE(c.same_data(rs[0]));
  c.mean += 1e-16;
  EXPECT_FALSE(c.same_data(rs[0]));
}

TEST(ExperimentFiles, SharedKeysAndSections) {
  std::stringstream ss(
      "# ladder\n"
      "p = 0.40, 0.44, 0.46, 0.47\n"
      "seed = 7   # trailing comment\n"
      "\n"
      "[estimate-mu]\n"
      "n = 64\n"
      "[ccd]\n"
      "seed = 9\n");
  const ExperimentFile f = parse_experiment_file(ss);
  ASSERT_EQ(f.sections.size(), 2u);
  EXPECT_EQ(f.sections[0].first, "estimate-mu");
  const auto m0 = f.merged(0), m1 = f.merged(1);
  EXPECT_EQ(m0.at("n"), "64");
  EXPECT_EQ(m0.at("seed"), "7");
  EXPECT_EQ(m1.at("seed"), "9");
  EXPECT_EQ(m1.count("n"), 0u);
  EXPECT_EQ(parse_number_list(m0.at("p")), (std::vector<double>{0.40, 0.44, 0.46, 0.47}));
}

TEST(ExperimentFiles, Errors) {
  auto parse = [](const std::string& s) {
    std::stringstream ss(s);
    return parse_experiment_file(ss);
  };
  EXPECT_THROW(parse("[open\n"), ArgumentError);
  EXPECT_THROW(parse("[ ]\n"), ArgumentError);
  EXPECT_THROW(parse("novalue\n"), ArgumentError);
  EXPECT_THROW(parse("= 3\n"), ArgumentError);
  EXPECT_THROW(parse("a = 1\na = 2\n"), ArgumentError);
  EXPECT_NO_THROW(parse("a = 1\n[s]\na = 2\n"));
  EXPECT_THROW(parse_number_list("0.1, 0.2x"), ArgumentError);
  EXPECT_THROW(parse_number_list("abc"), std::invalid_argument);
}
