#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <digitlaw/dataset.hpp>
#include <digitlaw/errors.hpp>

using namespace digitlaw;

namespace {

const std::string kFixturePath = std::string(DIGITLAW_DATA_DIR) + "/fixture_heads_of_state.csv";
const std::string kProviderPath = std::string(DIGITLAW_DATA_DIR) + "/query_counts.csv";

PairedDataset from_csv_text(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return load_dataset_csv(in, "inline", options);
}

PairedDataset from_json_text(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return load_dataset_json(in, "inline", options);
}

using Catch::Matchers::ContainsSubstring;

}  // namespace

TEST_CASE("query pair wraps the plain text in quotation marks") {
  CountRecord r{"United States", "Barack Obama", "president", 0, 0, "2015-02-21T08:04:00Z"};
  QueryPair q = build_query(r);
  CHECK(q.a1 == "Barack Obama president of United States");
  CHECK(q.a2 == "\"Barack Obama president of United States\"");

  CountRecord nepal{"Nepal", "Ram Baran Yadav", "president", 0, 0, "2015-02-21T08:04:00Z"};
  QueryPair qn = build_query(nepal);
  CHECK(qn.a1 == "Ram Baran Yadav president of Nepal");
  CHECK(qn.a2.front() == '"');
  CHECK(qn.a2.back() == '"');
  CHECK(qn.a2.substr(1, qn.a2.size() - 2) == qn.a1);  // quotes are the only difference

  CountRecord missing = r;
  missing.head_name.clear();
  CHECK_THROWS_AS(build_query(missing), input_error);
  missing = r;
  missing.title.clear();
  CHECK_THROWS_AS(build_query(missing), input_error);
  missing = r;
  missing.country.clear();
  CHECK_THROWS_AS(build_query(missing), input_error);
}

TEST_CASE("shipped fixture loads cleanly") {
  PairedDataset ds = load_dataset(kFixturePath, DatasetFormat::csv);
  CHECK(ds.records.size() == 169);
  CHECK(ds.window_start == "2015-02-21T08:04:00Z");
  CHECK(ds.window_end == "2015-02-21T19:16:00Z");
  CHECK(ds.warnings.empty());

  auto us = std::find_if(ds.records.begin(), ds.records.end(),
                         [](const CountRecord& r) { return r.country == "United States"; });
  REQUIRE(us != ds.records.end());
  CHECK(us->head_name == "Barack Obama");
  CHECK(us->title == "president");
  CHECK(us->count_a1 == 93500000);
  CHECK(us->count_a2 == 330000);

  auto laos = std::find_if(ds.records.begin(), ds.records.end(),
                           [](const CountRecord& r) { return r.country == "Laos"; });
  REQUIRE(laos != ds.records.end());
  CHECK(laos->head_name == "Choummaly Sayasone");
  CHECK(laos->count_a1 == 223);
  CHECK(laos->count_a2 == 0);

  CHECK(ds.column("count_a1").size() == 169);
  CHECK(ds.column("count_a2").size() == 169);
  CHECK_THROWS_AS(ds.column("count_a3"), data_error);
}

TEST_CASE("save and reload round-trips both formats") {
  PairedDataset ds = load_dataset(kFixturePath, DatasetFormat::csv);

  std::ostringstream csv;
  save_dataset_csv(ds, csv);
  std::istringstream csv_in(csv.str());
  PairedDataset from_csv = load_dataset_csv(csv_in, "roundtrip");
  CHECK(from_csv.records == ds.records);
  CHECK(from_csv.window_start == ds.window_start);
  CHECK(from_csv.window_end == ds.window_end);

  std::ostringstream json;
  save_dataset_json(ds, json);
  std::istringstream json_in(json.str());
  PairedDataset from_json = load_dataset_json(json_in, "roundtrip");
  CHECK(from_json.records == ds.records);
}

TEST_CASE("quoted fields round-trip per RFC 4180") {
  PairedDataset ds;
  ds.source = "inline";
  ds.records.push_back(CountRecord{"Land, \"The\"", "A \"B\" C", "king,\nfirst of his name", 120,
                                   45, "2015-02-21T08:04:00Z"});
  std::ostringstream out;
  save_dataset_csv(ds, out);
  std::istringstream in(out.str());
  PairedDataset back = load_dataset_csv(in, "inline");
  REQUIRE(back.records.size() == 1);
  CHECK(back.records[0] == ds.records[0]);
}

TEST_CASE("header and shape are enforced") {
  CHECK_THROWS_AS(from_csv_text(""), data_error);

  try {
    from_csv_text("a,b,c\n1,2,3\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.row() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("expected header"));
  }

  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";
  CHECK_THROWS_MATCHES(from_csv_text(header + "X,Y,president,10,5\n"), parse_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("expected 6 fields")));

  // header alone has no records
  CHECK_THROWS_AS(from_csv_text(header), data_error);

  // a trailing blank line is tolerated
  PairedDataset ok = from_csv_text(header + "X,Y,president,10,5,2015-02-21\n\n");
  CHECK(ok.records.size() == 1);
}

TEST_CASE("count fields parse strictly") {
  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";

  try {
    from_csv_text(header + "X,Y,president,abc,5,2015-02-21\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.row() == 2);
    CHECK(e.column() == 4);
    CHECK_THAT(e.what(), ContainsSubstring("count_a1"));
  }

  try {
    from_csv_text(header + "X,Y,president,10,-5,2015-02-21\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.column() == 5);
  }

  // 18446744073709551616 = 2^64 overflows; 2^64 - 1 is fine
  CHECK_THROWS_AS(from_csv_text(header + "X,Y,president,18446744073709551616,5,2015-02-21\n"),
                  parse_error);
  PairedDataset max = from_csv_text(header + "X,Y,president,18446744073709551615,5,2015-02-21\n");
  CHECK(max.records[0].count_a1 == UINT64_MAX);
}

TEST_CASE("thousands separators are an explicit opt-in") {
  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";
  const std::string row = "US,Barack Obama,president,\"93,500,000\",330 000,2015-02-21\n";

  CHECK_THROWS_AS(from_csv_text(header + row), parse_error);

  LoadOptions opts;
  opts.thousands_separators = true;
  PairedDataset ds = from_csv_text(header + row, opts);
  CHECK(ds.records[0].count_a1 == 93500000);
  CHECK(ds.records[0].count_a2 == 330000);

  // leading, trailing, and doubled separators stay malformed
  CHECK_THROWS_AS(from_csv_text(header + "X,Y,president,\",123\",5,2015-02-21\n", opts),
                  parse_error);
  CHECK_THROWS_AS(from_csv_text(header + "X,Y,president,\"123,\",5,2015-02-21\n", opts),
                  parse_error);
  CHECK_THROWS_AS(from_csv_text(header + "X,Y,president,\"1,,2\",5,2015-02-21\n", opts),
                  parse_error);
}

TEST_CASE("duplicate country and head pairs are rejected") {
  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";
  CHECK_THROWS_MATCHES(from_csv_text(header +
                                     "X,Y,president,10,5,2015-02-21\n"
                                     "X,Y,king,11,6,2015-02-21\n"),
                       data_error, Catch::Matchers::MessageMatches(ContainsSubstring("duplicate")));
}

TEST_CASE("timestamps accept common ISO-8601 shapes and nothing else") {
  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";

  PairedDataset ds = from_csv_text(header +
                                   "A,H1,president,10,5,2015-02-21\n"
                                   "B,H2,president,10,5,2015-02-21 08:04\n"
                                   "C,H3,president,10,5,2015-02-21T09:30:15Z\n"
                                   "D,H4,president,10,5,2015-02-21T11:04:00+01:00\n");
  // midnight (date-only) is the earliest; +01:00 means 10:04 UTC which is the latest
  CHECK(ds.window_start == "2015-02-21");
  CHECK(ds.window_end == "2015-02-21T11:04:00+01:00");

  for (const std::string bad : {"21/02/2015", "2015-13-01", "2015-02-21T25:00", "2015-02-21X",
                                "2015-02-21T08:04:00Q"}) {
    INFO(bad);
    CHECK_THROWS_MATCHES(from_csv_text(header + "X,Y,president,10,5," + bad + "\n"), data_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("ISO-8601")));
  }
}

TEST_CASE("protocol warnings: inverted counts and long windows") {
  const std::string header = "country,head_name,title,count_a1,count_a2,collected_at\n";

  PairedDataset inverted = from_csv_text(header + "X,Y,president,10,50,2015-02-21\n");
  REQUIRE(inverted.warnings.size() == 1);
  CHECK_THAT(inverted.warnings[0], ContainsSubstring("exceeds count_a1"));

  PairedDataset slow = from_csv_text(header +
                                     "A,H1,president,10,5,2015-02-21T08:00:00Z\n"
                                     "B,H2,president,10,5,2015-02-21T21:30:00Z\n");
  REQUIRE(slow.warnings.size() == 1);
  CHECK_THAT(slow.warnings[0], ContainsSubstring("hours"));

  PairedDataset fast = from_csv_text(header +
                                     "A,H1,president,10,5,2015-02-21T08:00:00Z\n"
                                     "B,H2,president,10,5,2015-02-21T20:00:00Z\n");
  CHECK(fast.warnings.empty());  // exactly 12 hours is within protocol
}

TEST_CASE("JSON datasets mirror the CSV schema") {
  PairedDataset ds = from_json_text(R"([
    {"country": "X", "head_name": "Y", "title": "president",
     "count_a1": 93500000, "count_a2": "330000", "collected_at": "2015-02-21T08:04:00Z"}
  ])");
  CHECK(ds.records.size() == 1);
  CHECK(ds.records[0].count_a1 == 93500000);
  CHECK(ds.records[0].count_a2 == 330000);  // string counts are accepted

  LoadOptions opts;
  opts.thousands_separators = true;
  PairedDataset grouped = from_json_text(
      R"([{"country": "X", "head_name": "Y", "title": "president",
           "count_a1": "93,500,000", "count_a2": 5, "collected_at": "2015-02-21"}])",
      opts);
  CHECK(grouped.records[0].count_a1 == 93500000);

  CHECK_THROWS_MATCHES(from_json_text(R"([{"country": "X"}])"), data_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("missing key")));
  CHECK_THROWS_MATCHES(
      from_json_text(R"([{"country": "X", "head_name": "Y", "title": "t",
                          "count_a1": -4, "count_a2": 5, "collected_at": "2015-02-21"}])"),
      data_error, Catch::Matchers::MessageMatches(ContainsSubstring("not a non-negative integer")));
  CHECK_THROWS_MATCHES(
      from_json_text(R"([{"country": "X", "head_name": "Y", "title": "t",
                          "count_a1": 1.5, "count_a2": 5, "collected_at": "2015-02-21"}])"),
      data_error, Catch::Matchers::MessageMatches(ContainsSubstring("not a non-negative integer")));
  CHECK_THROWS_MATCHES(from_json_text(R"({"country": "X"})"), data_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("array")));
  CHECK_THROWS_MATCHES(from_json_text("[{"), data_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("JSON parse error")));
  CHECK_THROWS_AS(from_json_text("[]"), data_error);  // no records
}

TEST_CASE("single-column sample files") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_count_column(in, "inline");
  };

  GenericColumn ints = load("count\n120\n45\n9\n");
  CHECK(ints.reals == std::vector<double>{120, 45, 9});
  REQUIRE(ints.integers.has_value());
  CHECK(*ints.integers == std::vector<std::uint64_t>{120, 45, 9});

  GenericColumn reals = load("count\n12.5\n1e3\n45\n");
  CHECK(reals.reals == std::vector<double>{12.5, 1000.0, 45.0});
  CHECK_FALSE(reals.integers.has_value());

  CHECK_THROWS_MATCHES(load("value\n1\n"), parse_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("header")));
  CHECK_THROWS_AS(load("count\n-3\n"), parse_error);
  CHECK_THROWS_AS(load("count\nabc\n"), parse_error);
  CHECK_THROWS_AS(load("count\n1,2\n"), parse_error);  // two fields
  CHECK_THROWS_AS(load(""), data_error);
  CHECK_THROWS_AS(load("count\n"), data_error);  // header only, no values
}

TEST_CASE("fixture provider answers the recorded queries") {
  FixtureProvider provider = FixtureProvider::from_csv(kProviderPath);
  CHECK(provider.size() == 8);
  CHECK(provider.count_for("Barack Obama president of United States") == 93500000);
  CHECK(provider.count_for("\"Barack Obama president of United States\"") == 330000);
  CHECK(provider.count_for("\"Choummaly Sayasone president of Laos\"") == 0);
  CHECK_THROWS_MATCHES(provider.count_for("Elvis Presley king of Rock"), data_error,
                       Catch::Matchers::MessageMatches(ContainsSubstring("unknown query")));
}

TEST_CASE("fetching a pair stamps one session timestamp on both counts") {
  FixtureProvider provider = FixtureProvider::from_csv(kProviderPath);
  CountRecord us{"United States", "Barack Obama", "president", 0, 0, ""};
  FetchedCounts fetched = fetch_counts(provider, build_query(us), "2015-02-21T08:04:00Z");
  CHECK(fetched.count_a1 == 93500000);
  CHECK(fetched.count_a2 == 330000);
  CHECK(fetched.collected_at == "2015-02-21T08:04:00Z");
}
