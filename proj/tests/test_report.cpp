#include <doctest.h>

#include <cmath>

#include "wfc/errors.hpp"
#include "wfc/report.hpp"

using namespace wfc;

namespace {

Table sample() {
  Table t({"id", "name", "value", "ok", "note"});
  t.add({std::int64_t(1), std::string("plain"), 0.125, true, std::string("")});
  t.add({std::int64_t(-7), std::string("with, comma"), 1e-20, false, std::string("say \"hi\"\nthere")});
  t.add({std::int64_t(3), std::string("big"), 123456.789, true, count_cell(u128(1) << 100)});
  return t;
}

std::vector<std::vector<std::string>> texts(const Table& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : t.rows) {
    out.emplace_back();
    for (const auto& c : row) out.back().push_back(cell_text(c));
  }
  return out;
}

}  // namespace

TEST_CASE("empty reports") {
  const Table empty({"a", "b"});
  CHECK(emit_report(empty, Format::csv) == "a,b\n");
  CHECK(emit_report(empty, Format::json).empty());
}

TEST_CASE("golden bytes") {
  Table t({"seed", "q", "ratio", "flag", "label"});
  t.add({std::int64_t(0), std::int64_t(12), 0.1 + 0.2, false, std::string("a\"b")});
  CHECK(emit_report(t, Format::csv) == "seed,q,ratio,flag,label\n0,12,0.3,false,\"a\"\"b\"\n");
  CHECK(emit_report(t, Format::json) ==
        "{\"seed\":0,\"q\":12,\"ratio\":0.3,\"flag\":false,\"label\":\"a\\\"b\"}\n");
}

TEST_CASE("CSV round trip") {
  const Table t = sample();
  const Table back = parse_csv(emit_report(t, Format::csv));
  CHECK(back.columns == t.columns);
  CHECK(texts(back) == texts(t));
  CHECK(std::get<std::int64_t>(back.rows[1][0]) == -7);
  CHECK(std::get<double>(back.rows[0][2]) == 0.125);
  CHECK(std::get<bool>(back.rows[0][3]));
}

TEST_CASE("JSON lines round trip") {
  const Table t = sample();
  const Table back = parse_jsonl(emit_report(t, Format::json));
  CHECK(back.columns == t.columns);
  CHECK(texts(back) == texts(t));
}

TEST_CASE("one row round trip") {
  Table t({"x"});
  t.add({2.5});
  CHECK(texts(parse_csv(emit_report(t, Format::csv))) == texts(t));
  CHECK(texts(parse_jsonl(emit_report(t, Format::json))) == texts(t));
}

TEST_CASE("non-finite doubles") {
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(NAN) == "nan");
  Table t({"x"});
  t.add({NAN});
  CHECK(emit_report(t, Format::json) == "{\"x\":\"nan\"}\n");
}

TEST_CASE("row width and format names") {
  Table t({"a", "b"});
  CHECK_THROWS_AS(t.add({std::int64_t(1)}), PreconditionError);
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), PreconditionError);
  CHECK_THROWS_AS(parse_csv("a\n\"open"), PreconditionError);
}
