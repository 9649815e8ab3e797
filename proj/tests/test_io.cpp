#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dwsim/config.hpp"
#include "dwsim/timeseries.hpp"

using namespace dwsim;

namespace {

template <class E, class F>
std::string error_message(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("64-bit FNV-1a reference vectors") {
  CHECK(fnv1a64_str("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64_str("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64_str("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
  CHECK(hex64(0x1ULL) == "0000000000000001");
}

TEST_CASE("table rendering: header, full-precision rows, checksum footer") {
  Table t;
  t.columns = {"t_s", "x_m"};
  t.cols = {{0.0, 1.5e-12}, {0.1, -2.0}};
  std::string s = render_csv(t);

  std::istringstream in(s);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t_s,x_m");
  REQUIRE(std::getline(in, line));
  // %.17g keeps the exact double: 0.1 prints its full representation
  CHECK(line == "0,0.10000000000000001");
  REQUIRE(std::getline(in, line));
  CHECK(line == "1.5000000000000001e-12,-2");
  REQUIRE(std::getline(in, line));
  REQUIRE(line.rfind("# fnv1a ", 0) == 0);

  // the footer hashes every byte above it
  size_t cut = s.rfind("# fnv1a ");
  std::string body = s.substr(0, cut);
  std::string hash = s.substr(cut + 8, 16);
  CHECK(hash == hex64(fnv1a64_str(body)));

  // any edit breaks the checksum
  std::string tampered = body;
  tampered[0] = 'T';
  CHECK(hex64(fnv1a64_str(tampered)) != hash);
}

TEST_CASE("rendered values survive a strtod round trip") {
  const double vals[] = {1.0 / 3.0, 1e-300, 3.0943782e-7, -0.0, 23.52127e-9};
  Table t;
  t.columns = {"v"};
  t.cols = {{}};
  for (double v : vals) t.cols[0].push_back(v);
  std::string s = render_csv(t);
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);  // header
  for (double v : vals) {
    REQUIRE(std::getline(in, line));
    CHECK(std::strtod(line.c_str(), nullptr) == v);
  }
}

TEST_CASE("mismatched tables are rejected") {
  Table t;
  t.columns = {"a", "b"};
  t.cols = {{1.0, 2.0}, {3.0}};
  CHECK_THROWS_AS(render_csv(t), std::logic_error);
  Table u;
  u.columns = {"a"};
  u.cols = {{1.0}, {2.0}};
  CHECK_THROWS_AS(render_csv(u), std::logic_error);
}

TEST_CASE("text files are written verbatim") {
  const std::string path = "tmp_io_roundtrip.txt";
  const std::string content = "line1\nline2 no trailing newline";
  write_text_file(path, content);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == content);
  std::remove(path.c_str());

  CHECK_THROWS_AS(write_text_file("no_such_dir/x.txt", "y"),
                  std::runtime_error);
}

TEST_CASE("manifest rendering and parameter hash") {
  RunManifest m;
  m.add("material", "Co");
  m.add_num("bJ_m_per_s", -750.0);
  std::string s = m.render();
  CHECK(s.find("material = Co\n") != std::string::npos);
  CHECK(s.find("bJ_m_per_s = -750\n") != std::string::npos);
  CHECK(s.find("param_hash = ") != std::string::npos);

  RunManifest same;
  same.add("material", "Co");
  same.add_num("bJ_m_per_s", -750.0);
  CHECK(same.param_hash() == m.param_hash());

  RunManifest other;
  other.add("material", "Co");
  other.add_num("bJ_m_per_s", -751.0);
  CHECK(other.param_hash() != m.param_hash());
}

TEST_CASE("config parsing: sections, comments, repeats, line numbers") {
  const std::string text =
      "# leading comment\n"
      "[material]\n"
      "name = Co   # trailing comment\n"
      "alpha = 0.02\n"
      "\n"
      "[pinning]\n"
      "V0_Oe = -50\n"
      "\n"
      "[pinning]\n"
      "V0_Oe = -200\n";
  ConfigDoc doc = ConfigDoc::parse_string(text, "inline");
  REQUIRE(doc.sections.size() == 3);
  CHECK(doc.find("material") != nullptr);
  CHECK(doc.find("missing") == nullptr);
  CHECK(doc.find_all("pinning").size() == 2);

  SectionView mat(doc, *doc.find("material"));
  CHECK(mat.str("name") == "Co");
  CHECK(mat.num("alpha") == doctest::Approx(0.02));
  CHECK(mat.has("alpha"));
  CHECK(!mat.has("gamma"));
  CHECK(mat.num_or("gamma", 1.9e7) == doctest::Approx(1.9e7));
  CHECK(mat.str_or("note", "none") == "none");

  // entries remember where they came from
  CHECK(doc.find("material")->find("alpha")->line == 4);
  CHECK(doc.find_all("pinning")[1]->line == 9);
}

TEST_CASE("config parse errors point at the offending line") {
  auto msg = [&](const std::string& text) {
    return error_message<ConfigError>(
        [&] { ConfigDoc::parse_string(text, "f"); });
  };
  CHECK(msg("[sec\nk = 1\n").find("f:1") != std::string::npos);
  CHECK(msg("k = 1\n").find("outside any [section]") != std::string::npos);
  CHECK(msg("[s]\nk = 1\nk = 2\n").find("duplicate key") != std::string::npos);
  CHECK(msg("[s]\nk = 1\nk = 2\n").find("f:3") != std::string::npos);
  CHECK(msg("[s]\n= 1\n").find("empty key") != std::string::npos);
  CHECK(msg("[]\n").find("empty section name") != std::string::npos);
  CHECK(msg("[s]\njust words\n").find("f:2") != std::string::npos);

  CHECK_THROWS_AS(ConfigDoc::parse_file("definitely_missing.cfg"),
                  ConfigError);
}

TEST_CASE("typed section access") {
  ConfigDoc doc = ConfigDoc::parse_string(
      "[run]\n"
      "t_end_s = 5e-9\n"
      "sample_every = 16\n"
      "fraction = 2.5\n"
      "bad = oops\n"
      "list = 0, 60 120,180\n",
      "inline");
  SectionView run(doc, *doc.find("run"));
  CHECK(run.num("t_end_s") == doctest::Approx(5e-9));
  CHECK(run.integer("sample_every") == 16);
  CHECK(run.integer_or("missing", 7) == 7);

  auto list = run.num_list("list");
  REQUIRE(list.size() == 4);
  CHECK(list[0] == 0.0);
  CHECK(list[1] == 60.0);
  CHECK(list[2] == 120.0);
  CHECK(list[3] == 180.0);

  // a fractional value is not an integer
  CHECK_THROWS_AS(run.integer("fraction"), ConfigError);
  // a word is not a number, and the error names the line
  std::string m =
      error_message<ConfigError>([&] { (void)run.num("bad"); });
  CHECK(m.find("inline:5") != std::string::npos);
  // unknown keys are caught by the allow list
  CHECK_THROWS_AS(
      run.allow_only({"t_end_s", "sample_every", "fraction", "list"}),
      ConfigError);
  CHECK_NOTHROW(
      run.allow_only({"t_end_s", "sample_every", "fraction", "bad", "list"}));
}
