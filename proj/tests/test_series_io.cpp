#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "selberg/errors.hpp"
#include "selberg/series_io.hpp"

using namespace selberg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "selberg_lab_io_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

void same_invariants(const InvariantSet& a, const InvariantSet& b) {
  CHECK(a.d == b.d);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
  CHECK(a.C == b.C);
  CHECK(a.D == b.D);
  CHECK(a.q == b.q);
}

}  // namespace

TEST_CASE("every builtin survives a JSON round trip") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const SeriesSpec spec = builtin_spec(name);
    const SeriesSpec back = parse_spec(spec_to_json(spec));
    same_invariants(invariants(back), invariants(spec));
    CHECK(spec_to_json(back) == spec_to_json(spec));
    const auto a = coefficients(spec, 50), b = coefficients(back, 50);
    for (int n = 0; n < 50; ++n) CHECK(a[n] == b[n]);
  }
}

TEST_CASE("load_spec reads files and builtin names") {
  const fs::path p = scratch_dir() / "zeta.json";
  write(p, spec_to_json(builtin_spec("zeta")));
  same_invariants(invariants(load_spec(p.string())), invariants(load_spec("builtin:zeta")));
  CHECK_THROWS_AS(load_spec((scratch_dir() / "missing.json").string()), ParseError);
}

TEST_CASE("coefficient files resolve relative to the spec") {
  const fs::path dir = scratch_dir();
  write(dir / "poly.txt", "# a_1..a_3\n1 0\n\n0.5 -0.5\n2\n");
  const std::string text = R"({"name": "poly", "sigma_a": 0.5, "Q": 1.0,
    "gamma_num": [], "coefficients": {"file": "poly.txt", "finite": true}})";
  const SeriesSpec spec = parse_spec(text, dir);
  CHECK(coefficient_support(spec) == 3);
  const auto a = coefficients(spec, 5);
  CHECK(a[1] == Complex(0.5, -0.5));
  CHECK(a[2] == Complex(2.0, 0.0));
  CHECK(a[4] == Complex(0.0));
  CHECK(invariants(spec).d == 0.0);
}

TEST_CASE("malformed input is a ParseError") {
  CHECK_THROWS_AS(parse_spec("{"), ParseError);
  CHECK_THROWS_AS(parse_spec("[]"), ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1, "coefficients": {"builtin": "zeta"},
                                 "colour": 3})"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": "one", "Q": 1, "coefficients": {"builtin": "zeta"}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1})"), ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1,
      "coefficients": {"character": {"modulus": 4, "values": [[0,0],[1,0]]}}})"),
                  ParseError);
  const fs::path bad = scratch_dir() / "bad.txt";
  write(bad, "1 0 7\n");
  CHECK_THROWS_AS(read_coefficient_file(bad), ParseError);
  write(bad, "one\n");
  CHECK_THROWS_AS(read_coefficient_file(bad), ParseError);
}

TEST_CASE("semantic violations are ValidationErrors") {
  const fs::path dir = scratch_dir();
  write(dir / "empty.txt", "# nothing\n");
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1, "coefficients": {"file": "empty.txt"}})",
                             dir),
                  ValidationError);
  write(dir / "one.txt", "1\n");
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1,
      "poles": [{"location": [1, 0], "order": 1, "principal": [[1, 0]]}],
      "coefficients": {"file": "one.txt", "finite": true}})",
                             dir),
                  ValidationError);
  CHECK_THROWS_AS(parse_spec(R"({"sigma_a": 1, "Q": 1,
      "coefficients": {"character": {"modulus": 4, "values": [[0,0],[1,0],[0,0],[1,0]]}}})"),
                  ValidationError);
}
