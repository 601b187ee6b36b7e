#include <doctest.h>

#include <sstream>

#include "permint/io.hpp"
#include "permint/rng.hpp"

using namespace permint;

namespace {

PermFamily random_family(int n, std::uint64_t stream) {
  SplitMix64 rng(401, stream);
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& sigma) {
    if (rng.next_bernoulli(0.5)) members.push_back(sigma);
  });
  if (members.empty()) members.push_back(Permutation::identity(n));
  return PermFamily(n, std::move(members));
}

PermFamily parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_family_stream(in, "test");
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse anchors") {
  const auto fam = parse_text("n=3\n1 2 3\n");
  CHECK(fam.n() == 3);
  REQUIRE(fam.size() == 1);
  CHECK(fam.members()[0] == Permutation::identity(3));

  const auto with_comments = parse_text("# header comment\nn=3\n# inline\n2 1 3\n");
  CHECK(with_comments.size() == 1);
}

TEST_CASE("parse errors name the offending line") {
  CHECK_THROWS_WITH_AS(parse_text("n=3\n1 1 3\n"), doctest::Contains(":2:"), ParseError);
  CHECK_THROWS_WITH_AS(parse_text("n=3\n1 2\n"), doctest::Contains(":2:"), ParseError);
  CHECK_THROWS_AS(parse_text("1 2 3\n"), ParseError);  // missing header
  CHECK_THROWS_AS(parse_text(""), ParseError);
  CHECK_THROWS_AS(parse_text("n=3\n1 2 x\n"), ParseError);
}

TEST_CASE("text round trip restores the family") {
  for (int n = 3; n <= 6; ++n) {
    for (std::uint64_t rep = 0; rep < 25; ++rep) {
      const auto fam = random_family(n, static_cast<std::uint64_t>(n) * 100 + rep);
      std::ostringstream out;
      emit_family_text(fam, out);
      CHECK(parse_text(out.str()) == fam);
    }
  }
}

TEST_CASE("json alternative is accepted and round trips") {
  const auto fam = random_family(4, 7);
  const std::string json = family_to_json_string(fam);
  CHECK(parse_text(json) == fam);

  const auto literal = parse_text(R"({"n": 3, "members": [[1,2,3],[3,1,2]]})");
  CHECK(literal.size() == 2);

  CHECK_THROWS_AS(parse_text("{\"n\": 3}"), ParseError);
  CHECK_THROWS_AS(parse_text("{\"n\": 3, \"members\": [[1,1,3]]}"), ParseError);
}

TEST_CASE("emitting a known construction and reading it back") {
  const auto [f, g] = antipodal_pair(4);
  std::ostringstream out;
  emit_family_text(f, out);
  const auto back = parse_text(out.str());
  CHECK(back.size() == 4);
  CHECK(back == f);
}

}  // TEST_SUITE
