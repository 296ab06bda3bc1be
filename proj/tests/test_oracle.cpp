#include "noisefid/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace noisefid::oracle;

namespace {

// Second transcription of the closed forms (kept outside the library),
// evaluated at eta = 0.37, theta = (0.3, 0.71), phi = (0.4, 1.1),
// Pauli (0.4, 0.3, 0.2, 0.1) and SGAD (0.3, 0.2, 0.15, Q 0.6, Phi 0.9).
struct Row {
  const char* key;
  double value;
};

const Row kRows[] = {
    {"qkd1/AD", 0.948431348329844},    {"qkd1/PD", 0.9075},
    {"qkd1/CD", 0.980265248500721},    {"qkd1/CR", 0.912667807454839},
    {"qkd1/Pauli", 0.6},               {"qkd2/AD", 0.804362696659689},
    {"qkd2/PD", 0.815},                {"qkd2/CD", 0.960530497001443},
    {"qkd2/CR", 0.912667807454839},    {"qkd2/Pauli", 0.4},
    {"qka1/AD", 0.855931348329844},    {"qka1/PD", 0.849225},
    {"qka1/CD", 0.980265248500721},    {"qka1/CR", 0.912667807454839},
    {"qka1/Pauli", 0.6},               {"qka2/AD", 0.664225},
    {"qka2/PD", 0.69845},              {"qka2/CD", 0.708894847238048},
    {"qka2/CR", 0.561993215292328},    {"qka2/Pauli", 0.3},
    {"qsdc1/AD", 0.756725},            {"qsdc1/PD", 0.849225},
    {"qsdc1/CD", 0.854447423619024},   {"qsdc1/CR", 0.28287582694085},
    {"qsdc1/Pauli", 0.54},             {"qsdc2/AD", 0.664225},
    {"qsdc2/PD", 0.69845},             {"qsdc2/CD", 0.708894847238048},
    {"qsdc2/CR", 0.561993215292328},   {"qsdc2/Pauli", 0.3},
    {"qd1/AD", 0.660870798888823},     {"qd1/PD", 0.784618375},
    {"qd1/CD", 0.840457559969662},     {"qd1/CR", 0.25817166075608},
    {"qd1/Pauli", 0.328},              {"qd2/AD", 0.664225},
    {"qd2/PD", 0.69845},               {"qd2/CD", 0.708894847238048},
    {"qd2/CR", 0.561993215292328},     {"qd2/Pauli", 0.3},
    {"qkd1/SGAD", 0.938727716967825},  {"qkd2/SGAD", 0.835922232984929},
    {"qka1/SGAD", 0.888727716967825},  {"qka2/SGAD", 0.712509965268708},
    {"qsdc1/SGAD", 0.787622000710716}, {"qsdc2/SGAD", 0.712509965268708},
    {"qd1/SGAD", 0.0230785782299799},  {"qd2/SGAD", 0.712509965268708},
};

Params point() {
  return {{"eta", 0.37},   {"theta1", 0.3}, {"theta2", 0.71}, {"phi1", 0.4},
          {"phi2", 1.1},   {"p1", 0.4},     {"p2", 0.3},      {"p3", 0.2},
          {"p4", 0.1},     {"lambda", 0.3}, {"mu", 0.2},      {"nu", 0.15},
          {"Q", 0.6},      {"Phi", 0.9}};
}

}  // namespace

TEST_CASE("key naming round-trips") {
  CHECK(all_keys().size() == 48);
  for (const auto& k : all_keys()) {
    CHECK(FormulaKey::parse(k.str()) == k);
  }
  CHECK(FormulaKey::parse("qsdc2/Pauli").scheme == Scheme::Qsdc2);
  CHECK_THROWS_AS(FormulaKey::parse("qkd3/AD"), UnknownKey);
  CHECK_THROWS_AS(FormulaKey::parse("qkd1"), UnknownKey);
  CHECK_THROWS_AS(parse_channel_kind("GAD"), UnknownKey);
}

TEST_CASE("protocol mapping") {
  const std::pair<const char*, Scheme> map[] = {
      {"b92", Scheme::Qkd1},   {"bbm", Scheme::Qkd2}, {"qka1", Scheme::Qka1},
      {"qka2", Scheme::Qka2},  {"lm05", Scheme::Qsdc1}, {"pp", Scheme::Qsdc2},
      {"qd1", Scheme::Qd1},    {"qd2", Scheme::Qd2}};
  for (const auto& [id, s] : map) {
    CHECK(scheme_for_protocol(id) == s);
    CHECK(protocol_for_scheme(s) == id);
  }
  CHECK(collective_slots(Scheme::Qkd1) == 1);
  CHECK(collective_slots(Scheme::Qka1) == 1);
  CHECK(collective_slots(Scheme::Qsdc1) == 2);
}

TEST_CASE("both transcriptions agree") {
  const Params p = point();
  for (const auto& row : kRows) {
    CAPTURE(row.key);
    CHECK(eval(FormulaKey::parse(row.key), p) == doctest::Approx(row.value).epsilon(1e-12));
  }
}

TEST_CASE("required parameters") {
  CHECK(required_params(FormulaKey::parse("qkd1/CR")) == std::vector<std::string>{"theta1"});
  CHECK(required_params(FormulaKey::parse("qd2/CD")) ==
        std::vector<std::string>{"phi1", "phi2"});
  const auto sg = required_params(FormulaKey::parse("qd1/SGAD"));
  CHECK(sg.size() == 5);
  for (const auto& k : all_keys()) {
    Params p;
    for (const auto& name : required_params(k)) p[name] = 0.25;
    CHECK_NOTHROW(eval(k, p));
    if (!p.empty()) {
      p.erase(p.begin());
      CHECK_THROWS_AS(eval(k, p), MissingParameter);
    }
  }
}

TEST_CASE("noiseless endpoints") {
  for (const auto& k : all_keys()) {
    if (k.channel == ChannelKind::SGAD) continue;
    CAPTURE(k.str());
    Params p{{"eta", 0.0}, {"theta1", 0.0}, {"theta2", 0.0}, {"phi1", 0.0}, {"phi2", 0.0},
             {"p1", 1.0},  {"p2", 0.0},     {"p3", 0.0},     {"p4", 0.0}};
    CHECK(eval(k, p) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("printed spot values") {
  CHECK(eval(FormulaKey::parse("qkd1/AD"), {{"eta", 0.5}}) ==
        doctest::Approx(0.926776695).epsilon(1e-9));
  CHECK(eval(FormulaKey::parse("qkd2/AD"), {{"eta", 0.5}}) ==
        doctest::Approx(0.728553391).epsilon(1e-9));
  CHECK(std::abs(eval(FormulaKey::parse("qka2/AD"), {{"eta", 1.0}}) - 0.25) < 1e-12);
  CHECK(std::abs(eval(FormulaKey::parse("qsdc1/AD"), {{"eta", 0.5}}) - 0.6875) < 1e-12);
  CHECK(eval(FormulaKey::parse("qd1/AD"), {{"eta", 0.5}}) ==
        doctest::Approx(0.570082521).epsilon(1e-9));
  CHECK(std::abs(eval(FormulaKey::parse("qd2/AD"), {{"eta", 0.5}}) - 0.5625) < 1e-12);
}

TEST_CASE("SGAD closed forms at the AD limit") {
  for (Scheme s : all_schemes()) {
    CAPTURE(to_string(s));
    const LimitCheck c = sgad_limit_check(s);
    if (s == Scheme::Qd1) {
      // The qd1 expression as written sits exactly one below the AD form
      // there; the comparison report carries this as a failure.
      CHECK_FALSE(c.pass);
      CHECK(c.max_abs_diff == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(c.pass);
    }
  }
}
