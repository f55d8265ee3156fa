#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "pcgroup/corpus.hpp"
#include "pcgroup/parse.hpp"
#include "pcgroup/quotient.hpp"
#include "pcgroup/serial.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("pcp json round-trips bit-exactly") {
  std::vector<pcg::PcGroup> groups = {
      pcg::corpus::sylow2_s8(),    pcg::corpus::heisenberg(3),
      pcg::corpus::cyclic(3, 3),   pcg::corpus::dihedral8(),
      pcg::corpus::modular(5),     pcg::corpus::elementary_abelian(7, 2),
  };
  // one group with custom generator names
  pcg::PcGroup named = pcg::corpus::heisenberg(5);
  named.set_generator_names({"x", "y", "z"});
  groups.push_back(named);

  for (const pcg::PcGroup& g : groups) {
    const pcg::Json doc = pcg::pcp_to_json(g);
    REQUIRE(pcg::pcp_from_json(doc) == g);
    // and through text
    const pcg::Json reparsed = pcg::Json::parse(doc.dump());
    REQUIRE(pcg::pcp_from_json(reparsed) == g);
  }
}

TEST_CASE("pcp json document shape") {
  const pcg::Json doc = pcg::pcp_to_json(pcg::corpus::sylow2_s8());
  REQUIRE(doc.at("schema") == "pcp/1");
  REQUIRE(doc.at("p") == 2);
  REQUIRE(doc.at("n") == 7);
  REQUIRE(doc.at("weights").size() == 7);
  REQUIRE(doc.at("power_tails").empty());
  REQUIRE(doc.at("comm_tails").size() == 7);
  REQUIRE(doc.at("comm_tails").contains("2,1"));
  REQUIRE(doc.at("definitions").at("4").at("kind") == "commutator");
  REQUIRE_FALSE(doc.contains("names"));
}

TEST_CASE("the stored corpus document matches the builder") {
  const pcg::Json doc =
      pcg::Json::parse(slurp(std::string(PCG_CORPUS_DIR) + "/sylow2_s8.pcp.json"));
  REQUIRE(pcg::pcp_from_json(doc) == pcg::corpus::sylow2_s8());
}

TEST_CASE("quotient documents carry the image table") {
  const auto q = pcg::p_quotient(pcg::corpus::example_c(), 8);
  const pcg::Json doc = pcg::quotient_to_json(q);
  REQUIRE(doc.at("achieved_class").get<unsigned>() == q.achieved_class);
  REQUIRE(doc.at("stabilized").get<bool>() == q.stabilized);
  REQUIRE(doc.at("images").size() == 2);
  REQUIRE(pcg::images_from_json(doc) == q.images);
  // the extended document still loads as a plain group
  REQUIRE(pcg::pcp_from_json(doc) == q.group);
}

TEST_CASE("subgroup documents") {
  const auto q = pcg::p_quotient(pcg::corpus::example_c(), 8);
  const auto lcs = pcg::lower_central_series(q.group);
  const pcg::Json doc = pcg::subgroup_to_json(lcs[1]);
  REQUIRE(doc.at("order") == "5^4");
  REQUIRE(doc.at("order_log") == 4);
  REQUIRE(doc.at("pivots").size() == 4);
  REQUIRE(doc.at("generators").size() == 4);
}

TEST_CASE("checklist documents") {
  pcg::CheckList c("demo");
  c.add("first", pcg::CheckStatus::pass, "w1");
  c.add("second", pcg::CheckStatus::fail);
  c.add("third", pcg::CheckStatus::not_applicable, "w3");
  c.add("fourth", pcg::CheckStatus::skipped);
  c.add("fifth", pcg::CheckStatus::refused);
  const pcg::Json doc = pcg::checklist_to_json(c);
  REQUIRE(doc.at("schema") == "report/1");
  REQUIRE(doc.at("title") == "demo");
  REQUIRE(doc.at("ok") == false);
  REQUIRE(doc.at("items").size() == 5);
  REQUIRE(doc.at("items")[0].at("status") == "pass");
  REQUIRE(doc.at("items")[0].at("witness") == "w1");
  REQUIRE(doc.at("items")[1].at("status") == "fail");
  REQUIRE_FALSE(doc.at("items")[1].contains("witness"));
  REQUIRE(doc.at("items")[2].at("status") == "not-applicable");
  REQUIRE(doc.at("items")[3].at("status") == "skipped");
  REQUIRE(doc.at("items")[4].at("status") == "refused");
}

TEST_CASE("malformed documents are rejected") {
  SECTION("missing schema") {
    REQUIRE_THROWS_AS(pcg::pcp_from_json(pcg::Json{{"p", 5, }, {"n", 2}}),
                      std::invalid_argument);
  }
  SECTION("wrong exponent array length") {
    pcg::Json doc = pcg::pcp_to_json(pcg::corpus::heisenberg(3));
    doc["comm_tails"]["2,1"] = pcg::Json::array({1});
    REQUIRE_THROWS_AS(pcg::pcp_from_json(doc), std::invalid_argument);
  }
  SECTION("bad tail key") {
    pcg::Json doc = pcg::pcp_to_json(pcg::corpus::heisenberg(3));
    doc["comm_tails"]["9,1"] = pcg::Json::array({0, 0, 0});
    REQUIRE_THROWS_AS(pcg::pcp_from_json(doc), std::invalid_argument);
  }
}
