#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcgroup/pcp.hpp"
#include "pcgroup/quotient.hpp"
#include "pcgroup/subgroup.hpp"
#include "pcgroup/verify.hpp"

// JSON forms of the core objects.  Generator numbering in JSON is 1-based
// throughout: tail keys are "i" and "j,i", definition indices are 1-based.
// Exponent arrays (NormalWords) stay positional.  Round-trips are bit-exact:
// pcp_from_json(pcp_to_json(g)) == g including weights, definitions, and
// any non-default generator names.

namespace pcg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPcpSchema = "pcp/1";
inline constexpr const char* kReportSchema = "report/1";

namespace detail {

inline Json word_to_json(const NormalWord& w) {
  return Json(std::vector<unsigned>(w.begin(), w.end()));
}

inline NormalWord word_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw std::invalid_argument("pcp json: exponent array of wrong length");
  NormalWord w;
  w.reserve(n);
  for (const Json& e : j) w.push_back(e.get<unsigned>());
  return w;
}

inline const char* definition_kind_label(Definition::Kind k) {
  switch (k) {
    case Definition::Kind::none: return "none";
    case Definition::Kind::image: return "image";
    case Definition::Kind::power: return "power";
    case Definition::Kind::commutator: return "commutator";
  }
  return "?";
}

}  // namespace detail

inline Json pcp_to_json(const PcGroup& g) {
  Json j;
  j["schema"] = kPcpSchema;
  j["p"] = g.prime();
  j["n"] = g.ngens();
  j["weights"] = g.weights();

  Json powers = Json::object();
  for (std::size_t i = 0; i < g.ngens(); ++i)
    if (!g.power_tail_trivial(i))
      powers[std::to_string(i + 1)] = detail::word_to_json(g.power_tail(i));
  j["power_tails"] = std::move(powers);

  Json comms = Json::object();
  for (std::size_t jj = 0; jj < g.ngens(); ++jj)
    for (std::size_t i = 0; i < jj; ++i)
      if (!g.comm_tail_trivial(jj, i))
        comms[std::to_string(jj + 1) + "," + std::to_string(i + 1)] =
            detail::word_to_json(g.comm_tail(jj, i));
  j["comm_tails"] = std::move(comms);

  Json defs = Json::object();
  for (std::size_t i = 0; i < g.definitions().size(); ++i) {
    const Definition& d = g.definitions()[i];
    if (d.kind == Definition::Kind::none) continue;
    Json entry;
    entry["kind"] = detail::definition_kind_label(d.kind);
    entry["i"] = d.i + 1;
    if (d.kind == Definition::Kind::commutator) entry["j"] = d.j + 1;
    defs[std::to_string(i + 1)] = std::move(entry);
  }
  j["definitions"] = std::move(defs);

  if (!g.generator_names().empty()) j["names"] = g.generator_names();
  return j;
}

inline PcGroup pcp_from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", "") != kPcpSchema)
    throw std::invalid_argument("pcp json: missing schema \"pcp/1\"");
  const unsigned p = j.at("p").get<unsigned>();
  const std::size_t n = j.at("n").get<std::size_t>();
  PcGroup g(p, n);

  if (j.contains("weights") && !j.at("weights").empty())
    g.set_weights(j.at("weights").get<std::vector<unsigned>>());

  for (const auto& [key, value] : j.at("power_tails").items()) {
    const std::size_t i = std::stoul(key);
    if (i < 1 || i > n) throw std::invalid_argument("pcp json: bad power key");
    g.set_power_tail(i - 1, detail::word_from_json(value, n));
  }
  for (const auto& [key, value] : j.at("comm_tails").items()) {
    const std::size_t comma = key.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("pcp json: bad commutator key");
    const std::size_t jj = std::stoul(key.substr(0, comma));
    const std::size_t i = std::stoul(key.substr(comma + 1));
    if (jj < 1 || jj > n || i < 1 || i >= jj)
      throw std::invalid_argument("pcp json: bad commutator key");
    g.set_comm_tail(jj - 1, i - 1, detail::word_from_json(value, n));
  }

  if (j.contains("definitions") && !j.at("definitions").empty()) {
    std::vector<Definition> defs(n);
    for (const auto& [key, value] : j.at("definitions").items()) {
      const std::size_t slot = std::stoul(key);
      if (slot < 1 || slot > n)
        throw std::invalid_argument("pcp json: bad definition key");
      Definition d;
      const std::string kind = value.at("kind").get<std::string>();
      if (kind == "image") d.kind = Definition::Kind::image;
      else if (kind == "power") d.kind = Definition::Kind::power;
      else if (kind == "commutator") d.kind = Definition::Kind::commutator;
      else throw std::invalid_argument("pcp json: bad definition kind");
      d.i = value.at("i").get<std::size_t>() - 1;
      if (d.kind == Definition::Kind::commutator)
        d.j = value.at("j").get<std::size_t>() - 1;
      defs[slot - 1] = d;
    }
    g.set_definitions(std::move(defs));
  }

  if (j.contains("names"))
    g.set_generator_names(j.at("names").get<std::vector<std::string>>());
  return g;
}

// quotient output: the group document extended with the image table
inline Json quotient_to_json(const QuotientResult& q) {
  Json j = pcp_to_json(q.group);
  Json images = Json::array();
  for (const NormalWord& w : q.images)
    images.push_back(detail::word_to_json(w));
  j["images"] = std::move(images);
  j["achieved_class"] = q.achieved_class;
  j["stabilized"] = q.stabilized;
  return j;
}

// the image table survives a round-trip through the group document
inline std::vector<NormalWord> images_from_json(const Json& j) {
  std::vector<NormalWord> images;
  if (!j.contains("images")) return images;
  const std::size_t n = j.at("n").get<std::size_t>();
  for (const Json& w : j.at("images"))
    images.push_back(detail::word_from_json(w, n));
  return images;
}

inline Json subgroup_to_json(const InducedSequence& h) {
  Json j;
  j["order"] = detail::pow_str(h.group().prime(), h.order_log());
  j["order_log"] = h.order_log();
  j["pivots"] = h.pivots();
  Json gens = Json::array();
  for (const NormalWord& w : h.members())
    gens.push_back(detail::word_to_json(w));
  j["generators"] = std::move(gens);
  return j;
}

inline Json checklist_to_json(const CheckList& c) {
  Json j;
  j["schema"] = kReportSchema;
  j["title"] = c.title();
  j["ok"] = c.ok();
  Json items = Json::array();
  for (const CheckItem& it : c.items()) {
    Json entry;
    entry["name"] = it.name;
    entry["status"] = to_string(it.status);
    if (!it.witness.empty()) entry["witness"] = it.witness;
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  return j;
}

}  // namespace pcg
