// Command-line front end: p-quotients of presentation files, series
// summaries, structure checks, central factorization, and corpus
// verification.  Exit status: 0 when every requested check passes (refused
// and not-applicable items do not fail a run), 1 when a check fails, 2 on
// usage, input, or resource errors.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcgroup/corpus.hpp"
#include "pcgroup/limits.hpp"
#include "pcgroup/parse.hpp"
#include "pcgroup/quotient.hpp"
#include "pcgroup/serial.hpp"
#include "pcgroup/subgroup.hpp"
#include "pcgroup/verify.hpp"

namespace {

struct LoadedGroup {
  pcg::PcGroup group;
  std::vector<pcg::NormalWord> images;  // generator images when known
  std::string label;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// .grp files go through the p-quotient; .json files load directly
LoadedGroup load_group(const std::string& path, unsigned max_class) {
  std::string stem = std::filesystem::path(path).stem().string();
  if (ends_with(stem, ".pcp")) stem.resize(stem.size() - 4);
  if (ends_with(path, ".json")) {
    const pcg::Json doc = pcg::Json::parse(slurp(path));
    return {pcg::pcp_from_json(doc), pcg::images_from_json(doc), stem};
  }
  pcg::FpPresentation pres = pcg::parse_presentation(slurp(path), stem);
  pcg::QuotientResult q = pcg::p_quotient(pres, max_class);
  if (!q.stabilized)
    std::cerr << "note: quotient of " << path << " did not stabilize by class "
              << max_class << "\n";
  return {std::move(q.group), std::move(q.images), stem};
}

void write_json(const std::string& path, const pcg::Json& doc) {
  if (path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out.good()) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

std::vector<std::string> series_orders(const pcg::PcGroup& g,
                                       const std::vector<pcg::InducedSequence>& s) {
  std::vector<std::string> out;
  for (const pcg::InducedSequence& t : s)
    out.push_back(pcg::detail::pow_str(g.prime(), t.order_log()));
  if (out.empty() || out.back() != "1") out.push_back("1");
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// run one named check, mapping scope errors to a refused item
pcg::CheckList run_check(const std::string& kind, const LoadedGroup& in) {
  const pcg::PcGroup& g = in.group;
  if (kind == "theorem1") return pcg::verify_theorem_1(g);
  if (kind == "hall") return pcg::verify_hall_bounds(g);
  if (kind == "classify") return pcg::classify_derived_subgroup(g).checks;
  if (kind == "power-central") return pcg::verify_power_central(g);
  if (kind == "transfer") {
    // self-contained: H is the reduced generating set, which must carry
    // the lower central series
    pcg::CheckList c("transfer");
    try {
      const pcg::GeneratorReduction red = pcg::reduce_generators(g);
      return pcg::verify_transfer_lemma(g, red.generators);
    } catch (const pcg::HypothesisError& e) {
      c.add("generator reduction", pcg::CheckStatus::refused, e.what());
      return c;
    }
  }
  throw CLI::ValidationError("check", "unknown check kind: " + kind);
}

int report_and_exit_code(const std::vector<pcg::CheckList>& checks,
                         const std::string& command,
                         const std::string& label,
                         const std::string& json_path) {
  bool ok = true;
  for (const pcg::CheckList& c : checks) {
    std::cout << pcg::to_text(c);
    ok = ok && c.ok();
  }
  std::cout << (ok ? "OK" : "FAILED") << "\n";
  if (!json_path.empty()) {
    pcg::Json doc;
    doc["schema"] = pcg::kReportSchema;
    doc["command"] = command;
    doc["group"] = label;
    doc["ok"] = ok;
    pcg::Json items = pcg::Json::array();
    for (const pcg::CheckList& c : checks) items.push_back(pcg::checklist_to_json(c));
    doc["checks"] = std::move(items);
    write_json(json_path, doc);
  }
  return ok ? 0 : 1;
}

int cmd_quotient(const std::string& input, unsigned max_class,
                 const std::string& out_path) {
  const std::string stem = std::filesystem::path(input).stem().string();
  pcg::FpPresentation pres = pcg::parse_presentation(slurp(input), stem);
  const pcg::QuotientResult q = pcg::p_quotient(pres, max_class);
  std::cout << stem << ": order " << pcg::detail::pow_str(q.group.prime(), q.group.ngens())
            << ", exponent-p class " << q.achieved_class
            << (q.stabilized ? " (stabilized)" : " (cut off)") << "\n";
  if (!out_path.empty()) write_json(out_path, pcg::quotient_to_json(q));
  return 0;
}

int cmd_series(const std::string& input, unsigned max_class,
               const std::string& json_path) {
  const LoadedGroup in = load_group(input, max_class);
  const pcg::PcGroup& g = in.group;
  const auto lcs = series_orders(g, pcg::lower_central_series(g));
  const auto der = series_orders(g, pcg::derived_series(g));
  const auto pcs = series_orders(g, pcg::lower_exponent_p_central_series(g));
  std::cout << in.label << ": order "
            << pcg::detail::pow_str(g.prime(), g.ngens()) << "\n";
  std::cout << "lower central:      " << join(lcs, " > ") << "\n";
  std::cout << "derived:            " << join(der, " > ") << "\n";
  std::cout << "exponent-p central: " << join(pcs, " > ") << "\n";
  if (!json_path.empty()) {
    pcg::Json doc;
    doc["schema"] = "series/1";
    doc["group"] = in.label;
    doc["order"] = pcg::detail::pow_str(g.prime(), g.ngens());
    doc["lower_central"] = lcs;
    doc["derived"] = der;
    doc["exponent_p_central"] = pcs;
    write_json(json_path, doc);
  }
  return 0;
}

int cmd_check(const std::string& kind, const std::string& input,
              unsigned max_class, const std::string& json_path) {
  const LoadedGroup in = load_group(input, max_class);
  std::vector<pcg::CheckList> checks;
  if (kind == "all") {
    for (const char* k : {"theorem1", "hall", "transfer", "classify", "power-central"})
      checks.push_back(run_check(k, in));
  } else {
    checks.push_back(run_check(kind, in));
  }
  return report_and_exit_code(checks, "check " + kind, in.label, json_path);
}

int cmd_decompose(const std::string& input, unsigned max_class,
                  const std::string& json_path) {
  const LoadedGroup in = load_group(input, max_class);
  const pcg::PcGroup& g = in.group;
  try {
    const pcg::Decomposition dec = pcg::central_decomposition(g);
    std::cout << in.label << ": H on " << dec.h_generators.size()
              << " generators, |H| = "
              << pcg::detail::pow_str(g.prime(), dec.h.order_log())
              << ", |U| = " << pcg::detail::pow_str(g.prime(), dec.u.order_log())
              << "\n";
    std::cout << pcg::to_text(dec.checks);
    const bool ok = dec.checks.ok();
    std::cout << (ok ? "OK" : "FAILED") << "\n";
    if (!json_path.empty()) {
      pcg::Json doc;
      doc["schema"] = pcg::kReportSchema;
      doc["command"] = "decompose";
      doc["group"] = in.label;
      doc["ok"] = ok;
      pcg::Json hg = pcg::Json::array(), ug = pcg::Json::array();
      for (const auto& w : dec.h_generators) hg.push_back(pcg::detail::word_to_json(w));
      for (const auto& w : dec.u_generators) ug.push_back(pcg::detail::word_to_json(w));
      doc["h_generators"] = std::move(hg);
      doc["u_generators"] = std::move(ug);
      doc["h"] = pcg::subgroup_to_json(dec.h);
      doc["u"] = pcg::subgroup_to_json(dec.u);
      doc["checks"] = pcg::checklist_to_json(dec.checks);
      write_json(json_path, doc);
    }
    return ok ? 0 : 1;
  } catch (const pcg::HypothesisError& e) {
    pcg::CheckList c("decomposition");
    c.add("hypotheses", pcg::CheckStatus::refused, e.what());
    return report_and_exit_code({c}, "decompose", in.label, json_path);
  }
}

// one corpus entry: quotient (for .grp), consistency, then every check that
// makes sense for the group's scope
pcg::CheckList corpus_entry(const std::filesystem::path& path, unsigned max_class,
                            bool long_mode) {
  pcg::CheckList c(path.filename().string());
  const LoadedGroup in = load_group(path.string(), max_class);
  const pcg::PcGroup& g = in.group;
  c.add("loads", pcg::CheckStatus::pass,
        "order " + pcg::detail::pow_str(g.prime(), g.ngens()));
  const auto violations = g.consistency_violations(1, g.ngens());
  c.require("consistent", violations.empty(),
            violations.empty() ? "" : violations.front().relation);

  const pcg::HypothesisReport hyp = pcg::hypothesis_check(g);
  c.add("hypotheses", hyp.satisfied ? pcg::CheckStatus::pass
                                    : pcg::CheckStatus::not_applicable,
        hyp.describe());

  auto absorb = [&](const pcg::CheckList& sub) {
    for (const pcg::CheckItem& it : sub.items())
      c.add(sub.title() + ": " + it.name, it.status, it.witness);
  };
  absorb(pcg::verify_hall_bounds(g));
  absorb(pcg::verify_theorem_1(g));
  if (hyp.satisfied) {
    absorb(pcg::classify_derived_subgroup(g).checks);
    absorb(pcg::verify_power_central(g));
    try {
      const pcg::Decomposition dec = pcg::central_decomposition(g);
      absorb(dec.checks);
    } catch (const pcg::VerificationError& e) {
      c.add("decomposition", pcg::CheckStatus::fail, e.what());
    }
    if (long_mode) absorb(pcg::verify_minimality(g));
  }
  return c;
}

int cmd_corpus_verify(const std::string& dir, bool long_mode,
                      const std::string& json_path) {
  std::vector<std::filesystem::path> entries;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (ends_with(name, ".grp") || ends_with(name, ".pcp.json"))
      entries.push_back(e.path());
  }
  std::sort(entries.begin(), entries.end());
  if (entries.empty()) {
    std::cerr << "no corpus entries in " << dir << "\n";
    return 2;
  }
  std::vector<pcg::CheckList> checks;
  for (const auto& path : entries) checks.push_back(corpus_entry(path, 8, long_mode));
  return report_and_exit_code(checks, long_mode ? "corpus-verify --long" : "corpus-verify",
                              dir, json_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite p-group computations on power-commutator presentations"};
  app.require_subcommand(1);

  std::string input, out_path, json_path, kind, dir;
  unsigned max_class = 8;
  bool long_mode = false;

  auto* quotient = app.add_subcommand("quotient", "p-quotient of a presentation file");
  quotient->add_option("file", input, "presentation (.grp)")->required();
  quotient->add_option("--class", max_class, "exponent-p class cap")->capture_default_str();
  quotient->add_option("--out", out_path, "write the group document (json; - for stdout)");

  auto* series = app.add_subcommand("series", "characteristic series of a group");
  series->add_option("file", input, "group document (.pcp.json) or presentation (.grp)")->required();
  series->add_option("--class", max_class, "class cap for .grp inputs")->capture_default_str();
  series->add_option("--json", json_path, "write a json report");

  auto* check = app.add_subcommand("check", "structure checks");
  check->add_option("kind", kind, "theorem1|hall|transfer|classify|power-central|all")
      ->required()
      ->check(CLI::IsMember({"theorem1", "hall", "transfer", "classify", "power-central", "all"}));
  check->add_option("file", input, "group document (.pcp.json) or presentation (.grp)")->required();
  check->add_option("--class", max_class, "class cap for .grp inputs")->capture_default_str();
  check->add_option("--json", json_path, "write a json report");

  auto* decompose = app.add_subcommand("decompose", "central factorization G = HU");
  decompose->add_option("file", input, "group document (.pcp.json) or presentation (.grp)")->required();
  decompose->add_option("--class", max_class, "class cap for .grp inputs")->capture_default_str();
  decompose->add_option("--json", json_path, "write a json report");

  auto* corpus = app.add_subcommand("corpus-verify", "verify every corpus entry in a directory");
  corpus->add_option("dir", dir, "directory with .grp / .pcp.json entries")->required();
  corpus->add_flag("--long", long_mode, "include the slower checks");
  corpus->add_option("--json", json_path, "write a json report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // 0 covers --help
  }

  try {
    if (app.got_subcommand(quotient)) return cmd_quotient(input, max_class, out_path);
    if (app.got_subcommand(series)) return cmd_series(input, max_class, json_path);
    if (app.got_subcommand(check)) return cmd_check(kind, input, max_class, json_path);
    if (app.got_subcommand(decompose)) return cmd_decompose(input, max_class, json_path);
    if (app.got_subcommand(corpus)) return cmd_corpus_verify(dir, long_mode, json_path);
  } catch (const pcg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const pcg::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const pcg::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
