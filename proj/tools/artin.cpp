// Command-line front end: graph checks, canonical forms, word equality,
// poly-free towers, amalgam splittings and finite-quotient separation.
//
// Exit codes: 0 success/equal, 1 distinct/not-found, 2 parse error,
// 3 precondition failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "artin/artin.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string format = "text";
  bool oracle = false;
  std::string graph_path;
  std::string word1, word2;
  int max_degree = 5;
};

int degree_cap() {
  if (const char* env = std::getenv("ARTIN_MAX_DEGREE")) {
    try {
      return std::max(2, std::stoi(env));
    } catch (const std::exception&) {
      throw artin::precondition_error("ARTIN_MAX_DEGREE is not a number");
    }
  }
  return 6;
}

void emit(const Options& opt, const std::string& text, const json& j) {
  if (opt.format == "json")
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

std::string join_names(const std::vector<artin::VertexId>& vs) {
  std::string out;
  for (artin::VertexId v : vs) {
    if (!out.empty()) out += ", ";
    out += artin::symbols::name(v);
  }
  return out;
}

json names_json(const std::vector<artin::VertexId>& vs) {
  json out = json::array();
  for (artin::VertexId v : vs) out.push_back(artin::symbols::name(v));
  return out;
}

int cmd_check(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  g.require_valid();
  bool fc = g.is_fc_type();
  bool spherical = g.is_spherical_even();
  std::ostringstream os;
  os << "vertices: " << g.vertices().size() << "\n"
     << "edges: " << g.edge_count() << "\n"
     << "even: yes\n"
     << "fc: " << (fc ? "yes" : "no") << "\n"
     << "spherical: " << (spherical ? "yes" : "no") << "\n";
  emit(opt, os.str(),
       json{{"vertices", g.vertices().size()},
            {"edges", g.edge_count()},
            {"even", true},
            {"fc", fc},
            {"spherical", spherical}});
  return 0;
}

int cmd_nf(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  auto ctx = artin::ArtinContext::get(g);
  artin::Word w = artin::parse_word(opt.word1, g);
  std::string nf = ctx->normal_form(w)->str();
  json j{{"normal_form", nf}};
  std::string text = nf + "\n";
  if (opt.oracle) {
    auto verdict = artin::bfs_trivial(g, w, artin::default_budget(w));
    std::string v = verdict == artin::BfsVerdict::proven_trivial ? "proven-trivial" : "inconclusive";
    text += "oracle: " + v + "\n";
    j["oracle"] = v;
  }
  emit(opt, text, j);
  return 0;
}

int cmd_eq(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  auto ctx = artin::ArtinContext::get(g);
  artin::Word w1 = artin::parse_word(opt.word1, g);
  artin::Word w2 = artin::parse_word(opt.word2, g);
  bool equal = ctx->words_equal(w1, w2);
  std::string text = std::string(equal ? "equal" : "distinct") + "\n";
  json j{{"equal", equal}};
  if (opt.oracle) {
    artin::Word diff = artin::concat(w1, artin::inverse(w2));
    auto verdict = artin::bfs_trivial(g, diff, artin::default_budget(diff));
    std::string v = verdict == artin::BfsVerdict::proven_trivial ? "proven-trivial" : "inconclusive";
    text += "oracle: " + v + "\n";
    j["oracle"] = v;
    bool raag = true;
    for (const auto& e : g.edges())
      if (e.m != 2) raag = false;
    if (raag) {
      bool agree = artin::raag_normal_form(g, w1) == artin::raag_normal_form(g, w2);
      text += std::string("raag: ") + (agree ? "equal" : "distinct") + "\n";
      j["raag"] = agree ? "equal" : "distinct";
    }
  }
  emit(opt, text, j);
  return equal ? 0 : 1;
}

int cmd_tower(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  auto ctx = artin::ArtinContext::get(g);
  artin::PolyfreeTower tower = ctx->polyfree_tower();
  std::ostringstream os;
  json stages = json::array();
  for (std::size_t i = 0; i < tower.stages.size(); ++i) {
    const auto& st = tower.stages[i];
    os << "stage " << (i + 1) << ": remove " << artin::symbols::name(st.removed) << ", rank ";
    json rank;
    if (st.rank) {
      os << *st.rank;
      rank = *st.rank;
    } else {
      os << "countably-infinite";
      rank = "countably-infinite";
    }
    os << "\n";
    stages.push_back(json{{"remove", artin::symbols::name(st.removed)}, {"rank", rank}});
  }
  emit(opt, os.str(), json{{"stages", stages}});
  return 0;
}

int cmd_split(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  g.require_valid();
  auto split = artin::amalgam_split(g);
  if (!split) {
    emit(opt, "complete\n", json{{"complete", true}});
    return 0;
  }
  std::ostringstream os;
  os << "X = {" << join_names(split->X) << "}\n"
     << "Y = {" << join_names(split->Y) << "}\n"
     << "Z = {" << join_names(split->Z) << "}\n";
  emit(opt, os.str(),
       json{{"complete", false},
            {"s", artin::symbols::name(split->s)},
            {"t", artin::symbols::name(split->t)},
            {"X", names_json(split->X)},
            {"Y", names_json(split->Y)},
            {"Z", names_json(split->Z)}});
  return 0;
}

int cmd_separate(const Options& opt) {
  if (opt.max_degree > degree_cap())
    throw artin::precondition_error("degree bound exceeded (ARTIN_MAX_DEGREE caps --max-degree at " +
                                    std::to_string(degree_cap()) + ")");
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  auto ctx = artin::ArtinContext::get(g);
  artin::Word w = artin::parse_word(opt.word1, g);
  artin::SeparateResult result = artin::separate(*ctx, w, opt.max_degree);
  if (result.status == artin::SeparateStatus::trivial_input) {
    emit(opt, "trivial-input\n", json{{"result", "trivial-input"}});
    return 0;
  }
  if (result.status == artin::SeparateStatus::not_found) {
    emit(opt, "not-found\n", json{{"result", "not-found"}});
    return 1;
  }
  const artin::FiniteWitness& fw = *result.witness;
  json jw;
  if (fw.kind == artin::FiniteWitness::Kind::cyclic) {
    jw["target"] = "Z/" + std::to_string(fw.modulus);
    json assign = json::object();
    for (const auto& [v, r] : fw.cyclic_assignment) assign[artin::symbols::name(v)] = r;
    jw["assignment"] = assign;
    jw["image"] = fw.cyclic_image;
  } else {
    jw["target"] = "S" + std::to_string(fw.degree);
    json assign = json::object();
    for (const auto& [v, p] : fw.perm_assignment) assign[artin::symbols::name(v)] = artin::cycle_string(p);
    jw["assignment"] = assign;
    jw["image"] = artin::cycle_string(fw.perm_image);
  }
  emit(opt, fw.to_text(), json{{"result", "witness"}, {"witness", jw}});
  return 0;
}

int cmd_act(const Options& opt) {
  artin::CoxeterGraph g = artin::load_graph_file(opt.graph_path);
  auto ctx = artin::ArtinContext::get(g);
  artin::Word w = artin::parse_word(opt.word1, g);
  artin::SemidirectElement e = ctx->psi(w);
  std::string text = ctx->sd_display(e);
  emit(opt, text + "\n",
       json{{"g1", artin::display_word(ctx->gamma1()->form_word(*e.g1))}, {"omega", e.omega.display()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"even Artin groups of FC type: canonical forms, equality, towers, splittings"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--oracle", opt.oracle, "also print brute-force oracle verdicts (debug)");

  CLI::App* check = app.add_subcommand("check", "validate a graph and print even/FC verdicts");
  check->add_option("graph", opt.graph_path)->required();
  CLI::App* nf = app.add_subcommand("nf", "canonical form of a word");
  nf->add_option("graph", opt.graph_path)->required();
  nf->add_option("word", opt.word1)->required();
  CLI::App* eq = app.add_subcommand("eq", "decide equality of two words");
  eq->add_option("graph", opt.graph_path)->required();
  eq->add_option("word1", opt.word1)->required();
  eq->add_option("word2", opt.word2)->required();
  CLI::App* tower = app.add_subcommand("tower", "poly-free tower stages");
  tower->add_option("graph", opt.graph_path)->required();
  CLI::App* split = app.add_subcommand("split", "amalgam splitting at a non-edge");
  split->add_option("graph", opt.graph_path)->required();
  CLI::App* separate = app.add_subcommand("separate", "find a finite quotient separating a word");
  separate->add_option("graph", opt.graph_path)->required();
  separate->add_option("word", opt.word1)->required();
  separate->add_option("--max-degree", opt.max_degree, "largest permutation degree to try");
  CLI::App* act = app.add_subcommand("act", "print psi(word) as (g1 ; omega) (debug)");
  act->add_option("graph", opt.graph_path)->required();
  act->add_option("word", opt.word1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (nf->parsed()) return cmd_nf(opt);
    if (eq->parsed()) return cmd_eq(opt);
    if (tower->parsed()) return cmd_tower(opt);
    if (split->parsed()) return cmd_split(opt);
    if (separate->parsed()) return cmd_separate(opt);
    if (act->parsed()) return cmd_act(opt);
  } catch (const artin::parse_error& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return 2;
  } catch (const artin::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
