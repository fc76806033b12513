#include <CLI11.hpp>

#include "cah/corpus.hpp"

#include <atomic>
#include <iostream>
#include <thread>

using namespace cah;

namespace {

struct Globals {
  std::string type = "A1";
  std::string lattice = "weight";
  int budget = 10000;
  int cutoff = 12;
  int ball = -1;
  int jobs = 1;
};

std::string format_filtration(const RootDatum& d, const Filtration& f) {
  std::string s;
  for (const auto& [w, p] : f.entries) s += "  " + format_affine(d, w) + " : " + p.str() + "\n";
  return s;
}

std::vector<std::vector<int>> all_words(int letters, int max_len) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (static_cast<int>(out[k].size()) == max_len) continue;
    for (int i = 0; i < letters; ++i) {
      auto w = out[k];
      w.push_back(i);
      out.push_back(w);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine Hecke algebras, antispherical modules and Soergel-type bimodules"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--type", g.type, "Cartan type: A1, A2, B2, G2, A1xA1")->capture_default_str();
  app.add_option("--lattice", g.lattice, "weight or root")->capture_default_str();
  app.add_option("--budget", g.budget, "rewrite budget for normal forms")->capture_default_str();
  app.add_option("--cutoff", g.cutoff, "degree cutoff for Hom computations")->capture_default_str();
  app.add_option("--ball", g.ball, "length bound for filtration candidates");
  app.add_option("--jobs", g.jobs, "worker threads")->capture_default_str();

  std::vector<std::string> factors;
  auto* mul = app.add_subcommand("hecke-mul", "Multiply Hecke elements");
  mul->add_option("elements", factors, "e.g. 'q*T[s1] + e[1]'")->required();

  std::string word, other;
  auto* nf = app.add_subcommand("hecke-nf", "Theta normal form of a braid word, and its image");
  nf->add_option("word", word, "e.g. 'T0^-1.th[1].om[1]'")->required();

  std::string module = "1";
  auto* asp = app.add_subcommand("asp-act", "Act on the antispherical module");
  asp->add_option("element", word, "Hecke element")->required();
  asp->add_option("module", module, "antispherical element, default e[0]");

  auto* build = app.add_subcommand("bimod-build", "Right-action matrices of a Bott-Samelson bimodule");
  build->add_option("word", word, "e.g. 'R0.R1@om[1]'")->required();
  bool asp_kind = false;
  build->add_flag("--asp", asp_kind, "antispherical quotient");

  auto* chr = app.add_subcommand("bimod-char", "Graded rank, standard filtration and class");
  chr->add_option("word", word, "bimodule word")->required();
  chr->add_flag("--asp", asp_kind, "antispherical quotient");

  bool no_end = false;
  auto* braid = app.add_subcommand("braid-verify", "Compare minimal complexes of two braid words");
  braid->add_option("lhs", word)->required();
  braid->add_option("rhs", other)->required();
  braid->add_flag("--no-end", no_end, "skip the endomorphism computation");

  bool is_braid = false;
  auto* dec = app.add_subcommand("decat", "Class of a bimodule, or of the complex of a braid word");
  dec->add_option("word", word)->required();
  dec->add_flag("--braid", is_braid, "read the word as a braid word");

  int max_len = 4;
  auto* cross = app.add_subcommand("crosscheck", "Antispherical decategorification cross-check");
  cross->add_option("word", word, "bimodule word; all words up to --length when omitted");
  cross->add_option("--length", max_len, "maximal word length")->capture_default_str();

  std::vector<std::string> paths;
  auto* corpus = app.add_subcommand("corpus-run", "Run identity corpora");
  corpus->add_option("files", paths)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (corpus->parsed()) {
      CorpusOptions opt{g.budget, g.cutoff, g.jobs};
      int code = 0;
      for (const auto& p : paths) {
        CorpusReport r = run_corpus_file(p, opt);
        std::cout << "== " << p << "\n" << format_report(r);
        code = std::max(code, r.exit_code());
      }
      return code;
    }

    RootDatum d(parse_cartan_type(g.type), parse_lattice_mode(g.lattice));

    if (mul->parsed()) {
      HeckeElement h = HeckeElement::scalar(d, 1);
      for (const auto& f : factors) h = hecke_multiply(d, h, parse_hecke(d, f));
      std::cout << format_hecke(d, h) << "\n";
      return 0;
    }
    if (nf->parsed()) {
      BraidWord w = parse_braid(d, word);
      ThetaNormalForm n = theta_normal_form(d, w, g.budget);
      if (n.status == ThetaNormalForm::Status::budget_exhausted) {
        std::cerr << "budget of " << g.budget << " rewrites exhausted\n";
        return 3;
      }
      if (n.status == ThetaNormalForm::Status::ok) {
        BraidWord f{BraidLetter::theta(n.lambda)};
        f.insert(f.end(), n.residue.begin(), n.residue.end());
        std::cout << "normal form " << format_braid(d, f) << "  (" << n.steps << " rewrites)\n";
      } else {
        std::cout << "normal form not found\n";
      }
      std::cout << "image " << format_hecke(d, braid_image(d, w)) << "\n";
      return n.status == ThetaNormalForm::Status::ok ? 0 : 1;
    }
    if (asp->parsed()) {
      AspElement m = module == "1" ? asp_generator(d) : parse_asp(d, module);
      std::cout << format_asp(asp_act(d, parse_hecke(d, word), m)) << "\n";
      return 0;
    }
    if (build->parsed() || chr->parsed()) {
      BimoduleWord w = parse_bimodule_word(d, word);
      GradedBimodule m = bott_samelson(d, w.word, w.omega);
      if (asp_kind) {
        m = asp_identity(d, w.omega);
        for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) m = asp_apply_R(d, *it, m);
      }
      if (build->parsed()) {
        std::cout << format_bimodule(m);
        return 0;
      }
      std::cout << "graded rank";
      for (int x : graded_rank(m)) std::cout << ' ' << x;
      std::cout << "  (from degree " << min_degree(m) << ")\n";
      std::vector<AffineWeylElement> cands = subword_candidates(d, w.word, w.omega);
      if (g.ball >= 0) cands = length_ball(d, g.ball);
      if (asp_kind) cands = coset_candidates(d, cands);
      Filtration f = standard_filtration(d, m, cands);
      if (!f.ok) {
        std::cout << "filtration failed: " << f.failure << "\n";
        return 1;
      }
      std::cout << "standard filtration\n" << format_filtration(d, f);
      DecatClass c = decat_filtration(d, f, m.kind);
      std::cout << "class " << (asp_kind ? format_asp(c.asp) : format_hecke(d, c.hecke)) << "\n";
      return 0;
    }
    if (braid->parsed()) {
      BraidReport r = verify_braid_relation(d, parse_braid(d, word), parse_braid(d, other), !no_end);
      std::cout << "lhs " << r.ranks_lhs << "\nrhs " << r.ranks_rhs << "\n";
      std::cout << "isomorphic " << (r.isomorphic ? "yes" : "no");
      if (r.isomorphic) std::cout << " (witness " << r.witness_hash << ")";
      std::cout << "\n";
      if (!no_end) std::cout << "End " << r.end_lhs << " " << r.end_rhs << (r.strict() ? "  strict" : "") << "\n";
      std::cout << "time " << r.seconds << " s\n";
      return (no_end ? r.isomorphic : r.strict()) ? 0 : 1;
    }
    if (dec->parsed()) {
      DecatClass c;
      if (is_braid) {
        c = decat_complex(d, braid_complex(d, parse_braid(d, word)));
      } else {
        BimoduleWord w = parse_bimodule_word(d, word);
        c = decat_bimodule(d, bott_samelson(d, w.word, w.omega),
                           g.ball >= 0 ? length_ball(d, g.ball) : subword_candidates(d, w.word, w.omega));
      }
      if (!c.ok) {
        std::cout << "filtration failed: " << c.failure << "\n";
        return 1;
      }
      std::cout << format_hecke(d, c.hecke) << "\n";
      return 0;
    }
    if (cross->parsed()) {
      std::vector<BimoduleWord> todo;
      if (!word.empty()) {
        todo.push_back(parse_bimodule_word(d, word));
      } else {
        for (int om = 0; om < static_cast<int>(d.omega().size()); ++om)
          for (const auto& w : all_words(d.affine_count(), max_len)) todo.push_back({w, om});
      }
      std::vector<CrossCheck> results(todo.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t k; (k = next++) < todo.size();) results[k] = cross_check_asp(d, todo[k].word, todo[k].omega);
      };
      std::vector<std::thread> pool;
      for (int j = 1; j < g.jobs; ++j) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      int bad = 0;
      for (std::size_t k = 0; k < todo.size(); ++k) {
        const CrossCheck& r = results[k];
        if (r.equal && todo.size() > 1) continue;
        std::cout << (r.equal ? "EQUAL " : "MISMATCH ") << format_bimodule_word(todo[k]) << "\n";
        if (!r.failure.empty()) std::cout << "  filtration failed: " << r.failure << "\n";
        std::cout << "  bimodule " << format_asp(r.bimodule_side) << "\n  hecke    " << format_asp(r.hecke_side)
                  << "\n";
        bad += !r.equal;
      }
      if (todo.size() > 1) std::cout << todo.size() - bad << "/" << todo.size() << " equal\n";
      return bad ? 1 : 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
