#include "cah/corpus.hpp"

#include <atomic>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

namespace cah {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

struct Task {
  int line;
  const RootDatum* datum;
  std::string mode, lhs, rhs, text;
};

GradedBimodule bimodule_of(const RootDatum& d, const std::string& text) {
  BimoduleWord w = parse_bimodule_word(d, text);
  return bott_samelson(d, w.word, w.omega);
}

using Status = RecordResult::Status;

void evaluate(const Task& t, const CorpusOptions& opt, RecordResult& r) {
  const RootDatum& d = *t.datum;
  auto check = [&](bool ok, const std::string& detail) {
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.detail = detail;
  };
  if (t.mode == "hecke") {
    HeckeElement a = parse_hecke(d, t.lhs), b = parse_hecke(d, t.rhs);
    check(a == b, format_hecke(d, a) + " != " + format_hecke(d, b));
  } else if (t.mode == "braid") {
    HeckeElement a = braid_image(d, parse_braid(d, t.lhs)), b = braid_image(d, parse_braid(d, t.rhs));
    check(a == b, format_hecke(d, a) + " != " + format_hecke(d, b));
  } else if (t.mode == "asp") {
    AspElement a = asp_act(d, parse_hecke(d, t.lhs), asp_generator(d)), b = parse_asp(d, t.rhs);
    check(a == b, format_asp(a) + " != " + format_asp(b));
  } else if (t.mode == "nf") {
    ThetaNormalForm nf = theta_normal_form(d, parse_braid(d, t.lhs), opt.budget);
    if (nf.status == ThetaNormalForm::Status::budget_exhausted) {
      r.status = Status::budget;
      r.detail = "budget of " + std::to_string(opt.budget) + " rewrites exhausted";
      return;
    }
    if (nf.status == ThetaNormalForm::Status::stuck) {
      check(false, "no normal form found");
      return;
    }
    BraidWord w{BraidLetter::theta(nf.lambda)};
    w.insert(w.end(), nf.residue.begin(), nf.residue.end());
    std::string got = format_braid(d, w), want = format_braid(d, parse_braid(d, t.rhs));
    check(got == want, got + " != " + want);
  } else if (t.mode == "poly") {
    Polynomial a = parse_polynomial(d, t.lhs), b = parse_polynomial(d, t.rhs);
    check(a == b, a.str() + " != " + b.str());
  } else if (t.mode == "bimod-iso") {
    check(find_isomorphism(d, bimodule_of(d, t.lhs), bimodule_of(d, t.rhs)).has_value(), "no isomorphism found");
  } else if (t.mode == "hom0") {
    auto dims = hom_degree_zero(d, bimodule_of(d, t.lhs), bimodule_of(d, t.rhs), opt.cutoff);
    std::string s;
    bool zero = true;
    for (int x : dims) {
      s += (s.empty() ? "" : ",") + std::to_string(x);
      if (x) zero = false;
    }
    check(zero, "dimensions " + s);
  } else if (t.mode == "decat") {
    DecatClass c = decat_bimodule(d, bimodule_of(d, t.lhs));
    if (!c.ok) {
      check(false, "filtration failed: " + c.failure);
      return;
    }
    HeckeElement b = parse_hecke(d, t.rhs);
    check(c.hecke == b, format_hecke(d, c.hecke) + " != " + format_hecke(d, b));
  } else if (t.mode == "crosscheck") {
    BimoduleWord w = parse_bimodule_word(d, t.lhs);
    CrossCheck c = cross_check_asp(d, w.word, w.omega);
    if (!c.failure.empty()) {
      check(false, "filtration failed: " + c.failure);
      return;
    }
    bool ok = c.equal;
    std::string detail = format_asp(c.bimodule_side) + " != " + format_asp(c.hecke_side);
    if (ok && t.rhs != "-") {
      AspElement want = parse_asp(d, t.rhs);
      ok = want == c.bimodule_side;
      detail = format_asp(c.bimodule_side) + " != " + format_asp(want);
    }
    check(ok, detail);
  } else if (t.mode == "braid-cx") {
    BraidReport b = verify_braid_relation(d, parse_braid(d, t.lhs), parse_braid(d, t.rhs));
    check(b.strict(), "isomorphic=" + std::to_string(b.isomorphic) + " End=" + std::to_string(b.end_lhs) + "," +
                          std::to_string(b.end_rhs));
  } else {
    r.status = Status::error;
    r.detail = "unknown mode '" + t.mode + "'";
  }
}

}  // namespace

int CorpusReport::count(RecordResult::Status s) const {
  int n = 0;
  for (const auto& r : records) n += r.status == s;
  return n;
}

int CorpusReport::exit_code() const {
  if (count(Status::error)) return 2;
  if (count(Status::fail)) return 1;
  if (count(Status::budget)) return 3;
  return 0;
}

CorpusReport run_corpus(const std::string& contents, const CorpusOptions& options) {
  CorpusReport report;
  std::vector<std::unique_ptr<RootDatum>> datums;
  const RootDatum* current = nullptr;
  std::vector<Task> tasks;
  std::vector<std::size_t> slot;
  std::istringstream in(contents);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    RecordResult r;
    r.line = line;
    r.text = s;
    if (s[0] == '@') {
      std::istringstream ds(s.substr(1));
      std::string key, type, lattice = "weight";
      ds >> key >> type >> lattice;
      try {
        if (key != "type") throw std::invalid_argument("unknown directive '@" + key + "'");
        datums.push_back(std::make_unique<RootDatum>(parse_cartan_type(type), parse_lattice_mode(lattice)));
        current = datums.back().get();
        continue;
      } catch (const std::exception& e) {
        r.status = Status::error;
        r.detail = e.what();
        report.records.push_back(r);
        continue;
      }
    }
    auto fields = split(s, '|');
    if (fields.size() != 3 || !current) {
      r.status = Status::error;
      r.detail = current ? "expected 'mode | lhs | rhs'" : "record before any @type directive";
      report.records.push_back(r);
      continue;
    }
    r.datum = current->name();
    tasks.push_back({line, current, fields[0], fields[1], fields[2], s});
    slot.push_back(report.records.size());
    report.records.push_back(r);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < tasks.size();) {
      RecordResult& r = report.records[slot[k]];
      try {
        evaluate(tasks[k], options, r);
      } catch (const std::exception& e) {
        r.status = Status::error;
        r.detail = e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

CorpusReport run_corpus_file(const std::string& path, const CorpusOptions& options) {
  std::ifstream f(path);
  if (!f) {
    CorpusReport r;
    RecordResult e;
    e.status = Status::error;
    e.detail = "cannot open " + path;
    r.records.push_back(e);
    return r;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return run_corpus(ss.str(), options);
}

std::string format_report(const CorpusReport& report) {
  static const char* names[] = {"PASS", "FAIL", "ERROR", "BUDGET"};
  std::string out;
  for (const auto& r : report.records) {
    out += std::string(names[static_cast<int>(r.status)]) + "  line " + std::to_string(r.line) + "  " + r.text;
    if (!r.detail.empty()) out += "\n      " + r.detail;
    out += "\n";
  }
  out += std::to_string(report.count(Status::pass)) + " passed, " + std::to_string(report.count(Status::fail)) +
         " failed, " + std::to_string(report.count(Status::error)) + " errors, " +
         std::to_string(report.count(Status::budget)) + " over budget\n";
  return out;
}

}  // namespace cah
