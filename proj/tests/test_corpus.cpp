#include <doctest.h>

#include "cah/corpus.hpp"

using namespace cah;
using Status = RecordResult::Status;

TEST_CASE("empty corpus passes") {
  CHECK(run_corpus("").exit_code() == 0);
  CHECK(run_corpus("# only a comment\n\n").records.empty());
}

TEST_CASE("false identity is reported by line") {
  auto r = run_corpus("@type A1\nhecke | T[s1]*T[s1] | q\nhecke | (T[s1]+1)*(T[s1]-q) | 0\n");
  CHECK(r.exit_code() == 1);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].status == Status::fail);
  CHECK(r.records[0].line == 2);
  CHECK(r.records[1].status == Status::pass);
  CHECK(format_report(r).find("FAIL  line 2") != std::string::npos);
}

TEST_CASE("budget exhaustion and malformed records") {
  CorpusOptions opt;
  opt.budget = 1;
  auto r = run_corpus("@type A1\nnf | T0.T1.T0 | th[4].T1^-1\n", opt);
  CHECK(r.records.at(0).status == Status::budget);
  CHECK(r.exit_code() == 3);
  opt.budget = 100;
  CHECK(run_corpus("@type A1\nnf | T0.T1.T0 | th[4].T1^-1\n", opt).exit_code() == 0);

  CHECK(run_corpus("hecke | 1 | 1\n").exit_code() == 2);
  CHECK(run_corpus("@type A1\nhecke | 1\n").exit_code() == 2);
  CHECK(run_corpus("@type A1\nhecke | T[s3] | 1\n").exit_code() == 2);
  CHECK(run_corpus("@type E8\n").exit_code() == 2);
  auto mixed = run_corpus("@type A1\nhecke | 1 | 2\nfrob | 1 | 1\n");
  CHECK(mixed.exit_code() == 2);
}

TEST_CASE("parallel runs keep record order") {
  std::string text = "@type A2\n";
  for (int k = 0; k < 12; ++k) text += k % 3 ? "braid | T1.T2.T1 | T2.T1.T2\n" : "hecke | q | 1\n";
  CorpusOptions opt;
  opt.jobs = 4;
  auto r = run_corpus(text, opt);
  REQUIRE(r.records.size() == 12);
  for (int k = 0; k < 12; ++k) CHECK(r.records[k].status == (k % 3 ? Status::pass : Status::fail));
}
