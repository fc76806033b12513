#pragma once

#include "cah/io.hpp"

#include <string>
#include <vector>

namespace cah {

// Line format: `mode | lhs | rhs`, with `@type A2 weight` switching the root
// datum and `#` starting a comment. Modes:
//   hecke       Hecke elements equal
//   braid       braid_image(lhs) = braid_image(rhs)
//   asp         lhs·m₀ = rhs (an antispherical element)
//   nf          theta normal form of lhs is the word rhs (th[λ] then finite letters)
//   poly        polynomials equal
//   bimod-iso   Bott-Samelson words give isomorphic bimodules
//   hom0        Hom^δ(lhs, rhs) = 0 for δ ≤ cutoff
//   decat       class of the Bott-Samelson word lhs is the Hecke element rhs
//   crosscheck  both sides of the antispherical check on the word lhs agree, and equal rhs unless rhs is "-"
//   braid-cx    minimal complexes of two braid words are isomorphic with End = 1
struct CorpusOptions {
  int budget = 10000;
  int cutoff = 12;
  int jobs = 1;
};

struct RecordResult {
  enum class Status { pass, fail, error, budget };
  int line = 0;
  std::string datum;
  std::string text;
  Status status = Status::pass;
  std::string detail;
};

struct CorpusReport {
  std::vector<RecordResult> records;
  int count(RecordResult::Status s) const;
  // 0 all pass, 1 any failure, 2 malformed input, 3 budget exhausted.
  int exit_code() const;
};

CorpusReport run_corpus(const std::string& contents, const CorpusOptions& options = {});
CorpusReport run_corpus_file(const std::string& path, const CorpusOptions& options = {});
std::string format_report(const CorpusReport& report);

}  // namespace cah
