#include <doctest.h>

#include <cmath>

#include "orrlab/lemma_harness.hpp"

using namespace orrlab;

namespace {
LemmaSampleSpec small_spec() {
  LemmaSampleSpec s;
  s.count = 2000;
  s.seed = 7;
  return s;
}
}  // namespace

TEST_CASE("trichotomy of critical times has no violations") {
  const WeightSystem ws((MultiplierSpec()));
  const LemmaReport rep = run_lemma(ws, LemmaId::WellSep, small_spec());
  CHECK(rep.violations == 0);
  CHECK(rep.admissible > 500);
  CHECK(!rep.vacuous);
}

TEST_CASE("d_t w / w bracket is finite and stable") {
  const WeightSystem ws((MultiplierSpec()));
  const LemmaReport rep = run_lemma(ws, LemmaId::Dtw, small_spec());
  CHECK(!rep.vacuous);
  CHECK(rep.stable);
  CHECK(rep.c_emp > 0.0);
  CHECK(rep.ratio_min > 0.0);
  CHECK(std::isfinite(rep.c_emp));
}

TEST_CASE("frequency comparison constants are stable") {
  const WeightSystem ws((MultiplierSpec()));
  for (LemmaId id : {LemmaId::WFreqCompare, LemmaId::WtFreqCompare,
                     LemmaId::Jswap, LemmaId::JTrans}) {
    const LemmaReport rep = run_lemma(ws, id, small_spec());
    CHECK(!rep.vacuous);
    CHECK(std::isfinite(rep.c_emp));
    CHECK(rep.stable);
  }
}

TEST_CASE("total-growth ratio flattens at large eta") {
  const WeightSystem ws((MultiplierSpec()));
  const LemmaReport rep = run_lemma(ws, LemmaId::Basic, small_spec());
  CHECK(rep.stable);  // < 5% relative change between 1e4 and 4e4
}

TEST_CASE("algebra property of the A norm") {
  const WeightSystem ws((MultiplierSpec()));
  const LemmaReport rep = run_lemma(ws, LemmaId::ProdAlg, small_spec());
  CHECK(!rep.vacuous);
  CHECK(rep.stable);
  CHECK(rep.c_emp > 0.0);
}

TEST_CASE("toy-model rate brackets for the weights") {
  const WeightSystem ws((MultiplierSpec()));
  const LemmaReport rep = run_lemma(ws, LemmaId::WUpLow, small_spec());
  CHECK(!rep.vacuous);
  CHECK(rep.stable);
  CHECK(rep.ratio_min > 0.0);
}

TEST_CASE("reports serialize to json") {
  const WeightSystem ws((MultiplierSpec()));
  LemmaSampleSpec s = small_spec();
  s.count = 200;
  const LemmaReport rep = run_lemma(ws, LemmaId::Dtw, s);
  const std::string j = rep.to_json();
  CHECK(j.find("\"lemma_id\":\"dtw\"") != std::string::npos);
  CHECK(j.find("C_emp") != std::string::npos);
}
