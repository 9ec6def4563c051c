#ifndef ORRLAB_LEMMA_HARNESS_HPP
#define ORRLAB_LEMMA_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "orrlab/weights.hpp"

namespace orrlab {

// Inequality checks over random admissible tuples.  Unknown absolute
// constants are replaced by the empirical maximum ratio C_emp; a lemma
// "passes" when C_emp is finite and stable within a factor 2 under doubling
// the sample.
enum class LemmaId {
  Basic,           // total growth of w: r(eta) ~ const
  WellSep,         // critical-time trichotomy
  Dtw,             // d_t w / w ~ 1/(1 + |t - eta/k|)
  WtFreqCompare,   // d_t w/w comparison across frequencies
  WFreqCompare,    // w_NR(xi)/w_NR(eta) <= C e^{mu sqrt|eta-xi|}
  Jswap,           // exchanging J_k(eta) for J_l(xi)
  JTrans,          // |J_k(eta)/J_l(xi) - 1| for early times
  ProdAlg,         // algebra property of the A norm on v-only fields
  WUpLow,          // d_tau w against the toy-model rates on I_{k,eta}
};

const char* lemma_name(LemmaId id);
LemmaId lemma_from_name(const std::string& name);
std::vector<LemmaId> all_lemmas();

struct LemmaSampleSpec {
  long count = 10000;
  double eta_min = 16.0;
  double eta_max = 1.0e4;
  std::uint64_t seed = 1;
};

struct LemmaReport {
  std::string lemma_id;
  long samples = 0;      // requested tuples
  long admissible = 0;   // tuples satisfying the hypotheses
  long violations = 0;   // hard violations (WellSep trichotomy only)
  double c_emp = 0.0;    // empirical constant over the full sample
  double c_emp_half = 0.0;  // over the first half, for the stability flag
  double ratio_min = 0.0;   // lower end of the observed bracket
  bool stable = false;
  bool vacuous = false;
  std::string note;

  std::string to_json() const;
};

LemmaReport run_lemma(const WeightSystem& ws, LemmaId id,
                      const LemmaSampleSpec& spec);

}  // namespace orrlab

#endif
