#pragma once

#include <functional>
#include <string>
#include <vector>

#include "m23bkm/characters.hpp"
#include "m23bkm/vvmf.hpp"

namespace m23bkm {

class MismatchAt : public std::runtime_error {
 public:
  MismatchAt(const ClassKey& key, const Rational& exponent);
  ClassKey key;
  Rational exponent;
};

struct KeyResult {
  ClassKey key;
  std::string status;         // PASS, FAIL, SIGN-AMBIGUITY or UNCHECKED-EXACT
  std::int64_t witnesses = 0; // untwisted-sector elements compared against this component
  std::optional<Rational> first_mismatch;
};

struct CharacterReport {
  std::int64_t m = 1;
  std::int64_t bound = 5;
  bool counts_match = false;
  std::int64_t cosets_enumerated = 0;  // up to negation
  std::int64_t comparisons = 0;
  std::vector<KeyResult> keys;
  std::string status;                  // PASS or FAIL
  std::string first_mismatch;
  double seconds = 0;

  std::int64_t count(const std::string& status) const;
};

using ProgressFn = std::function<void(const std::string&)>;
using CharacterVisitor = std::function<void(const GroupElement& element, std::int64_t multiplicity, std::int64_t j,
                                            const ClassKey& key, const FracPowerSeries& g)>;

// Visits ch/eta^{rk Lambda^nu} for each untwisted element (alpha, 0, j), one
// alpha per pair {alpha, -alpha}, valid through lead + f.bound of the matching
// F component.
void for_each_untwisted_character(const ClassData& c, const VvmfTable& f, const CharacterVisitor& visit);

// Compares ch/eta^{rk Lambda^nu} on the untwisted sector with the F component of
// the matching (order, -Q) class, through exponent lead + bound.
CharacterReport verify_F_equals_characters(const ClassData& c, std::int64_t bound,
                                           const ProgressFn& progress = nullptr);

// Class counts of L'/L against disc(Lambda_nu)(-1) x disc(II_{1,1}(m)).
bool fusion_counts_match(const ClassData& c);

// Constant term of theta_{Lambda_nu}/eta^24 (theta_Lambda for m = 1).
Integer vi_dim_check(const ClassData& c);

}  // namespace m23bkm
