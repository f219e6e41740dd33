#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "m23bkm/bkm.hpp"
#include "m23bkm/verify.hpp"
#include "m23bkm/zhu.hpp"

namespace m23bkm {

using json = nlohmann::ordered_json;

// Exact values travel as decimal strings ("p/q" for rationals).
json to_json(const Integer& x);
json to_json(const Rational& x);
Integer integer_from_json(const json& j);
Rational rational_from_json(const json& j);

json to_json(const FracPowerSeries& s);
FracPowerSeries series_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const json& j);
json to_json(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const json& j);

json to_json(const Lattice& l);
Lattice lattice_from_json(const json& j);

json to_json(const FiniteQuadraticSpace& d);
FiniteQuadraticSpace fqs_from_json(const json& j);

json to_json(const VvmfTable& f);
VvmfTable vvmf_from_json(const json& j);

json to_json(const GolayCode& code);
GolayCode golay_from_json(const json& j);

json to_json(std::int64_t m, const PermutationIsometry& p, const GolayCode& code);
// Checks the recorded hashes against the code and permutation (IntegrityError).
PermutationIsometry permutation_from_json(const json& j, const GolayCode& code);

json to_json(const CycleShape& s);
json to_json(const CharacterReport& r);
json to_json(const ReflectivityReport& r);
json to_json(const CongruenceReport& r);
json to_json(const RootBoxReport& r);
json to_json(const RootSuiteReport& r);
json to_json(const ZhuReport& r);

std::string read_file(const std::filesystem::path& p);
// Writes through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);

}  // namespace m23bkm
