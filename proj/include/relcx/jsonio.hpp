#pragma once

#include <json.hpp>

#include "relcx/witnesses.hpp"

namespace relcx {

nlohmann::json field_to_json(const Field& F);
nlohmann::json mat_to_json(const Mat& m);
nlohmann::json subspace_to_json(const Subspace& s);
nlohmann::json tuple_to_json(const SubspaceTuple& X);
nlohmann::json elem_to_json(const SemilinearElem& x);
nlohmann::json group_to_json(const GroupSpec& H);
nlohmann::json bounds_to_json(const BoundInterval& b);

/// Stable report shape; timings are excluded by default so reports are
/// byte-identical across runs and thread counts.
nlohmann::json report_to_json(const RCReport& rep, bool include_timings = false);

nlohmann::json package_to_json(const WitnessPackage& pkg);
nlohmann::json verify_to_json(const VerifyReport& rep);

WitnessPackage package_from_json(const nlohmann::json& j);
GroupSpec group_from_json(const nlohmann::json& j);

}  // namespace relcx
