// Copyright 2026 The simauct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "simauct/duality.hpp"
#include "simauct/report.hpp"
#include "simauct/strategy.hpp"

namespace simauct {

using Json = nlohmann::ordered_json;

Json profile_to_json(const BidGrid& grid, const StrategyProfile& profile);
StrategyProfile profile_from_json(const BidGrid& grid, const Json& j);

Json certificate_to_json(const BidGrid& grid, const RegretCertificate& cert);

Json check_to_json(const CheckResult& check);
Json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

Json decomposition_to_json(const DecompositionReport& d);

}  // namespace simauct
