#pragma once

#include <string>

#include "json.hpp"

namespace linset {

enum class CheckStatus { pass, fail, vacuous, hypothesis_unmet };

[[nodiscard]] const char* to_string(CheckStatus s);

// Result of one verification check on one case. A fail always carries a
// replayable witness (serialized subspace plus a short reason).
struct VerificationOutcome {
    std::string check;
    CheckStatus status = CheckStatus::pass;
    std::string witness;
    nlohmann::json details = nlohmann::json::object();

    [[nodiscard]] bool failed() const { return status == CheckStatus::fail; }
};

[[nodiscard]] nlohmann::json to_json(const VerificationOutcome& o);

[[nodiscard]] VerificationOutcome make_pass(std::string check, nlohmann::json details = {});
[[nodiscard]] VerificationOutcome make_fail(std::string check, std::string witness,
                                            nlohmann::json details = {});
[[nodiscard]] VerificationOutcome make_vacuous(std::string check, nlohmann::json details = {});
[[nodiscard]] VerificationOutcome make_hypothesis_unmet(std::string check,
                                                        nlohmann::json details = {});

}  // namespace linset
