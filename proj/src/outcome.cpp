#include "linset/outcome.hpp"

#include "linset/errors.hpp"

namespace linset {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::vacuous: return "vacuous";
        case CheckStatus::hypothesis_unmet: return "hypothesis_unmet";
    }
    throw Error("unknown check status");
}

nlohmann::json to_json(const VerificationOutcome& o) {
    nlohmann::json j;
    j["check"] = o.check;
    j["status"] = to_string(o.status);
    if (!o.witness.empty()) j["witness"] = o.witness;
    if (!o.details.empty()) j["details"] = o.details;
    return j;
}

namespace {
VerificationOutcome make(std::string check, CheckStatus st, std::string witness,
                         nlohmann::json details) {
    VerificationOutcome o;
    o.check = std::move(check);
    o.status = st;
    o.witness = std::move(witness);
    if (!details.is_null()) o.details = std::move(details);
    return o;
}
}  // namespace

VerificationOutcome make_pass(std::string check, nlohmann::json details) {
    return make(std::move(check), CheckStatus::pass, {}, std::move(details));
}

VerificationOutcome make_fail(std::string check, std::string witness, nlohmann::json details) {
    if (witness.empty()) throw Error("fail outcome requires a witness");
    return make(std::move(check), CheckStatus::fail, std::move(witness), std::move(details));
}

VerificationOutcome make_vacuous(std::string check, nlohmann::json details) {
    return make(std::move(check), CheckStatus::vacuous, {}, std::move(details));
}

VerificationOutcome make_hypothesis_unmet(std::string check, nlohmann::json details) {
    return make(std::move(check), CheckStatus::hypothesis_unmet, {}, std::move(details));
}

}  // namespace linset
