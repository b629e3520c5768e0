#pragma once

// JSON form of a multivector:
//   {"sig":[p,q],"terms":[{"blade":[1,2],"num":N,"den":D}, ...]}
// `blade` lists sorted 1-based generator indices ([] is the identity).
// num/den are JSON integers when they fit in 64 bits, decimal strings
// otherwise. Approximate multivectors use {"blade":[...],"value":x}.

#include <string>
#include <vector>

#include "json.hpp"

#include "cliffq/algebra.hpp"

namespace cliffq {

namespace detail {

inline nlohmann::json integer_to_json(const mpz_class& z) {
    if (auto v = to_int64(z)) {
        return *v;
    }
    return z.get_str(10);
}

inline mpz_class integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) {
        return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
    }
    if (j.is_number_unsigned()) {
        return mpz_class(std::to_string(j.get<std::uint64_t>()), 10);
    }
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0) {
            throw domain_error("malformed integer string '" + j.get<std::string>() + "'");
        }
        return z;
    }
    throw domain_error("expected an integer, got " + j.dump());
}

inline Signature signature_from_json(const nlohmann::json& j) {
    if (!j.contains("sig") || !j["sig"].is_array() || j["sig"].size() != 2) {
        throw domain_error("multivector JSON needs \"sig\": [p, q]");
    }
    return Signature(j["sig"][0].get<int>(), j["sig"][1].get<int>());
}

inline Blade blade_from_json(const nlohmann::json& j) {
    if (!j.is_array()) {
        throw domain_error("\"blade\" must be an array of generator indices");
    }
    return Blade::from_indices(j.get<std::vector<int>>());
}

} // namespace detail

inline nlohmann::json to_json(const Multivector& u) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [blade, c] : u.terms()) {
        terms.push_back({{"blade", blade.indices()},
                         {"num", detail::integer_to_json(c.get_num())},
                         {"den", detail::integer_to_json(c.get_den())}});
    }
    return {{"sig", {u.signature().p(), u.signature().q()}}, {"terms", terms}};
}

inline nlohmann::json to_json(const ApproxMultivector& u) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [blade, c] : u.terms()) {
        terms.push_back({{"blade", blade.indices()}, {"value", c}});
    }
    return {{"sig", {u.signature().p(), u.signature().q()}}, {"terms", terms}};
}

inline Multivector multivector_from_json(const nlohmann::json& j) {
    try {
        const Signature sig = detail::signature_from_json(j);
        std::vector<Multivector::Term> terms;
        for (const auto& t : j.at("terms")) {
            Rational c(detail::integer_from_json(t.at("num")),
                       t.contains("den") ? detail::integer_from_json(t.at("den")) : mpz_class(1));
            if (c.get_den() == 0) {
                throw domain_error("zero denominator in multivector JSON");
            }
            c.canonicalize();
            terms.emplace_back(detail::blade_from_json(t.at("blade")), std::move(c));
        }
        return Multivector(sig, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("malformed multivector JSON: ") + e.what());
    }
}

inline ApproxMultivector approx_multivector_from_json(const nlohmann::json& j) {
    try {
        const Signature sig = detail::signature_from_json(j);
        std::vector<ApproxMultivector::Term> terms;
        for (const auto& t : j.at("terms")) {
            terms.emplace_back(detail::blade_from_json(t.at("blade")), t.at("value").get<double>());
        }
        return ApproxMultivector(sig, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("malformed multivector JSON: ") + e.what());
    }
}

} // namespace cliffq
