#pragma once

// Dynamic verification: instantiate every variable with a random element of
// its declared type or rank and confirm the concrete type lies inside the
// inferred one.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cliffq/dsl/ast.hpp"
#include "cliffq/dsl/evaluate.hpp"
#include "cliffq/dsl/infer.hpp"
#include "cliffq/sampling.hpp"

namespace cliffq::dsl {

struct CheckOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    SeriesPolicy series;
};

struct CheckFailure {
    int trial;
    std::uint64_t seed;
    QType observed;
    RankSpectrum grades;
};

struct CheckReport {
    std::string expr;
    Signature sig;
    QType inferred;
    int trials = 0;
    /// Trials whose Clifford series hit the term cap.
    int skipped = 0;
    QType observed;
    RankSpectrum grades;
    std::vector<CheckFailure> failures;

    bool passed() const noexcept { return failures.empty(); }
    /// Every inferred residue was seen at least once.
    bool tight() const noexcept { return observed == inferred; }
};

/// Throws infeasible_error if some declaration has no nonzero element in sig.
inline void require_feasible(const std::vector<VariableInfo>& vars, const Signature& sig) {
    for (const auto& v : vars) {
        if (!v.declaration) {
            throw domain_error("variable '" + v.name + "' has no type declaration");
        }
        if (v.declaration->is_rank()) {
            if (v.declaration->rank() > sig.n()) {
                throw infeasible_error("infeasible rank " + std::to_string(v.declaration->rank()) + " for '" +
                                       v.name + "' in " + sig.name());
            }
        } else if (!type_feasible(sig, v.declaration->qtype())) {
            throw infeasible_error("infeasible type " + v.declaration->qtype().render() + " for '" + v.name +
                                   "' in " + sig.name());
        }
    }
}

/// One sample per distinct variable, drawn in order of first appearance.
inline Bindings sample_bindings(const std::vector<VariableInfo>& vars, const Signature& sig, Rng& rng) {
    Bindings out;
    for (const auto& v : vars) {
        const Declaration& d = *v.declaration;
        out.emplace(v.name, d.is_rank() ? random_of_rank(sig, d.rank(), rng) : random_of_type(sig, d.qtype(), rng));
    }
    return out;
}

/// Trial i uses the generator seeded with options.seed + i.
inline CheckReport check(const Expr& e, const Signature& sig, const CheckOptions& options = {}) {
    if (options.trials < 1) {
        throw domain_error("check needs at least one trial");
    }
    const auto vars = variables(e);
    require_feasible(vars, sig);

    CheckReport report{render(e), sig, infer(e), options.trials, 0, QType::none(), RankSpectrum{}, {}};
    for (int i = 0; i < options.trials; ++i) {
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
        Rng rng(seed);
        const Bindings bindings = sample_bindings(vars, sig, rng);
        try {
            const Value v = evaluate(e, sig, bindings, options.series);
            const QType observed = v.qtype();
            const RankSpectrum grades = v.grades();
            report.observed |= observed;
            report.grades |= grades;
            if (!observed.subset_of(report.inferred)) {
                report.failures.push_back({i, seed, observed, grades});
            }
        } catch (const convergence_error&) {
            ++report.skipped;
        }
    }
    return report;
}

inline std::string render_text(const CheckReport& r) {
    std::ostringstream out;
    out << "expr: " << r.expr << '\n';
    out << "sig: " << r.sig.name() << '\n';
    out << "inferred: " << r.inferred.render() << '\n';
    out << "trials: " << r.trials;
    if (r.skipped > 0) {
        out << " (" << r.skipped << " skipped: series did not converge)";
    }
    out << '\n';
    out << "observed: " << r.observed.render() << " grades " << r.grades.render() << '\n';
    out << "tight: " << (r.tight() ? "yes" : "no") << '\n';
    for (const auto& f : r.failures) {
        out << "FAIL trial " << f.trial << " seed " << f.seed << ": observed " << f.observed.render() << " grades "
            << f.grades.render() << '\n';
    }
    out << (r.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

inline nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures) {
        failures.push_back({{"trial", f.trial},
                            {"seed", f.seed},
                            {"observed", f.observed.render()},
                            {"grades", f.grades.members()}});
    }
    return {{"expr", r.expr},
            {"sig", {r.sig.p(), r.sig.q()}},
            {"inferred", r.inferred.render()},
            {"trials", r.trials},
            {"skipped", r.skipped},
            {"observed", r.observed.render()},
            {"grades", r.grades.members()},
            {"failures", failures},
            {"tight", r.tight()},
            {"pass", r.passed()}};
}

} // namespace cliffq::dsl
