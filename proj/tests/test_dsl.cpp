#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cliffq/dsl.hpp"
#include "oracles.hpp"

using namespace cliffq;
using namespace cliffq::dsl;

namespace {

std::size_t error_position(const std::string& src) {
    try {
        parse(src);
    } catch (const parse_error& e) {
        return e.position();
    }
    ADD_FAILURE() << "no parse error for " << src;
    return std::string::npos;
}

QType inferred(const std::string& src) { return infer(parse(src)); }

} // namespace

TEST(Parse, DeclarationsAndInheritance) {
    const auto e = parse("U:1 * V:#2 + U");
    const auto vars = variables(e);
    ASSERT_EQ(vars.size(), 2u);
    EXPECT_EQ(vars[0].name, "U");
    EXPECT_EQ(vars[0].declaration, Declaration::of_type(QType::main(1)));
    EXPECT_EQ(vars[1].name, "V");
    EXPECT_TRUE(vars[1].declaration->is_rank());
    EXPECT_EQ(vars[1].declaration->rank(), 2);
    EXPECT_EQ(vars[1].declaration->qtype(), QType::main(2));
    EXPECT_EQ(render(e), "(U:1~ * V:#2) + U:1~");
}

TEST(Parse, CompoundTypesAcceptSeveralSpellings) {
    EXPECT_EQ(parse("U:0~2~")->declaration->qtype(), QType::of_residues({0, 2}));
    EXPECT_EQ(parse("U:02")->declaration->qtype(), QType::of_residues({0, 2}));
    EXPECT_EQ(parse("U:13~")->declaration->qtype(), QType::of_residues({1, 3}));
}

TEST(Parse, Precedence) {
    EXPECT_EQ(render(parse("U:1 + V:2 W:3")), "U:1~ + (V:2~ * W:3~)");
    EXPECT_EQ(render(parse("U:1 * V:2 ^ W:3")), "U:1~ * (V:2~ ^ W:3~)");
    EXPECT_EQ(render(parse("-U:1 ** 2")), "-(U:1~ ** 2)");
    EXPECT_EQ(render(parse("U:1 ^ V:1 ^^ 2")), "U:1~ ^ (V:1~ ^^ 2)");
    EXPECT_EQ(render(parse("U:1 - V:2")), "U:1~ + (-V:2~)");
    EXPECT_EQ(render(parse("(U:1 + V:2) * 3/2")), "(U:1~ + V:2~) * 3/2");
    EXPECT_EQ(render(parse("wexp(U:2) sin(V:1)")), "wexp(U:2~) * sin(V:1~)");
    EXPECT_EQ(render(parse("{U:1, V:1, [W:2, X:3]}")), "{U:1~, V:1~, [W:2~, X:3~]}");
}

TEST(Parse, Numbers) {
    EXPECT_EQ(parse("0.25")->value, Rational(1, 4));
    EXPECT_EQ(parse("6/4")->value, Rational(3, 2));
    EXPECT_EQ(parse("7")->value, Rational(7));
}

TEST(Parse, ErrorsCarryPositions) {
    EXPECT_EQ(error_position("U:1 + V"), 6u);
    EXPECT_EQ(error_position("U:1 + U:2"), 6u);
    EXPECT_EQ(error_position("[U:1]"), 0u);
    EXPECT_EQ(error_position("tan(U:1)"), 0u);
    EXPECT_EQ(error_position("U:4"), 2u);
    EXPECT_EQ(error_position("U:1 +"), 5u);
    EXPECT_EQ(error_position("U:1 ** 65"), 7u);
    EXPECT_EQ(error_position("1/0"), 0u);
    EXPECT_EQ(error_position(""), 0u);
    EXPECT_EQ(error_position("U:1 )"), 4u);
    EXPECT_NO_THROW(parse("U + V", ParseOptions{false}));
}

TEST(Parse, RenderRoundTripsOverACorpus) {
    const char* corpus[] = {
        "U:1",
        "3/2",
        "-U:0~2~",
        "U:1 + V:2 + W:3",
        "U:1 V:2 W:3",
        "U:1 ^ V:2 ^ W:#3",
        "[U:1, V:3]",
        "{U:0, V:2, W:3}",
        "[{U:1, V:1}, W:2]",
        "U:#2 ** 2",
        "U:#2 ^^ 2",
        "(U:1 + V:2) ** 3",
        "exp(U:3)",
        "wcos(U:#2 + V:#4)",
        "sinh(-U:1) * 2",
        "U:1 * V:2 * V:2 * U:1",
        "-(U:1 - V:1)",
    };
    for (const char* src : corpus) {
        const auto e = parse(src);
        const auto again = parse(render(e));
        EXPECT_TRUE(equal(e, again)) << src << " -> " << render(e);
        EXPECT_EQ(render(again), render(e));
    }
}

TEST(Infer, DocumentedExamples) {
    EXPECT_EQ(inferred("{U:1, V:2}"), QType::main(3));
    EXPECT_EQ(inferred("U:1 * V:2 * V:2 * U:1"), QType::main(0));
    EXPECT_EQ(inferred("exp(U:3)"), QType::of_residues({0, 3}));
    EXPECT_EQ(inferred("{U:0, V:2, W:3}"), QType::main(1));
    EXPECT_EQ(inferred("[U:2, V:2, W:2]"), QType::main(0));
    EXPECT_EQ(inferred("3/2"), QType::main(0));
    EXPECT_EQ(inferred("[U:1, V:3]"), QType::main(0));
    EXPECT_EQ(inferred("U:#2 ^^ 2"), QType::main(0));
    EXPECT_EQ(inferred("U:#2 ** 2"), QType::main(0));
}

TEST(Infer, StructuralRules) {
    EXPECT_EQ(inferred("0"), QType::none());
    EXPECT_EQ(inferred("0 * U:1"), QType::none());
    EXPECT_EQ(inferred("2 * U:1"), QType::main(1));
    EXPECT_EQ(inferred("-U:2"), QType::main(2));
    EXPECT_EQ(inferred("U:1 + V:2"), QType::of_residues({1, 2}));
    EXPECT_EQ(inferred("U:1 V:2"), QType::of_residues({1, 3}));
    EXPECT_EQ(inferred("U:1 V:3"), QType::of_residues({0, 2}));
    EXPECT_EQ(inferred("U:1 ^ V:2"), QType::main(3));
    EXPECT_EQ(inferred("U:3 ** 0"), QType::main(0));
    EXPECT_EQ(inferred("U:3 ** 1"), QType::main(3));
    EXPECT_EQ(inferred("U:3 ** 3"), QType::main(3));
    EXPECT_EQ(inferred("U:1 ^^ 2"), QType::none());
    EXPECT_EQ(inferred("cos(0)"), QType::main(0));
    EXPECT_EQ(inferred("sin(0)"), QType::none());
    EXPECT_THROW(infer(parse("U + V", ParseOptions{false})), domain_error);
}

TEST(Infer, MainTypeSeriesMatchTheFunctionTable) {
    const SeriesFunction fs[] = {SeriesFunction::exp, SeriesFunction::sin, SeriesFunction::cos,
                                 SeriesFunction::sinh, SeriesFunction::cosh};
    for (int t : main_residues) {
        for (auto f : fs) {
            const auto e = make_function(f, false, make_variable("U", Declaration::of_type(QType::main(t))));
            EXPECT_EQ(infer(e), predict_series_qtype(f, t));
            const auto w = make_function(f, true, make_variable("U", Declaration::of_type(QType::main(t))));
            EXPECT_EQ(infer(w), predict_series_qtype(f, t));
        }
    }
}

TEST(Evaluate, ExactAndApproximatePaths) {
    const Signature sig(2, 0);
    const Bindings b{{"U", Multivector::basis(sig, Blade{1})}, {"V", Multivector::basis(sig, Blade{2})}};
    EXPECT_EQ(evaluate(parse("[U, V]", ParseOptions{false}), sig, b).render(), "2 e12");
    EXPECT_EQ(evaluate(parse("[U, U]", ParseOptions{false}), sig, b).render(), "0");
    EXPECT_EQ(evaluate(parse("U ** 2 + 1/2", ParseOptions{false}), sig, b).render(), "3/2 e");
    const auto r = evaluate(parse("exp(U V)", ParseOptions{false}), sig, b);
    EXPECT_FALSE(r.exact());
    EXPECT_NEAR(r.approx().coefficient(Blade{0}), std::cos(1.0), 1e-12);
    EXPECT_NEAR(r.approx().coefficient(Blade{3}), std::sin(1.0), 1e-12);
    EXPECT_EQ(r.qtype(), QType::of_residues({0, 2}));
    EXPECT_THROW(evaluate(parse("W", ParseOptions{false}), sig, b), domain_error);
    const Bindings other{{"U", Multivector::basis(Signature(1, 1), Blade{1})}};
    EXPECT_THROW(evaluate(parse("U", ParseOptions{false}), sig, other), signature_error);
}

TEST(Evaluate, ExteriorSeriesKeepsTheScalarPart) {
    const Signature sig(2, 0);
    const Bindings b{{"U", Multivector(sig, {{Blade{0}, Rational(1)}, {Blade{3}, Rational(1)}})}};
    const auto r = evaluate(parse("wexp(U)", ParseOptions{false}), sig, b);
    EXPECT_NEAR(r.approx().coefficient(Blade{0}), std::exp(1.0), 1e-12);
    EXPECT_NEAR(r.approx().coefficient(Blade{3}), std::exp(1.0), 1e-12);
}

TEST(Check, DocumentedExamples) {
    const auto alias = check(parse("[U:0, U]"), Signature(3, 0));
    EXPECT_TRUE(alias.passed());
    EXPECT_EQ(alias.observed, QType::none());
    EXPECT_EQ(alias.grades, RankSpectrum{});

    const auto anti = check(parse("{U:1, V:1}"), Signature(3, 1));
    EXPECT_TRUE(anti.passed());
    EXPECT_EQ(anti.trials, 100);
    EXPECT_TRUE(anti.observed.subset_of(QType::main(0)));

    const auto sq = check(parse("U:#2 ** 2"), Signature(4, 0));
    EXPECT_TRUE(sq.passed());
    EXPECT_TRUE(sq.grades.subset_of(RankSpectrum{0, 4}));

    const auto wedge = check(parse("U:#2 ^^ 2"), Signature(4, 0), CheckOptions{50, 0, {}});
    EXPECT_TRUE(wedge.passed());
    EXPECT_EQ(wedge.grades, RankSpectrum{4});

    EXPECT_THROW(check(parse("U:#5 ** 2"), Signature(3, 0)), infeasible_error);
    EXPECT_THROW(check(parse("U:3"), Signature(2, 0)), infeasible_error);
}

TEST(Check, IsDeterministicPerSeed) {
    const auto e = parse("U:1 V:2 + W:#3");
    const auto a = check(e, Signature(3, 2), CheckOptions{30, 9, {}});
    const auto b = check(e, Signature(3, 2), CheckOptions{30, 9, {}});
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Check, ReportShapes) {
    const auto r = check(parse("[U:1, V:3]"), Signature(3, 1), CheckOptions{20, 0, {}});
    const auto j = to_json(r);
    for (const char* key : {"expr", "sig", "inferred", "trials", "skipped", "observed", "grades", "failures", "tight",
                            "pass"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["inferred"], "0~");
    EXPECT_EQ(j["pass"], true);
    const auto text = render_text(r);
    EXPECT_NE(text.find("inferred: 0~"), std::string::npos);
    EXPECT_EQ(text.substr(text.size() - 5), "PASS\n");
}

TEST(Check, SoundnessCorpusNeverFails) {
    const char* corpus[] = {
        "[U:1, V:3]",
        "{U:1, V:2}",
        "{U:0, V:2, W:3}",
        "[U:1, V:1, W:2, X:3]",
        "{U:0~2~, V:1}",
        "[U:1~3~, V:2]",
        "[[U:1, V:2], W:3]",
        "{[U:2, V:3], W:1}",
        "U:1 V:2",
        "U:1 V:2 V U",
        "U:0~1~ V:2 U",
        "U:1 ^ V:2 ^ W:3",
        "U:#2 ** 2",
        "U:#3 ** 3",
        "U:1 ** 4",
        "U:1~2~ ** 3",
        "U:#2 ^^ 2",
        "U:2 ^^ 3",
        "U:0~1~ ^^ 3",
        "exp(U:3)",
        "sin(U:1) + cosh(V:2)",
        "exp(U:1~2~)",
        "wexp(U:#2)",
        "wsin(U:0~2~)",
        "wcos(U:1~2~)",
        "2 * [U:1, V:2] - 1/3",
    };
    for (const auto& sig : {Signature(3, 0), Signature(2, 2), Signature(4, 1), Signature(3, 3)}) {
        for (const char* src : corpus) {
            const auto r = check(parse(src), sig, CheckOptions{25, 3, {}});
            EXPECT_TRUE(r.passed()) << src << " in " << sig.name() << "\n" << render_text(r);
        }
    }
}
