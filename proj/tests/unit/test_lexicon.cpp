#include <gtest/gtest.h>

#include <set>

#include "elex/lexicon.hpp"
#include "support/test_support.hpp"

namespace elex {
namespace {

using test::TempDir;
using test::write_file;

std::size_t idx(std::string_view name) { return *CategorySchema().index_of(name); }

TEST(EmotionSchema, CanonicalOrderIsAlphabetical) {
    const CategorySchema schema;
    ASSERT_EQ(schema.size(), 8u);
    for (std::size_t i = 1; i < schema.size(); ++i) EXPECT_LT(schema.name(i - 1), schema.name(i));
    EXPECT_EQ(schema.name(0), "anger");
    EXPECT_EQ(schema.name(7), "trust");
}

TEST(EmotionSchema, ExtraCategoriesAppend) {
    const auto schema = CategorySchema::with_extra({"positive"});
    EXPECT_EQ(schema.size(), 9u);
    EXPECT_EQ(schema.name(8), "positive");
    EXPECT_THROW(CategorySchema::with_extra({"joy"}), std::invalid_argument);
}

TEST(LoadLexicon, FoldsRowsIntoOneVector) {
    TempDir dir;
    write_file(dir.file("l.tsv"), "abandon\tfear\t1\nabandon\tsadness\t1\nabandon\tjoy\t0\n");
    const Lexicon lex = load_lexicon(dir.file("l.tsv"));
    ASSERT_EQ(lex.size(), 1u);
    const auto* e = lex.find("abandon");
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->emotions.test(idx("fear")));
    EXPECT_TRUE(e->emotions.test(idx("sadness")));
    EXPECT_EQ(e->emotions.count(), 2u);
    EXPECT_EQ(e->source, Provenance::original);
}

TEST(LoadLexicon, SentimentRowsSkippedAndZeroEntriesDropped) {
    TempDir dir;
    write_file(dir.file("l.tsv"), "calm\tpositive\t1\n");
    EXPECT_TRUE(load_lexicon(dir.file("l.tsv")).empty());

    LexiconLoadOptions keep;
    keep.keep_zero_entries = true;
    const Lexicon kept = load_lexicon(dir.file("l.tsv"), keep);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_TRUE(kept.find("calm")->emotions.none());
}

TEST(LoadLexicon, ExtraCategoryHookPullsSentimentIntoVector) {
    TempDir dir;
    write_file(dir.file("l.tsv"), "calm\tpositive\t1\ncalm\tjoy\t0\n");
    LexiconLoadOptions opts;
    opts.extra_categories = {"positive"};
    const Lexicon lex = load_lexicon(dir.file("l.tsv"), opts);
    ASSERT_EQ(lex.size(), 1u);
    EXPECT_EQ(lex.schema().size(), 9u);
    EXPECT_TRUE(lex.find("calm")->emotions.test(8));
}

TEST(LoadLexicon, MalformedLinesReportLineNumber) {
    TempDir dir;
    write_file(dir.file("a.tsv"), "good\tjoy\t1\nbad\tjoy\n");
    try {
        load_lexicon(dir.file("a.tsv"));
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 2u);
    }

    write_file(dir.file("b.tsv"), "good\tjoy\t1\ngood\tfear\tyes\n");
    EXPECT_THROW(load_lexicon(dir.file("b.tsv")), FormatError);

    write_file(dir.file("c.tsv"), "good\tjoy\t1\ngood\tboredom\t1\n");
    try {
        load_lexicon(dir.file("c.tsv"));
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(LoadLexicon, CaseFoldedDuplicatesAreOrMergedWithWarning) {
    TempDir dir;
    write_file(dir.file("l.tsv"), "Happy\tjoy\t1\nhappy\ttrust\t1\n");
    std::vector<std::string> warnings;
    set_warning_handler([&](std::string_view w) { warnings.emplace_back(w); });
    const Lexicon lex = load_lexicon(dir.file("l.tsv"));
    set_warning_handler([](std::string_view) {});
    ASSERT_EQ(lex.size(), 1u);
    EXPECT_EQ(lex.find("happy")->emotions.count(), 2u);
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(LoadLexicon, CrlfAndBlankLinesTolerated) {
    TempDir dir;
    write_file(dir.file("l.tsv"), "joyful\tjoy\t1\r\n\r\nsad\tsadness\t1\r\n");
    EXPECT_EQ(load_lexicon(dir.file("l.tsv")).size(), 2u);
}

TEST(LoadLexicon, NrcScaleFixtureMatchesLineCountingOracle) {
    // 14,182 NRC-style rows over random words; some words only carry zero or sentiment rows.
    test::Rng rng(14182);
    const std::vector<std::string_view> cats = {"anger", "anticipation", "disgust", "fear", "joy",
                                                "negative", "positive", "sadness", "surprise", "trust"};
    std::string content;
    std::vector<std::string> lines;
    for (std::size_t i = 0; lines.size() < 14182; ++i) {
        const std::string word = test::synthetic_word(i);
        const double density = rng.uniform(0.0, 0.25);
        for (auto cat : cats) {
            if (lines.size() == 14182) break;
            lines.push_back(word + "\t" + std::string(cat) + "\t" + (rng.coin(density) ? "1" : "0"));
        }
    }
    for (const auto& l : lines) content += l + "\n";
    TempDir dir;
    write_file(dir.file("nrc.tsv"), content);

    // oracle: distinct words having an emotion (not sentiment) row with flag 1
    std::set<std::string> with_emotion;
    for (const auto& l : lines) {
        const auto t1 = l.find('\t');
        const auto t2 = l.find('\t', t1 + 1);
        const std::string cat = l.substr(t1 + 1, t2 - t1 - 1);
        if (cat != "positive" && cat != "negative" && l.substr(t2 + 1) == "1") with_emotion.insert(l.substr(0, t1));
    }

    const Lexicon lex = load_lexicon(dir.file("nrc.tsv"));
    EXPECT_EQ(lines.size(), 14182u);
    EXPECT_EQ(lex.size(), with_emotion.size());
    for (const auto& w : with_emotion) EXPECT_TRUE(lex.contains(w)) << w;
}

TEST(SaveLexicon, EmptyLexiconGivesEmptyFile) {
    TempDir dir;
    save_lexicon(Lexicon{}, dir.file("e.tsv"), LexiconFormat::tsv);
    EXPECT_EQ(test::slurp(dir.file("e.tsv")), "");
}

TEST(SaveLexicon, TsvEmitsAllEightRowsPerWord) {
    Lexicon lex;
    EmotionVector v;
    v.set(idx("joy"));
    lex.insert({"glad", v, Provenance::original, {}});
    TempDir dir;
    save_lexicon(lex, dir.file("g.tsv"), LexiconFormat::tsv);
    const std::string text = test::slurp(dir.file("g.tsv"));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
    EXPECT_NE(text.find("glad\tjoy\t1\n"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '1'), 1);
}

Lexicon random_lexicon(std::uint64_t seed, std::size_t n) {
    test::Rng rng(seed);
    Lexicon lex;
    for (std::size_t i = 0; i < n; ++i) {
        LexiconEntry e{test::synthetic_word(i), {}, rng.coin() ? Provenance::original : Provenance::expanded, {}};
        do {
            for (std::size_t k = 0; k < kNumEmotions; ++k) e.emotions.set(k, rng.coin(0.3));
        } while (e.emotions.none());
        if (e.source == Provenance::expanded)
            for (std::size_t k = 0; k < kNumEmotions; ++k)
                if (e.emotions.test(k)) e.support[k] = {test::synthetic_word(rng.index(1000), "n"), rng.uniform()};
        lex.insert(std::move(e));
    }
    return lex;
}

TEST(SaveLexicon, JsonlRoundTripPreservesProvenance) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Lexicon lex = random_lexicon(seed, 50);
        TempDir dir;
        save_lexicon(lex, dir.file("r.jsonl"), LexiconFormat::jsonl);
        EXPECT_EQ(load_lexicon(dir.file("r.jsonl")), lex) << "seed " << seed;
    }
}

TEST(SaveLexicon, TsvRoundTripPreservesFlags) {
    const Lexicon lex = random_lexicon(99, 50);
    TempDir dir;
    save_lexicon(lex, dir.file("r.tsv"), LexiconFormat::tsv);
    const Lexicon back = load_lexicon(dir.file("r.tsv"));
    ASSERT_EQ(back.size(), lex.size());
    for (const auto& [w, e] : lex) {
        EXPECT_EQ(back.find(w)->emotions, e.emotions);
        EXPECT_EQ(back.find(w)->source, Provenance::original);
    }
}

TEST(LexiconInvariants, SupportOnlyOnExpandedFlags) {
    Lexicon lex;
    EmotionVector v;
    v.set(0);
    EXPECT_THROW(lex.insert({"x", v, Provenance::original, {{0, {"y", 0.5}}}}), std::invalid_argument);
    EXPECT_THROW(lex.insert({"x", v, Provenance::expanded, {}}), std::invalid_argument);
    EXPECT_THROW(lex.insert({"x", v, Provenance::expanded, {{1, {"y", 0.5}}}}), std::invalid_argument);
    EXPECT_THROW(lex.insert({"Upper", v, Provenance::original, {}}), std::invalid_argument);
    EXPECT_THROW(lex.insert({"two words", v, Provenance::original, {}}), std::invalid_argument);
    lex.insert({"x", v, Provenance::expanded, {{0, {"y", 0.5}}}});
    EXPECT_THROW(lex.insert({"x", v, Provenance::original, {}}), std::invalid_argument);
}

LexiconEntry expanded(const std::string& word, std::size_t emotion) {
    EmotionVector v;
    v.set(emotion);
    return {word, v, Provenance::expanded, {{emotion, {"seed", 0.7}}}};
}

TEST(Merge, IdentityWithEmptyExpansion) {
    const Lexicon base = random_lexicon(3, 20);
    EXPECT_EQ(merge(base, Lexicon{}), base);
}

TEST(Merge, AddsNewWords) {
    Lexicon base;
    EmotionVector joy;
    joy.set(idx("joy"));
    base.insert({"joyful", joy, Provenance::original, {}});
    Lexicon exp;
    exp.insert(expanded("elated", idx("joy")));
    const Lexicon merged = merge(base, exp);
    EXPECT_EQ(merged.size(), 2u);
    EXPECT_EQ(merged.find("elated")->source, Provenance::expanded);
}

TEST(Merge, CollisionIsRejectedWithConflictReport) {
    Lexicon base;
    EmotionVector joy;
    joy.set(idx("joy"));
    base.insert({"joyful", joy, Provenance::original, {}});
    Lexicon exp;
    exp.insert(expanded("joyful", idx("fear")));
    exp.insert(expanded("zest", idx("joy")));
    try {
        merge(base, exp);
        FAIL() << "expected MergeConflict";
    } catch (const MergeConflict& e) {
        EXPECT_EQ(e.words(), std::vector<std::string>{"joyful"});
    }
}

TEST(Merge, NeverChangesBaseFlags) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Lexicon base = random_lexicon(seed, 40);
        Lexicon exp;
        for (std::size_t i = 0; i < 15; ++i) exp.insert(expanded(test::synthetic_word(i, "zz"), i % 8));
        const Lexicon merged = merge(base, exp);
        for (const auto& [w, e] : base) EXPECT_EQ(*merged.find(w), e);
        EXPECT_EQ(merged.size(), base.size() + exp.size());
    }
}

}  // namespace
}  // namespace elex
