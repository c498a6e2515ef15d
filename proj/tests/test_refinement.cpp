#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "guicheck/nfa.hpp"
#include "test_support.hpp"

using namespace guicheck;
namespace gt = guicheck::testing;

namespace {

const EventSequence kCex{"e1", "e2", "e2", "e2", "e3"};

Nfa random_nfa(std::mt19937& rng, std::size_t n_states, const std::vector<EventId>& sigma) {
    std::uniform_int_distribution<int> coin(0, 99);
    std::uniform_int_distribution<std::size_t> state(0, n_states - 1);
    Nfa a;
    a.alphabet = sigma;
    a.num_states = n_states;
    a.initial = 0;
    a.accepting.assign(n_states, 0);
    a.delta.resize(n_states);
    for (std::size_t q = 0; q < n_states; ++q) {
        a.accepting[q] = coin(rng) < 40;
        for (const EventId& sym : sigma)
            for (std::size_t t = 0; t < n_states; ++t)
                if (coin(rng) < 30) a.add_transition(q, sym, t);
    }
    return a;
}

std::vector<EventSequence> all_words(const std::vector<EventId>& sigma, std::size_t k) {
    std::vector<EventSequence> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == k) continue;
        for (const EventId& e : sigma) {
            EventSequence w = out[i];
            w.push_back(e);
            out.push_back(std::move(w));
        }
    }
    return out;
}

bool starts_with(const EventSequence& w, const EventSequence& prefix) {
    return w.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

} // namespace

TEST_CASE("efg_to_nfa construction") {
    Nfa fig2 = efg_to_nfa(gt::fig2_efg());
    CHECK(fig2.num_states == 5);
    CHECK(fig2.transition_count() == 13); // 10 edges + 3 initial

    Eefg empty;
    empty.finalize();
    Nfa e = efg_to_nfa(empty);
    CHECK(e.num_states == 1);
    CHECK(accepts(e, {}));
    CHECK(enumerate_words(e, 3) == std::set<EventSequence>{{}});

    CHECK(efg_to_nfa(gt::fig5_eefg()).num_states == 8);
}

TEST_CASE("prefix_automaton shape and language") {
    const std::vector<EventId> sigma{"e1", "e2", "e3", "e4"};
    Nfa a = prefix_automaton(kCex, sigma);
    CHECK(a.num_states == 7); // chain of 6 plus the dead sink
    CHECK(accepts(a, kCex));
    CHECK(accepts(a, {"e1", "e2", "e2", "e2", "e3", "e4"}));
    CHECK_FALSE(accepts(a, {}));
    CHECK_FALSE(accepts(a, {"e1", "e2", "e2", "e3"}));
    CHECK_FALSE(accepts(a, {"e2", "e1", "e2", "e2", "e2", "e3"}));

    Nfa single = prefix_automaton({"e1"}, {"e1"});
    CHECK(accepts(single, {"e1"}));
    CHECK(accepts(single, {"e1", "e1"}));
    CHECK_FALSE(accepts(single, {}));

    CHECK_THROWS_AS(prefix_automaton({}, sigma), Error);
    CHECK_THROWS_AS(prefix_automaton({"e9"}, sigma), Error);
}

TEST_CASE("factor_automaton language") {
    const std::vector<EventId> sigma{"a", "b"};
    Nfa f = factor_automaton({"a", "b"}, sigma);
    CHECK(accepts(f, {"a", "b"}));
    CHECK(accepts(f, {"b", "a", "b"}));
    CHECK(accepts(f, {"a", "b", "a"}));
    CHECK(accepts(f, {"b", "b", "a", "b", "a"}));
    CHECK_FALSE(accepts(f, {"a", "a"}));
    CHECK_FALSE(accepts(f, {"b", "a"}));
    CHECK_THROWS_AS(factor_automaton({}, sigma), Error);
}

TEST_CASE("complement of a prefix automaton") {
    Nfa c = complement(prefix_automaton({"e1"}, {"e1", "e2"}));
    CHECK(accepts(c, {}));
    CHECK(accepts(c, {"e2"}));
    CHECK(accepts(c, {"e2", "e1"}));
    CHECK_FALSE(accepts(c, {"e1"}));
    CHECK_FALSE(accepts(c, {"e1", "e2"}));
}

TEST_CASE("product removes exactly the prefixed words of the graph language") {
    Eefg fig2 = gt::fig2_efg();
    const std::vector<EventId> sigma(fig2.alphabet.begin(), fig2.alphabet.end());
    Nfa refined = trim(intersect(efg_to_nfa(fig2), complement(prefix_automaton(kCex, sigma))));

    std::set<EventSequence> got = enumerate_words(refined, 6);
    std::set<EventSequence> expected;
    for (const EventSequence& w : enumerate_possible(fig2, 6))
        if (!starts_with(w, kCex)) expected.insert(w);
    CHECK(got == expected);
}

TEST_CASE("bounded: the graph automaton accepts exactly the possible sequences") {
    Eefg fig2 = gt::fig2_efg();
    CHECK(enumerate_words(efg_to_nfa(fig2), 2) == enumerate_possible(fig2, 2));

    std::mt19937 rng(1111);
    const std::vector<EventId> sigma{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 40; ++trial) {
        Eefg g = gt::random_eefg(rng, sigma, 8);
        CHECK(enumerate_words(efg_to_nfa(g), 6) == enumerate_possible(g, 6));
    }
}

TEST_CASE("property: complement and intersection against word-level brute force") {
    std::mt19937 rng(2222);
    const std::vector<EventId> sigma{"a", "b"};
    for (int trial = 0; trial < 30; ++trial) {
        Nfa a = random_nfa(rng, 4, sigma);
        Nfa b = random_nfa(rng, 3, sigma);
        Nfa comp = complement(a);
        Nfa prod = intersect(a, b);
        Nfa trimmed = trim(prod);
        for (const EventSequence& w : all_words(sigma, 4)) {
            CHECK(accepts(comp, w) == !accepts(a, w));
            CHECK(accepts(prod, w) == (accepts(a, w) && accepts(b, w)));
            CHECK(accepts(trimmed, w) == accepts(prod, w));
        }
    }
}

TEST_CASE("nfa_to_efg round trips the worked example graph") {
    Eefg fig2 = gt::fig2_efg();
    Eefg back = nfa_to_efg(efg_to_nfa(fig2));
    CHECK(gt::classical_sig(back) == gt::classical_sig(fig2));
}

TEST_CASE("nfa_to_efg rejects conflicting incoming labels") {
    Nfa bad;
    bad.alphabet = {"a", "b"};
    bad.num_states = 2;
    bad.initial = 0;
    bad.accepting = {1, 1};
    bad.delta.resize(2);
    bad.add_transition(0, "a", 1);
    bad.add_transition(1, "b", 1);
    try {
        nfa_to_efg(bad);
        FAIL("expected an incoming-label conflict");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("incoming-label conflict") != std::string::npos);
        CHECK(msg.find("1") != std::string::npos);
    }
}

TEST_CASE("refine_efg on the worked example") {
    Eefg fig2 = gt::fig2_efg();
    Eefg refined = refine_efg(fig2, kCex, RefineMode::Prefix);
    CHECK_FALSE(is_possible(refined, kCex));
    CHECK(is_possible(refined, {"e1", "e2", "e2", "e3"}));

    // the removed prefix forces an unrolled chain of e2-labeled locations
    std::size_t e2_locations = 0;
    for (const auto& [id, event] : refined.locations)
        if (event == "e2") ++e2_locations;
    CHECK(e2_locations > 1);

    // bounded set identity at k = 7
    std::set<EventSequence> got = enumerate_possible(refined, 7);
    std::set<EventSequence> expected;
    for (const EventSequence& w : enumerate_possible(fig2, 7))
        if (!starts_with(w, kCex)) expected.insert(w);
    CHECK(got == expected);

    CHECK_THROWS_AS(refine_efg(fig2, {"e4"}, RefineMode::Prefix), Error);
    CHECK_THROWS_AS(refine_efg(fig2, {}, RefineMode::Prefix), Error);
}

TEST_CASE("refine_efg in factor mode removes interior occurrences too") {
    Eefg fig2 = gt::fig2_efg();
    const EventSequence cex{"e1", "e2", "e2", "e2", "e3"};
    Eefg refined = refine_efg(fig2, cex, RefineMode::Factor);
    CHECK_FALSE(is_possible(refined, cex));

    std::set<EventSequence> got = enumerate_possible(refined, 7);
    std::set<EventSequence> expected;
    for (const EventSequence& w : enumerate_possible(fig2, 7)) {
        bool has_factor = false;
        for (std::size_t i = 0; i + cex.size() <= w.size(); ++i)
            has_factor = has_factor ||
                         std::equal(cex.begin(), cex.end(), w.begin() + i);
        if (!has_factor) expected.insert(w);
    }
    CHECK(got == expected);
}

TEST_CASE("bounded: prefix refinement equals set difference on random graphs") {
    std::mt19937 rng(3333);
    const std::vector<EventId> sigma{"a", "b", "c", "d", "e"};
    int refined_count = 0;
    for (int trial = 0; trial < 60 || refined_count < 40; ++trial) {
        REQUIRE(trial < 400);
        Eefg g = gt::random_eefg(rng, sigma, 8);
        std::set<EventSequence> words = enumerate_possible(g, 3);
        EventSequence s_inf;
        for (const EventSequence& w : words)
            if (!w.empty() && (s_inf.empty() || w.size() > s_inf.size())) s_inf = w;
        if (s_inf.empty()) continue;
        ++refined_count;

        Eefg refined = refine_efg(g, s_inf, RefineMode::Prefix);

        // the reconstructed graph and the product automaton agree
        Nfa product = trim(intersect(
            efg_to_nfa(g),
            complement(prefix_automaton(
                s_inf, std::vector<EventId>(g.alphabet.begin(), g.alphabet.end())))));
        CHECK(enumerate_possible(refined, 6) == enumerate_words(product, 6));

        std::set<EventSequence> expected;
        for (const EventSequence& w : enumerate_possible(g, 6))
            if (!starts_with(w, s_inf)) expected.insert(w);
        CHECK(enumerate_possible(refined, 6) == expected);
    }
}

TEST_CASE("minimized refinement preserves the language") {
    Eefg fig2 = gt::fig2_efg();
    Eefg plain = refine_efg(fig2, kCex, RefineMode::Prefix, false);
    Eefg minimized = refine_efg(fig2, kCex, RefineMode::Prefix, true);
    CHECK(minimized.locations.size() <= plain.locations.size());
    CHECK(enumerate_possible(minimized, 7) == enumerate_possible(plain, 7));

    std::mt19937 rng(4444);
    const std::vector<EventId> sigma{"a", "b", "c"};
    for (int trial = 0; trial < 20; ++trial) {
        Eefg g = gt::random_eefg(rng, sigma, 6);
        auto words = enumerate_possible(g, 3);
        EventSequence s_inf;
        for (const EventSequence& w : words)
            if (w.size() == 2) s_inf = w;
        if (s_inf.empty()) continue;
        Eefg a = refine_efg(g, s_inf, RefineMode::Prefix, false);
        Eefg b = refine_efg(g, s_inf, RefineMode::Prefix, true);
        CHECK(enumerate_possible(a, 5) == enumerate_possible(b, 5));
    }
}
