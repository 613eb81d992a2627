#include "eqcheck/oracle.hpp"
#include "eqcheck/random.hpp"
#include "eqcheck/verify.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("coin game verdicts") {
    GameSystem g = game("coin.game");
    Profile a = profile(g, {"coin_a.tr"});
    Profile b = profile(g, {"coin_b.tr"});
    CHECK(verify_nash(g, a).kind == VerdictKind::NeYes);
    CHECK(verify_spe(g, a).kind == VerdictKind::SpeYes);
    Verdict v = verify_nash(g, b);
    CHECK(v.kind == VerdictKind::NeNo);
    CHECK(export_witness(v, g, b) == "VERDICT NOT_NE agent=1 payoff=1/4 best=3/4\n");
    CHECK(export_witness(verify_nash(g, a), g, a) == "VERDICT NE\n");
}

TEST_CASE("an equilibrium that is not subgame perfect") {
    GameSystem g = game("detour.game");
    Profile p = profile(g, {"detour.tr"});
    CHECK(verify_nash(g, p).kind == VerdictKind::NeYes);
    Verdict v = verify_spe(g, p);
    REQUIRE(v.kind == VerdictKind::SpeNo);
    CHECK(export_witness(v, g, p) ==
          "VERDICT NOT_SPE agent=1 state=<y,(s0),2> action=win old=0/1 new=1/1 history=v0 y\n");
    CHECK(export_witness(v, g, p, ReportFormat::Structured) ==
          "verdict=NOT_SPE\nagent=1\nstate=<y,(s0),2>\naction=win\nold=0/1\nnew=1/1\nhistory=v0 y\n\n");
}

TEST_CASE("matching pennies") {
    GameSystem g = game("pennies.game");
    Profile mixed = profile(g, {"pennies_half1.tr", "pennies_half2.tr"});
    CHECK(verify_nash(g, mixed).kind == VerdictKind::NeYes);
    CHECK(verify_spe(g, mixed).kind == VerdictKind::SpeYes);
    Profile heads = profile(g, {"pennies_heads1.tr", "pennies_half2.tr"});
    Verdict v = verify_nash(g, heads);
    CHECK(export_witness(v, g, heads) == "VERDICT NOT_NE agent=2 payoff=1/2 best=1/1\n");
}

TEST_CASE("witness selection options") {
    GameSystem g = game("pennies.game");
    Profile heads = profile(g, {"pennies_heads1.tr", "pennies_half2.tr"});
    VerifyOptions only1;
    only1.agent = 0;
    CHECK(verify_nash(g, heads, only1).kind == VerdictKind::NeYes);
    VerifyOptions tiny;
    tiny.cap = 1;
    Verdict refused = verify_nash(g, heads, tiny);
    CHECK(refused.kind == VerdictKind::Refused);
    CHECK(export_witness(refused, g, heads) == "VERDICT REFUSED cap=1\n");
}

TEST_CASE("verdicts agree with the oracles on random instances") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        Instance inst = gen_random_instance(seed);
        CAPTURE(seed);
        const bool ne = verify_nash(inst.game, inst.profile).kind == VerdictKind::NeYes;
        CHECK(ne == oracle_is_nash(inst.game, inst.profile));
        InstanceLimits small;
        small.horizon = 4;
        Instance s = gen_random_instance(seed, small);
        const bool spe = verify_spe(s.game, s.profile).kind == VerdictKind::SpeYes;
        CHECK(spe == oracle_is_spe(s.game, s.profile));
    }
}

TEST_CASE("reports are reproducible") {
    Instance inst = gen_random_instance(7);
    VerifyOptions all;
    all.all_witnesses = true;
    CHECK(export_witness(verify_spe(inst.game, inst.profile, all), inst.game, inst.profile) ==
          export_witness(verify_spe(inst.game, inst.profile, all), inst.game, inst.profile));
}
