#include <doctest.h>

#include "support.hpp"
#include "valcone/valuation.hpp"

using namespace valcone;
using namespace valcone::testing;

TEST_CASE("evaluation basics") {
  auto chain = chain_ab();
  auto dx = SimpleValuation::dirac(chain, "a");
  OpenSet up_b(chain, chain->upset_of(chain->index("b")));
  OpenSet whole(chain, chain->full_mask());
  CHECK(dx.eval(whole) == Rat(1));
  CHECK(dx.eval(up_b) == Rat(0));

  SimpleValuation zero(chain);
  CHECK(zero.eval(whole) == Rat(0));

  SimpleValuation nu(chain, {{"a", Rat(1, 2)}, {"b", Rat(1, 3)}});
  CHECK(nu.eval(up_b) == Rat(1, 3));
  CHECK(nu.total() == Rat(5, 6));

  auto anti = antichain(2);
  CHECK_THROWS_AS(nu.eval(OpenSet(anti, 1)), domain_error);
}

TEST_CASE("eval is strict, modular and monotone") {
  Rng rng(3);
  for (int round = 0; round < 50; ++round) {
    auto sp = random_poset(rng, 5);
    auto nu = random_valuation(rng, sp);
    auto upsets = sp->all_upsets();
    CHECK(nu.eval_mask(0) == Rat(0));
    for (Mask u : upsets)
      for (Mask v : upsets) {
        CHECK(nu.eval_mask(u) + nu.eval_mask(v) == nu.eval_mask(u | v) + nu.eval_mask(u & v));
        if ((u & v) == u) CHECK(nu.eval_mask(u) <= nu.eval_mask(v));
      }
  }
}

TEST_CASE("integration matches the Choquet oracle for monotone maps") {
  SUBCASE("dirac integrates to the value") {
    auto chain = chain_ab();
    auto d = SimpleValuation::dirac(chain, "b");
    auto h = [](int) { return XRat(Rat(7, 3)); };
    CHECK(d.integrate(h) == XRat(Rat(7, 3)));
  }
  SUBCASE("worked two-point example") {
    auto chain = chain_ab();
    SimpleValuation nu(chain, {{"a", Rat(1, 2)}, {"b", Rat(1, 2)}});
    int ia = chain->index("a");
    auto h = [&](int p) { return p == ia ? XRat(Rat(1)) : XRat(Rat(3)); };
    XRat expected = choquet_integral_oracle(nu, h);
    CHECK(expected == XRat(Rat(2)));
    CHECK(nu.integrate(h) == expected);
  }
  SUBCASE("infinite values absorb positive mass") {
    auto chain = chain_ab();
    SimpleValuation nu(chain, {{"a", Rat(1, 4)}});
    auto h = [](int) { return XRat::infinity(); };
    CHECK(nu.integrate(h).is_infinite());
    SimpleValuation zero(chain);
    CHECK(zero.integrate(h) == XRat());  // 0 * inf = 0
  }
  SUBCASE("randomized agreement on monotone maps") {
    Rng rng(17);
    for (int round = 0; round < 60; ++round) {
      auto sp = random_poset(rng, 5);
      auto nu = random_valuation(rng, sp);
      // random monotone map: scaled indicators of random upsets
      auto opens = random_opens(rng, *sp, 2);
      auto h = [&](int p) {
        Rat acc(0);
        for (Mask u : opens)
          if (mask_has(u, p)) acc += Rat(1, 2);
        return XRat(acc);
      };
      CHECK(nu.integrate(h) == choquet_integral_oracle(nu, h));
    }
  }
}

TEST_CASE("stochastic ordering with transport witnesses") {
  SUBCASE("chain dirac cases") {
    auto chain = chain_ab();
    auto da = SimpleValuation::dirac(chain, "a");
    auto db = SimpleValuation::dirac(chain, "b");
    auto r1 = stochastic_le(da, db);
    CHECK(r1.related);
    REQUIRE(r1.witness.has_value());
    CHECK(r1.witness->entries.at({chain->index("a"), chain->index("b")}) == Rat(1));
    CHECK_FALSE(stochastic_le(db, da).related);
  }
  SUBCASE("antichain counterexample") {
    auto anti = antichain(2);
    SimpleValuation mu(anti, {{"x0", Rat(1, 2)}, {"x1", Rat(1, 2)}});
    auto nu = SimpleValuation::dirac(anti, "x0");
    CHECK(stochastic_le_oracle(mu, nu) == false);
    CHECK_FALSE(stochastic_le(mu, nu).related);
  }
  SUBCASE("oracle equivalence on all 3-point posets") {
    Rng rng(23);
    for (const auto& sp : all_posets(3)) {
      for (int round = 0; round < 4; ++round) {
        auto mu = random_valuation(rng, sp, 6);
        auto nu = random_valuation(rng, sp, 6);
        auto res = stochastic_le(mu, nu);
        CHECK(res.related == stochastic_le_oracle(mu, nu));
        if (res.related) CHECK(verify_transport(mu, nu, *res.witness));
      }
    }
  }
}

TEST_CASE("image valuations") {
  auto chain = chain_ab();
  SimpleValuation nu(chain, {{"a", Rat(1, 2)}, {"b", Rat(1, 2)}});
  SUBCASE("identity") {
    auto img = image_valuation(nu, chain, {0, 1});
    CHECK(img == nu);
  }
  SUBCASE("collapse to the top") {
    int ib = chain->index("b");
    auto img = image_valuation(nu, chain, {ib, ib});
    CHECK(img == SimpleValuation::dirac(chain, "b"));
  }
  SUBCASE("non-monotone maps are rejected") {
    auto anti = antichain(2);
    CHECK_THROWS_AS(image_valuation(nu, anti, {0, 1}), domain_error);
  }
  SUBCASE("pushforward evaluates through preimages") {
    Rng rng(5);
    for (int round = 0; round < 30; ++round) {
      auto sp = random_poset(rng, 4);
      auto mu = random_valuation(rng, sp);
      // classification map of one open onto the two-point signature poset
      auto opens = random_opens(rng, *sp, 1);
      auto m2 = make_space({"out", "in"}, {{"out", "in"}});
      std::vector<int> f;
      for (std::size_t p = 0; p < sp->size(); ++p)
        f.push_back(mask_has(opens[0], static_cast<int>(p)) ? 1 : 0);
      auto img = image_valuation(mu, m2, f);
      for (Mask a : m2->all_upsets()) {
        Mask pre = 0;
        for (std::size_t p = 0; p < sp->size(); ++p)
          if (mask_has(a, f[p])) pre |= Mask(1) << p;
        CHECK(img.eval_mask(a) == mu.eval_mask(pre));
      }
    }
  }
  SUBCASE("change of variables for the integral") {
    Rng rng(29);
    for (int round = 0; round < 30; ++round) {
      auto sp = random_poset(rng, 4);
      auto mu = random_valuation(rng, sp);
      auto opens = random_opens(rng, *sp, 1);
      auto m2 = make_space({"out", "in"}, {{"out", "in"}});
      std::vector<int> f;
      for (std::size_t p = 0; p < sp->size(); ++p)
        f.push_back(mask_has(opens[0], static_cast<int>(p)) ? 1 : 0);
      auto img = image_valuation(mu, m2, f);
      auto h = [&](int q) { return q == 0 ? XRat(Rat(1, 3)) : XRat(Rat(5, 2)); };
      auto hf = [&](int p) { return h(f[static_cast<std::size_t>(p)]); };
      CHECK(img.integrate(h) == mu.integrate(hf));
    }
  }
}

TEST_CASE("constriction") {
  auto chain = chain_ab();
  SimpleValuation nu(chain, {{"a", Rat(1, 2)}, {"b", Rat(1, 3)}});
  CHECK(constrict(nu, chain->full_mask()) == nu);
  CHECK(constrict(nu, 0).is_zero());
  auto c = constrict(nu, Mask(1) << chain->index("b"));
  CHECK(c == SimpleValuation(chain, {{"b", Rat(1, 3)}}));
  Rng rng(31);
  for (int round = 0; round < 20; ++round) {
    auto sp = random_poset(rng, 4);
    auto mu = random_valuation(rng, sp);
    auto opens = random_opens(rng, *sp, 2);
    Mask crescent = opens[0] & ~opens[1];
    auto cm = constrict(mu, crescent);
    for (Mask u : sp->all_upsets()) CHECK(cm.eval_mask(u) == mu.eval_mask(u & crescent));
  }
}

TEST_CASE("mass recovery from tables") {
  SUBCASE("dirac recovery") {
    auto chain = chain_ab();
    auto db = SimpleValuation::dirac(chain, "b");
    std::map<Mask, Rat> table;
    for (Mask u : chain->all_upsets()) table[u] = db.eval_mask(u);
    CHECK(masses_from_table(chain, table) == db);
  }
  SUBCASE("zero table") {
    auto chain = chain_ab();
    std::map<Mask, Rat> table;
    for (Mask u : chain->all_upsets()) table[u] = Rat(0);
    CHECK(masses_from_table(chain, table).is_zero());
  }
  SUBCASE("diamond roundtrip") {
    auto dia = diamond();
    SimpleValuation nu(dia, {{"a", Rat(1, 2)}, {"top", Rat(1, 2)}});
    std::map<Mask, Rat> table;
    for (Mask u : dia->all_upsets()) table[u] = nu.eval_mask(u);
    CHECK(masses_from_table(dia, table) == nu);
  }
  SUBCASE("bad tables are rejected") {
    auto chain = chain_ab();
    std::map<Mask, Rat> table;
    for (Mask u : chain->all_upsets()) table[u] = Rat(1);  // not strict
    CHECK_THROWS_AS(masses_from_table(chain, table), domain_error);
    table.clear();
    Mask up_b = chain->upset_of(chain->index("b"));
    table[0] = Rat(0);
    table[up_b] = Rat(1);
    table[chain->full_mask()] = Rat(1, 2);  // not monotone
    CHECK_THROWS_AS(masses_from_table(chain, table), domain_error);
  }
  SUBCASE("roundtrip on random valuations") {
    Rng rng(37);
    for (int round = 0; round < 40; ++round) {
      auto sp = random_poset(rng, 5);
      auto nu = random_valuation(rng, sp);
      std::map<Mask, Rat> table;
      for (Mask u : sp->all_upsets()) table[u] = nu.eval_mask(u);
      CHECK(masses_from_table(sp, table) == nu);
    }
  }
}

namespace {

void check_ss_post(const SimpleValuation& mu, const SimpleValuation& nu,
                   const std::vector<Mask>& lattice, const SimpleValuation& nu1,
                   const SimpleValuation& nu2) {
  CHECK(nu1 + nu2 == nu);
  for (Mask u : lattice) CHECK(mu.eval_mask(u) <= nu1.eval_mask(u));
  CHECK(nu1.total() == mu.total());
}

}  // namespace

TEST_CASE("Schroeder-Simpson split") {
  SUBCASE("equal valuations split off everything") {
    auto chain = chain_ab();
    SimpleValuation nu(chain, {{"a", Rat(1, 3)}, {"b", Rat(1, 2)}});
    auto lat = generate_lattice(*chain, {chain->upset_of(chain->index("b"))});
    auto [n1, n2] = schroder_simpson_split(nu, nu, lat);
    check_ss_post(nu, nu, lat, n1, n2);
    CHECK(n1 == nu);
    CHECK(n2.is_zero());
  }
  SUBCASE("worked chain example") {
    auto chain = chain_ab();
    auto mu = SimpleValuation::dirac(chain, "a");
    SimpleValuation nu(chain, {{"b", Rat(2)}});
    auto lat = generate_lattice(*chain, {chain->upset_of(chain->index("b"))});
    auto [n1, n2] = schroder_simpson_split(mu, nu, lat);
    check_ss_post(mu, nu, lat, n1, n2);
    CHECK(n1 == SimpleValuation(chain, {{"b", Rat(1)}}));
    CHECK(n2 == SimpleValuation(chain, {{"b", Rat(1)}}));
  }
  SUBCASE("zero mu gives the trivial split") {
    auto chain = chain_ab();
    SimpleValuation mu(chain);
    SimpleValuation nu(chain, {{"a", Rat(1, 2)}});
    auto lat = generate_lattice(*chain, {});
    auto [n1, n2] = schroder_simpson_split(mu, nu, lat);
    CHECK(n1.is_zero());
    CHECK(n2 == nu);
  }
  SUBCASE("precondition violations are reported") {
    auto chain = chain_ab();
    auto mu = SimpleValuation::dirac(chain, "b");
    auto nu = SimpleValuation::dirac(chain, "a");
    auto lat = generate_lattice(*chain, {chain->upset_of(chain->index("b"))});
    CHECK_THROWS_AS(schroder_simpson_split(mu, nu, lat), domain_error);
    CHECK_THROWS_AS(schroder_simpson_split(nu, nu, {0}), domain_error);  // not closed
  }
  SUBCASE("randomized post verification") {
    Rng rng(41);
    for (int round = 0; round < 60; ++round) {
      auto sp = random_poset(rng, 5);
      auto nu = random_valuation(rng, sp, 6);
      auto mu = random_dominated(rng, nu);
      auto lat = generate_lattice(*sp, random_opens(rng, *sp, 3));
      auto [n1, n2] = schroder_simpson_split(mu, nu, lat);
      check_ss_post(mu, nu, lat, n1, n2);
    }
  }
}

TEST_CASE("second decomposition") {
  SUBCASE("zero pair") {
    auto chain = chain_ab();
    SimpleValuation z(chain);
    SimpleValuation pi(chain, {{"b", Rat(1)}});
    auto lat = generate_lattice(*chain, {});
    auto [m1, n1] = second_split(z, z, pi, lat);
    CHECK(m1.is_zero());
    CHECK(n1.is_zero());
  }
  SUBCASE("worked chain example") {
    auto chain = chain_ab();
    SimpleValuation mu(chain, {{"a", Rat(1, 2)}});
    SimpleValuation nu(chain, {{"a", Rat(1, 2)}});
    SimpleValuation pi(chain, {{"b", Rat(2)}});
    auto lat = generate_lattice(*chain, {chain->upset_of(chain->index("b"))});
    auto [m1, n1] = second_split(mu, nu, pi, lat);
    for (Mask u : chain->all_upsets())
      CHECK(m1.eval_mask(u) + n1.eval_mask(u) <= pi.eval_mask(u));
    for (Mask u : lat) {
      CHECK(mu.eval_mask(u) <= m1.eval_mask(u));
      CHECK(nu.eval_mask(u) <= n1.eval_mask(u));
    }
  }
  SUBCASE("degenerate split with zero nu reduces to the first lemma's post") {
    auto chain = chain_ab();
    SimpleValuation mu(chain, {{"a", Rat(1, 3)}});
    SimpleValuation zero(chain);
    SimpleValuation pi(chain, {{"b", Rat(1)}});
    auto lat = generate_lattice(*chain, {chain->upset_of(chain->index("b"))});
    auto [m1, n1] = second_split(mu, zero, pi, lat);
    CHECK(n1.is_zero());
    for (Mask u : lat) CHECK(mu.eval_mask(u) <= m1.eval_mask(u));
    for (Mask u : chain->all_upsets()) CHECK(m1.eval_mask(u) <= pi.eval_mask(u));
  }
  SUBCASE("randomized post verification on every upset") {
    Rng rng(43);
    for (int round = 0; round < 60; ++round) {
      auto sp = random_poset(rng, 5);
      auto pi = random_valuation(rng, sp, 6);
      auto moved = random_dominated(rng, pi);
      SimpleValuation mu(sp), nu(sp);
      for (const auto& [p, r] : moved.masses()) {
        mu.set_mass(p, r * Rat(1, 2));
        nu.set_mass(p, r * Rat(1, 2));
      }
      auto lat = generate_lattice(*sp, random_opens(rng, *sp, 3));
      auto [m1, n1] = second_split(mu, nu, pi, lat);
      for (Mask u : sp->all_upsets())
        CHECK(m1.eval_mask(u) + n1.eval_mask(u) <= pi.eval_mask(u));
      for (Mask u : lat) {
        CHECK(mu.eval_mask(u) <= m1.eval_mask(u));
        CHECK(nu.eval_mask(u) <= n1.eval_mask(u));
      }
    }
  }
}

TEST_CASE("Edalat's isomorphism") {
  auto dia = diamond();
  auto sub = dia->without_least();
  SUBCASE("dirac at bottom maps to zero") {
    auto db = SimpleValuation::dirac(dia, "bot");
    CHECK(edalat_to_sub(db, sub).is_zero());
  }
  SUBCASE("mass off bottom is kept") {
    SimpleValuation nu(dia, {{"bot", Rat(1, 2)}, {"a", Rat(1, 2)}});
    auto s = edalat_to_sub(nu, sub);
    CHECK(s == SimpleValuation(sub, {{"a", Rat(1, 2)}}));
    CHECK(edalat_to_prob(s, dia) == nu);
  }
  SUBCASE("dirac away from bottom is fixed") {
    auto dx = SimpleValuation::dirac(dia, "a");
    auto s = edalat_to_sub(dx, sub);
    CHECK(s.total() == Rat(1));
    CHECK(edalat_to_prob(s, dia) == dx);
  }
  SUBCASE("preconditions") {
    SimpleValuation half(dia, {{"a", Rat(1, 2)}});
    CHECK_THROWS_AS(edalat_to_sub(half, sub), domain_error);  // not probability
    auto anti = antichain(2);
    auto d0 = SimpleValuation::dirac(anti, "x0");
    CHECK_THROWS_AS(edalat_to_sub(d0, sub), domain_error);  // no least element
  }
  SUBCASE("roundtrip on random probability valuations") {
    Rng rng(47);
    for (int round = 0; round < 40; ++round) {
      auto nu = random_prob_valuation(rng, dia);
      CHECK(edalat_to_prob(edalat_to_sub(nu, sub), dia) == nu);
    }
  }
}
