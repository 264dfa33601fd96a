// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <cmath>
#include <vector>

using namespace rfexpose;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const PropagationModel& model() {
    static const PropagationModel m =
        PropagationModel::from_file(testutil::data_path("propagation_models.json"));
    return m;
}

struct EnvCase {
    Environment env;
    double h_ap_m;
};

const std::vector<EnvCase>& all_envs() {
    static const std::vector<EnvCase> envs = {
        {{System::FiveG, Profile::RMa, 28.0}, 10.0},
        {{System::FiveG, Profile::UMa, 28.0}, 10.0},
        {{System::FiveG, Profile::UMi, 28.0}, 10.0},
        {{System::Release9, Profile::SMa, 1.9}, 32.0},
        {{System::Release9, Profile::UMa, 1.9}, 32.0},
        {{System::Release9, Profile::UMi, 1.9}, 32.0},
    };
    return envs;
}

PathLossQuery query_at(double d2d, double h_ap, LosState los) {
    PathLossQuery q;
    q.d2d_m = d2d;
    q.d3d_m = std::hypot(d2d, h_ap - 1.5);
    q.h_ap_m = h_ap;
    q.h_ue_m = 1.5;
    q.los = los;
    return q;
}

} // namespace

TEST_CASE("model file loading", "[propagation]") {
    SECTION("shipped file loads and is versioned") {
        CHECK(model().version() == "1.0.0");
        for (const auto& e : all_envs())
            CHECK(model().has_profile(profile_key(e.env)));
    }
    SECTION("wrong schema is rejected") {
        CHECK_THROWS_AS(PropagationModel(nlohmann::json{{"schema", "other"}}), ValidationError);
        CHECK_THROWS_AS(PropagationModel(nlohmann::json::object()), ValidationError);
    }
    SECTION("profiles object is required and non-empty") {
        nlohmann::json j{{"schema", "rfexpose-propagation-models"},
                         {"version", "0"},
                         {"profiles", nlohmann::json::object()}};
        CHECK_THROWS_AS(PropagationModel(j), ValidationError);
    }
    SECTION("unknown environment is rejected") {
        Environment bad{System::FiveG, Profile::SMa, 28.0};
        CHECK_THROWS_AS(model().los_probability(bad, 100.0), ValidationError);
    }
    SECTION("carrier outside the profile's declared range is a model error") {
        Environment off{System::FiveG, Profile::UMi, 28.0};
        off.carrier_ghz = 120.0; // declared 5G range tops out at 100 GHz
        CHECK_THROWS_AS(model().path_loss_db(off, query_at(100.0, 10.0, LosState::Los)),
                        ModelError);
        CHECK_THROWS_AS(model().validate_environment(off), ModelError);
        CHECK_NOTHROW(model().validate_environment({System::FiveG, Profile::UMi, 28.0}));
    }
}

TEST_CASE("LOS probability", "[propagation]") {
    SECTION("co-located endpoints are in LOS for every profile") {
        for (const auto& e : all_envs())
            CHECK(model().los_probability(e.env, 0.0) == 1.0);
    }
    SECTION("spot values evaluated independently from the model coefficients") {
        CHECK_THAT(model().los_probability({System::FiveG, Profile::RMa, 28.0}, 100.0),
                   WithinRel(0.9139311852712282, 1e-12));
        CHECK_THAT(model().los_probability({System::FiveG, Profile::UMa, 28.0}, 100.0),
                   WithinRel(0.3476708368442312, 1e-12));
        CHECK_THAT(model().los_probability({System::FiveG, Profile::UMi, 28.0}, 100.0),
                   WithinRel(0.23098474969813537, 1e-12));
        CHECK_THAT(model().los_probability({System::Release9, Profile::UMi, 1.9}, 150.0),
                   WithinAbs(0.5, 1e-12));
    }
    SECTION("short range is all-LOS where the form has a threshold") {
        CHECK(model().los_probability({System::FiveG, Profile::UMi, 28.0}, 18.0) == 1.0);
        CHECK(model().los_probability({System::FiveG, Profile::UMi, 28.0}, 18.0001) < 1.0);
        CHECK(model().los_probability({System::FiveG, Profile::RMa, 28.0}, 10.0) == 1.0);
    }
    SECTION("macro profiles of the legacy system never see LOS beyond co-location") {
        CHECK(model().los_probability({System::Release9, Profile::SMa, 1.9}, 1.0) == 0.0);
        CHECK(model().los_probability({System::Release9, Profile::UMa, 1.9}, 500.0) == 0.0);
    }
    SECTION("street-canyon profile cuts off linearly") {
        const Environment env{System::Release9, Profile::UMi, 1.9};
        CHECK(model().los_probability(env, 300.0) == 0.0);
        CHECK(model().los_probability(env, 1000.0) == 0.0);
    }
    SECTION("far range tends to NLOS for the new system's profiles") {
        for (const auto& e : all_envs())
            CHECK(model().los_probability(e.env, 10000.0) < 0.05);
    }
    SECTION("monotone non-increasing in distance") {
        for (const auto& e : all_envs()) {
            double prev = 1.0;
            for (double d = 0.0; d <= 5000.0; d += 5.0) {
                const double p = model().los_probability(e.env, d);
                CHECK(p <= prev + 1e-12);
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                prev = p;
            }
        }
    }
    SECTION("negative distance is rejected") {
        CHECK_THROWS_AS(model().los_probability(all_envs()[0].env, -1.0), ValidationError);
    }
}

TEST_CASE("path loss spot values", "[propagation]") {
    // All expected numbers were evaluated by hand from the coefficient sets in
    // data/propagation_models.json before this suite was written.
    const Environment umi{System::FiveG, Profile::UMi, 28.0};
    const Environment uma{System::FiveG, Profile::UMa, 28.0};
    const Environment rma{System::FiveG, Profile::RMa, 28.0};
    const Environment sma9{System::Release9, Profile::SMa, 1.9};
    const Environment uma9{System::Release9, Profile::UMa, 1.9};
    const Environment umi9{System::Release9, Profile::UMi, 1.9};

    SECTION("28 GHz street canyon at 100 m") {
        const auto q = query_at(100.0, 10.0, LosState::Los);
        const auto res = model().path_loss_db(umi, q);
        CHECK_FALSE(res.clamped);
        CHECK_THAT(res.loss_db, WithinRel(103.3759888423402, 1e-12));
        CHECK_THAT(model().path_loss_db(umi, query_at(100.0, 10.0, LosState::Nlos)).loss_db,
                   WithinRel(123.87964873458938, 1e-12));
    }
    SECTION("28 GHz urban macro at 100 m") {
        CHECK_THAT(model().path_loss_db(uma, query_at(100.0, 10.0, LosState::Los)).loss_db,
                   WithinRel(100.97755209069715, 1e-12));
    }
    SECTION("28 GHz rural at 100 m") {
        CHECK_THAT(model().path_loss_db(rma, query_at(100.0, 10.0, LosState::Los)).loss_db,
                   WithinRel(101.81213038937109, 1e-12));
        CHECK_THAT(model().path_loss_db(rma, query_at(100.0, 10.0, LosState::Nlos)).loss_db,
                   WithinRel(122.28707191085675, 1e-12));
    }
    SECTION("legacy macro at 500 m") {
        CHECK_THAT(model().path_loss_db(sma9, query_at(500.0, 32.0, LosState::Nlos)).loss_db,
                   WithinRel(126.08327486989846, 1e-12));
        // urban variant adds a fixed 3 dB environment correction
        CHECK_THAT(model().path_loss_db(uma9, query_at(500.0, 32.0, LosState::Nlos)).loss_db,
                   WithinRel(129.08327486989845, 1e-12));
    }
    SECTION("legacy street canyon at 50 m") {
        CHECK_THAT(model().path_loss_db(umi9, query_at(50.0, 32.0, LosState::Los)).loss_db,
                   WithinRel(76.13430706813469, 1e-12));
        CHECK_THAT(model().path_loss_db(umi9, query_at(50.0, 32.0, LosState::Nlos)).loss_db,
                   WithinRel(101.7027585998807, 1e-12));
    }
}

TEST_CASE("free-space path loss", "[propagation]") {
    SECTION("spot values") {
        CHECK_THAT(PropagationModel::free_space_path_loss_db(28.0, 100.0),
                   WithinRel(101.39072533704109, 1e-12));
        CHECK_THAT(PropagationModel::free_space_path_loss_db(1.9, 1000.0),
                   WithinRel(98.02263672925329, 1e-12));
    }
    SECTION("zero crossing at d = c / (4 pi f)") {
        CHECK_THAT(PropagationModel::free_space_path_loss_db(28.0, 0.0008520473560526825),
                   WithinAbs(0.0, 1e-9));
    }
    SECTION("non-positive distance is rejected") {
        CHECK_THROWS_AS(PropagationModel::free_space_path_loss_db(28.0, 0.0), ValidationError);
        CHECK_THROWS_AS(PropagationModel::free_space_path_loss_db(28.0, -5.0), ValidationError);
    }
    SECTION("profiles with a genuine LOS branch stay within 15 dB of free space at 50 m") {
        struct LosCase {
            Environment env;
            double h_ap;
        };
        const std::vector<LosCase> cases = {
            {{System::FiveG, Profile::RMa, 28.0}, 10.0},
            {{System::FiveG, Profile::UMa, 28.0}, 10.0},
            {{System::FiveG, Profile::UMi, 28.0}, 10.0},
            {{System::Release9, Profile::UMi, 1.9}, 32.0},
        };
        for (const auto& c : cases) {
            const double dh = c.h_ap - 1.5;
            PathLossQuery q;
            q.d3d_m = 50.0;
            q.d2d_m = std::sqrt(50.0 * 50.0 - dh * dh);
            q.h_ap_m = c.h_ap;
            q.h_ue_m = 1.5;
            q.los = LosState::Los;
            const double pl = model().path_loss_db(c.env, q).loss_db;
            const double fspl = PropagationModel::free_space_path_loss_db(c.env.carrier_ghz, 50.0);
            CHECK(std::abs(pl - fspl) < 15.0);
        }
    }
    SECTION("empirical macro curves never undercut free space") {
        for (const auto& e : all_envs()) {
            for (double d2d : {100.0, 500.0, 1000.0, 3000.0}) {
                const auto q = query_at(d2d, e.h_ap_m, LosState::Nlos);
                const double pl = model().path_loss_db(e.env, q).loss_db;
                const double fspl =
                    PropagationModel::free_space_path_loss_db(e.env.carrier_ghz, q.d3d_m);
                CHECK(pl > fspl);
            }
        }
    }
}

TEST_CASE("branch structure", "[propagation]") {
    SECTION("NLOS dominates LOS everywhere in the validity range") {
        for (const auto& e : all_envs()) {
            const double d_min = model().d2d_valid_min_m(e.env);
            for (double d = d_min; d <= 5000.0; d += 9.0) {
                const double los = model().path_loss_db(e.env, query_at(d, e.h_ap_m, LosState::Los)).loss_db;
                const double nlos =
                    model().path_loss_db(e.env, query_at(d, e.h_ap_m, LosState::Nlos)).loss_db;
                CHECK(nlos >= los - 1e-12);
            }
        }
    }
    SECTION("both branches are monotone non-decreasing in distance") {
        for (const auto& e : all_envs()) {
            for (LosState st : {LosState::Los, LosState::Nlos}) {
                double prev = -1e9;
                const double d_min = model().d2d_valid_min_m(e.env);
                for (double d = d_min; d <= 5000.0; d += 7.0) {
                    const double pl = model().path_loss_db(e.env, query_at(d, e.h_ap_m, st)).loss_db;
                    CHECK(pl >= prev - 1e-9);
                    prev = pl;
                }
            }
        }
    }
    SECTION("expected loss lies between the LOS and NLOS branches") {
        for (const auto& e : all_envs()) {
            for (double d : {60.0, 150.0, 400.0, 900.0}) {
                const double los = model().path_loss_db(e.env, query_at(d, e.h_ap_m, LosState::Los)).loss_db;
                const double nlos =
                    model().path_loss_db(e.env, query_at(d, e.h_ap_m, LosState::Nlos)).loss_db;
                const double mix = model().expected_path_loss_db(e.env, query_at(d, e.h_ap_m, LosState::Expected)).loss_db;
                CHECK(mix >= los - 1e-9);
                CHECK(mix <= nlos + 1e-9);
            }
        }
    }
}

TEST_CASE("LOS/NLOS mixing", "[propagation]") {
    SECTION("degenerate probabilities select a single branch") {
        CHECK_THAT(PropagationModel::mix_db(1.0, 100.0, 120.0), WithinAbs(100.0, 1e-12));
        CHECK_THAT(PropagationModel::mix_db(0.0, 100.0, 120.0), WithinAbs(120.0, 1e-12));
    }
    SECTION("even mixture of 100 and 120 dB, evaluated independently") {
        CHECK_THAT(PropagationModel::mix_db(0.5, 100.0, 120.0),
                   WithinRel(102.96708621881338, 1e-12));
    }
    SECTION("linear-domain mixing never exceeds the dB-domain average (Jensen gap)") {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 500; ++i) {
            const double p = testutil::uniform(rng, 0.0, 1.0);
            const double los = testutil::uniform(rng, 60.0, 120.0);
            const double nlos = los + testutil::uniform(rng, 0.0, 40.0);
            const double mixed = PropagationModel::mix_db(p, los, nlos);
            const double db_avg = p * los + (1.0 - p) * nlos;
            CHECK(mixed <= db_avg + 1e-9);
            CHECK(mixed >= los - 1e-9);
            CHECK(mixed <= nlos + 1e-9);
        }
    }
    SECTION("Bernoulli Monte Carlo agrees with the deterministic mixture") {
        struct McCase {
            Environment env;
            double h_ap;
            double d2d;
        };
        const std::vector<McCase> cases = {
            {{System::FiveG, Profile::UMi, 28.0}, 10.0, 60.0},
            {{System::FiveG, Profile::RMa, 28.0}, 10.0, 300.0},
            {{System::Release9, Profile::UMi, 1.9}, 32.0, 100.0},
        };
        for (const auto& c : cases) {
            const auto q_los = query_at(c.d2d, c.h_ap, LosState::Los);
            const auto q_nlos = query_at(c.d2d, c.h_ap, LosState::Nlos);
            const double p = model().los_probability(c.env, c.d2d);
            const double pl_los = model().path_loss_db(c.env, q_los).loss_db;
            const double pl_nlos = model().path_loss_db(c.env, q_nlos).loss_db;
            std::mt19937_64 rng(777);
            double sum_lin = 0.0;
            const int draws = 100000;
            for (int i = 0; i < draws; ++i) {
                const bool los = detail::uniform01(rng) < p;
                sum_lin += db_to_linear(-(los ? pl_los : pl_nlos));
            }
            const double mc_db = -linear_to_db(sum_lin / draws);
            const double expected =
                model().expected_path_loss_db(c.env, query_at(c.d2d, c.h_ap, LosState::Expected)).loss_db;
            CHECK_THAT(mc_db, WithinAbs(expected, 0.5));
        }
    }
}

TEST_CASE("validity clamping", "[propagation]") {
    const Environment umi{System::FiveG, Profile::UMi, 28.0};
    SECTION("queries below the validity floor clamp to the floor value") {
        const double d_min = model().d2d_valid_min_m(umi);
        CHECK(d_min == 10.0);
        const auto near = model().path_loss_db(umi, query_at(1.0, 10.0, LosState::Los));
        CHECK(near.clamped);
        const auto floor = model().path_loss_db(umi, query_at(d_min, 10.0, LosState::Los));
        CHECK_FALSE(floor.clamped);
        CHECK_THAT(near.loss_db, WithinRel(floor.loss_db, 1e-12));
    }
    SECTION("legacy macro profiles clamp below 35 m") {
        const Environment sma{System::Release9, Profile::SMa, 1.9};
        CHECK(model().d2d_valid_min_m(sma) == 35.0);
        CHECK(model().path_loss_db(sma, query_at(5.0, 32.0, LosState::Nlos)).clamped);
    }
    SECTION("inconsistent geometry is rejected") {
        PathLossQuery q;
        q.d2d_m = 120.0;
        q.d3d_m = 100.0; // impossible: ground distance longer than slant range
        q.h_ap_m = 10.0;
        q.h_ue_m = 1.5;
        CHECK_THROWS_AS(model().path_loss_db(umi, q), ValidationError);
        q.d2d_m = -1.0;
        q.d3d_m = 10.0;
        CHECK_THROWS_AS(model().path_loss_db(umi, q), ValidationError);
    }
}
