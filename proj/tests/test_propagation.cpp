// SPDX-License-Identifier: Apache-2.0
//
// loraplan - LoRaWAN site planning toolkit
// Copyright (C) 2026 The loraplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "loraplan/propagation.hpp"
#include "oracles.hpp"

using namespace loraplan;
using Catch::Approx;

TEST_CASE("free space loss", "[propagation]")
{
    CHECK(free_space_loss(1000, 868e6) == Approx(91.22).margin(0.01));
    CHECK(free_space_loss(1000, 868e6) == Approx(oracle::friis_loss_db(1000, 868e6)).margin(0.01));
    CHECK(free_space_loss(1, 1e6) == Approx(-27.55).margin(1e-9));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(1.0, 20000.0);
    std::uniform_real_distribution<double> f(100e6, 6e9);
    for (int k = 0; k < 200; ++k) {
        const double dd = d(rng), ff = f(rng);
        CHECK(free_space_loss(2 * dd, ff) - free_space_loss(dd, ff) == Approx(6.0206).margin(1e-4));
        CHECK(free_space_loss(dd * 1.01, ff) > free_space_loss(dd, ff));
        CHECK(free_space_loss(dd, ff * 1.01) > free_space_loss(dd, ff));
    }
    CHECK_THROWS_AS(free_space_loss(0, 868e6), DomainError);
    CHECK_THROWS_AS(free_space_loss(10, -1), DomainError);
}

TEST_CASE("ericsson loss", "[propagation]")
{
    // Term by term: 36.2 + 0 - 12 log10(30) + 0 - 3.2 log10(17.625)^2 + g(868)
    const double lf = std::log10(868.0);
    const double hand = 36.2 - 12.0 * std::log10(30.0) - 3.2 * std::pow(std::log10(11.75 * 1.5), 2) +
                        44.49 * lf - 4.78 * lf * lf;
    CHECK(hand == Approx(102.97).margin(0.05));
    CHECK(ericsson_loss(1000, 868e6, 30, 1.5, Environment::urban) == Approx(hand).margin(1e-9));

    for (auto env : {Environment::urban, Environment::suburban, Environment::rural}) {
        CHECK(ericsson_loss(2000, 868e6, 30, 1.5, env) > ericsson_loss(1000, 868e6, 30, 1.5, env));
        CHECK(ericsson_loss(1000, 868e6, 60, 1.5, env) < ericsson_loss(1000, 868e6, 30, 1.5, env));
        CHECK(ericsson_loss(500, 868e6, 60, 1.5, env) < ericsson_loss(500, 868e6, 30, 1.5, env));
    }
    CHECK_THROWS_AS(ericsson_loss(1000, 868e6, 0, 1.5, Environment::urban), DomainError);
    CHECK_THROWS_AS(ericsson_loss(1000, 868e6, 30, 1.5, Environment::open), DomainError);
}

TEST_CASE("multi-wall and floor loss", "[propagation]")
{
    const SiteConfig cfg;
    const auto zero = mwf_loss({}, cfg);
    CHECK(zero.wall_db == 0);
    CHECK(zero.floor_db == 0);
    CHECK(zero.vegetation_db == 0);

    const std::vector<Crossing> walls{{crossing::Wall{Material::concrete}, 10}, {crossing::Wall{Material::concrete}, 20}};
    CHECK(mwf_loss(walls, cfg).wall_db == 24.0);

    const std::vector<Crossing> mixed{{crossing::Wall{Material::brick}, 1},
                                      {crossing::Floor{}, 2},
                                      {crossing::Floor{}, 3},
                                      {crossing::Wall{Material::glass}, 4},
                                      {crossing::Vegetation{12.0}, 5}};
    const auto m = mwf_loss(mixed, cfg);
    CHECK(m.wall_db == 10.0);
    CHECK(m.floor_db == 30.0);
    CHECK(m.vegetation_db == 6.0);

    const std::vector<Crossing> forest{{crossing::Vegetation{100.0}, 0}};
    CHECK(mwf_loss(forest, cfg).vegetation_db == 30.0);

    SiteConfig partial;
    partial.material_loss_table = {{Material::brick, 8.0}};
    CHECK_THROWS_AS(mwf_loss(walls, partial), ConfigError);
}

TEST_CASE("fresnel radius", "[propagation]")
{
    CHECK(fresnel_radius(500, 500, 868e6) == Approx(9.30).margin(0.01));
    CHECK(fresnel_radius(0, 1000, 868e6) == 0.0);
    CHECK(fresnel_radius(1000, 0, 868e6) == 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 10000.0);
    for (int k = 0; k < 100; ++k) {
        const double a = d(rng), b = d(rng);
        CHECK(std::abs(fresnel_radius(a, b, 868e6) - fresnel_radius(b, a, 868e6)) < 1e-12);
    }
    CHECK_THROWS_AS(fresnel_radius(-1, 10, 868e6), DomainError);
    CHECK_THROWS_AS(fresnel_radius(0, 0, 868e6), DomainError);
}

TEST_CASE("knife edge loss", "[propagation]")
{
    CHECK(knife_edge_loss(0.0) == Approx(6.02).margin(0.05));
    CHECK(knife_edge_loss(-2.0) == 0.0);
    // 6.9 + 20 log10(sqrt(2.3^2 + 1) + 2.3)
    CHECK(knife_edge_loss(2.4) == Approx(20.54).margin(0.01));
    CHECK(knife_edge_loss(std::nextafter(-0.78, 1.0)) < 0.05);
    double prev = 0.0;
    for (double v = -3.0; v <= 5.0; v += 0.01) {
        const double j = knife_edge_loss(v);
        CHECK(j >= prev);
        prev = j;
    }
}

TEST_CASE("shadowing samples", "[propagation]")
{
    for (std::int64_t i = -5; i < 5; ++i)
        CHECK(shadowing_sample({i, 2 * i}, 99, 0.0) == 0.0);
    CHECK(shadowing_sample({3, 4}, 42, 4.0) == shadowing_sample({3, 4}, 42, 4.0));
    CHECK(shadowing_sample({3, 4}, 42, 4.0) != shadowing_sample({4, 3}, 42, 4.0));
    CHECK(shadowing_sample({3, 4}, 42, 4.0) != shadowing_sample({3, 4}, 43, 4.0));
    // Scaling: the draw is sigma times a fixed standard normal.
    CHECK(shadowing_sample({7, 1}, 5, 8.0) == Approx(2.0 * shadowing_sample({7, 1}, 5, 4.0)));
}

TEST_CASE("total path loss on an open site", "[propagation]")
{
    auto site = fixture::open_site();
    const Point3 a{0, 0, 1.5};
    const Point3 b{1000, 0, 1.5};
    const auto br = total_path_loss(a, b, site, 0.0, {0, 0});
    CHECK(br.total_db == free_space_loss(1000, 868e6));
    CHECK(br.wall_db == 0);
    CHECK(br.floor_db == 0);
    CHECK(br.vegetation_db == 0);
    CHECK(br.diffraction_db == 0);
    CHECK(br.shadowing_db == 0);

    // Two concrete walls add exactly 24 dB.
    site.obstructions.push_back(fixture::building("block", fixture::rect(400, -20, 100, 40), 10.0));
    const auto walled = total_path_loss(a, b, site, 0.0, {0, 0});
    CHECK(walled.wall_db == 24.0);
    CHECK(walled.total_db - br.total_db == Approx(24.0).margin(1e-9));

    site.config.environment = Environment::urban;
    site.obstructions.clear();
    const auto urban = total_path_loss(a, b, site, 0.0, {0, 0});
    CHECK(urban.base_db == ericsson_loss(1000, 868e6, 1.5, 1.5, Environment::urban));

    CHECK_THROWS_AS(total_path_loss(a, a, site, 0.0, {0, 0}), DomainError);
    CHECK_THROWS_AS(total_path_loss(a, b, site, -1.0, {0, 0}), DomainError);
}

TEST_CASE("total path loss clamps and keeps the breakdown exact", "[propagation]")
{
    auto site = fixture::open_site();
    site.config.shadowing_sigma_db = 40.0;
    // Very short links with strong negative shadowing draws must not go below 0 dB.
    for (std::int64_t i = 0; i < 200; ++i) {
        const auto br = total_path_loss({0, 0, 1.5}, {0.05, 0, 1.5}, site, 0.0, {i, 0});
        CHECK(br.total_db >= 0.0);
        CHECK(br.base_db >= 0.0);
        CHECK(std::abs(br.total_db - br.component_sum()) <= 1e-9);
    }
    // Below ~3 cm the free-space intercept is negative; the base component floors at 0.
    site.config.shadowing_sigma_db = 0.0;
    CHECK(total_path_loss({0, 0, 1.5}, {0.01, 0, 1.5}, site, 0.0, {0, 0}).base_db == 0.0);
}

TEST_CASE("path loss properties on random sites", "[propagation][property]")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> xy(0.0, 1000.0);
    std::uniform_real_distribution<double> h(1.0, 40.0);
    std::uniform_real_distribution<double> height(3.0, 30.0);

    for (int trial = 0; trial < 30; ++trial) {
        auto site = fixture::open_site();
        site.config.environment = trial % 2 ? Environment::suburban : Environment::open;
        site.config.shadowing_sigma_db = trial % 3 == 0 ? 6.0 : 0.0;
        site.config.rng_seed = static_cast<std::uint64_t>(trial);

        for (int k = 0; k < 8; ++k) {
            const Point3 a{xy(rng), xy(rng), h(rng)};
            const Point3 b{xy(rng), xy(rng), h(rng)};
            const CellIndex cell{k, trial};
            const auto before = total_path_loss(a, b, site, 0.0, cell);

            // Zero-obstruction site: only base and shadowing contribute.
            CHECK(before.wall_db == 0);
            CHECK(before.diffraction_db == 0);

            auto obstructed = site;
            for (int o = 0; o < 6; ++o) {
                auto poly = fixture::random_convex(rng, xy(rng), xy(rng), 20 + xy(rng) / 10);
                if (o % 3 == 2)
                    obstructed.obstructions.push_back(fixture::vegetation("v" + std::to_string(o), poly, height(rng)));
                else
                    obstructed.obstructions.push_back(
                        fixture::building("b" + std::to_string(o), poly, height(rng), Material::brick, o));
            }
            const auto fwd = total_path_loss(a, b, obstructed, 0.0, cell);
            const auto rev = total_path_loss(b, a, obstructed, 0.0, cell);
            CHECK(std::abs(fwd.total_db - rev.total_db) < 1e-9);
            CHECK(std::abs(fwd.total_db - fwd.component_sum()) <= 1e-9);
            CHECK(fwd.total_db >= before.total_db);
            CHECK(fwd.wall_db >= 0);
            CHECK(fwd.floor_db >= 0);
            CHECK(fwd.vegetation_db >= 0);
            CHECK(fwd.diffraction_db >= 0);
        }
    }
}

TEST_CASE("distance monotonicity in open space", "[propagation][property]")
{
    const auto site = fixture::open_site();
    double prev = -1.0;
    for (double d = 1.0; d < 20000.0; d *= 1.37) {
        const double t = total_path_loss({0, 0, 2}, {d, 0, 2}, site, 0.0, {0, 0}).total_db;
        CHECK(t > prev);
        prev = t;
    }
}
