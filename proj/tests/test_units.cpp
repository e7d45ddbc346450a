#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "wavepack/constants.hpp"
#include "wavepack/units.hpp"

using namespace wavepack;
using units::Dim;

TEST_CASE("value+suffix tokens parse to canonical units") {
    CHECK(units::parse("10MeV", Dim::energy) == 1e7);
    CHECK(units::parse("10 MeV", Dim::energy) == 1e7);
    CHECK(units::parse(" 10   MeV ", Dim::energy) == 1e7);
    CHECK(units::parse("50 keV", Dim::energy) == 5e4);
    CHECK(units::parse("1 GeV", Dim::energy) == 1e9);
    CHECK(units::parse("2 TeV", Dim::energy) == 2e12);
    CHECK(units::parse("1e-9m", Dim::length) == 1e-9);
    CHECK(units::parse("1 fm", Dim::length) == 1e-15);
    CHECK(units::parse("4 A", Dim::length) == 4e-10);
    CHECK(units::parse("3 km", Dim::length) == 3e3);
    CHECK(units::parse("2 um", Dim::length) == 2e-6);
    CHECK(units::parse("3000K", Dim::temperature) == 3000.0);
    CHECK(units::parse("1 s", Dim::time) == 1.0);
    CHECK(units::parse("8 ns", Dim::time) == 8e-9);
    CHECK(units::parse("2.6033e-8 s", Dim::time) == 2.6033e-8);
    CHECK(units::parse("1e-30 m2", Dim::area) == 1e-30);
    CHECK(units::parse("1e-30 m^2", Dim::area) == 1e-30);
    CHECK(units::parse("1 b", Dim::area) == 1e-28);
    CHECK(units::parse("650 mb", Dim::area) ==
          doctest::Approx(6.5e-29).epsilon(1e-15));
    CHECK(units::parse("4e17 m^-3", Dim::inv_volume) == 4e17);
    CHECK(units::parse("1 cm^-3", Dim::inv_volume) == 1e6);
    CHECK(units::parse("2 GeV/m", Dim::energy_per_length) == 2e9);
    CHECK(units::parse("2 MeV/mm", Dim::energy_per_length) == 2e9);
    CHECK(units::parse("1 m/s", Dim::velocity) == 1.0);
    CHECK(units::parse("0.5 c", Dim::velocity) == 0.5 * constants().c_m_per_s);
}

TEST_CASE("ambiguous or dimensionally wrong tokens are rejected") {
    // Bare numbers need an explicit caller-declared default.
    CHECK_THROWS_AS(units::parse("5", Dim::length), units::UnitError);
    CHECK(units::parse("5", Dim::length, "m") == 5.0);
    CHECK(units::parse("5 km", Dim::length, "m") == 5e3); // suffix wins
    CHECK(units::parse("5", Dim::dimensionless) == 5.0);
    CHECK_THROWS_AS(units::parse("5 kg", Dim::dimensionless), units::UnitError);
    // A length token is not a time, and vice versa.
    CHECK_THROWS_AS(units::parse("1 fm", Dim::time), units::UnitError);
    CHECK_THROWS_AS(units::parse("1 s", Dim::length), units::UnitError);
    CHECK_THROWS_AS(units::parse("1 c", Dim::length), units::UnitError);
    CHECK_THROWS_AS(units::parse("", Dim::energy), units::UnitError);
    CHECK_THROWS_AS(units::parse("fast", Dim::energy), units::UnitError);
    CHECK_THROWS_AS(units::parse("1 parsec", Dim::length), units::UnitError);
    // UnitError is an invalid_argument, so generic handlers catch it too.
    CHECK_THROWS_AS(units::parse("5", Dim::length), std::invalid_argument);
}

TEST_CASE("canonical symbols and scales agree with the parse table") {
    CHECK(std::string(units::canonical_symbol(Dim::energy)) == "eV");
    CHECK(std::string(units::canonical_symbol(Dim::length)) == "m");
    CHECK(std::string(units::canonical_symbol(Dim::area)) == "m2");
    CHECK(std::string(units::canonical_symbol(Dim::inv_volume)) == "m^-3");
    CHECK(std::string(units::canonical_symbol(Dim::dimensionless)).empty());
    CHECK(units::unit_scale("GeV", Dim::energy) == 1e9);
    CHECK(units::unit_scale("mb", Dim::area) == 1e-31);
    CHECK(units::unit_scale("c", Dim::velocity) == constants().c_m_per_s);
    CHECK_THROWS_AS(units::unit_scale("GeV", Dim::length), units::UnitError);
    for (Dim d : {Dim::energy, Dim::length, Dim::time, Dim::area, Dim::inv_volume,
                  Dim::temperature, Dim::energy_per_length, Dim::velocity}) {
        CHECK(units::unit_scale(units::canonical_symbol(d), d) == 1.0);
    }
}

TEST_CASE("scale helpers invert exactly") {
    CHECK(units::fm_to_m(1.0) == 1e-15);
    CHECK(units::m_to_fm(1e-15) == 1.0);
    CHECK(units::fm2_to_m2(1.0) == 1e-30);
    CHECK(units::mev_to_ev(1.0) == 1e6);
    // Times ride as light-travel distance.
    CHECK(units::s_to_fm(1.0) == constants().c_m_per_s * 1e15);
    CHECK(units::fm_to_s(units::s_to_fm(2.5)) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("g6 formatting is stable and round-trips") {
    CHECK(units::fmt_g6(0.5) == "0.5");
    CHECK(units::fmt_g6(1.0) == "1");
    CHECK(units::fmt_g6(6.652458e-29) == "6.65246e-29");
    CHECK(units::fmt_g6(1234567.0) == "1.23457e+06");
    // Printing, parsing, and printing again is a fixed point: CSV output
    // cannot drift between runs.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mant(-5.0, 5.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int i = 0; i < 200; ++i) {
        const double x = mant(rng) * std::pow(10.0, expo(rng));
        const std::string once = units::fmt_g6(x);
        const double back = units::parse(once, Dim::dimensionless);
        CHECK(units::fmt_g6(back) == once);
    }
    CHECK(units::csv_join({"a", "b", "c"}) == "a,b,c");
    CHECK(units::csv_join({"x"}) == "x");
    CHECK(units::csv_join({}).empty());
}

TEST_CASE("constants can be overridden from a file and restored") {
    const auto defaults = constants();
    CHECK(defaults.hbar_c_mev_fm == 197.3269804);
    CHECK(defaults.hbar_c_ev_m == 1.973269804e-7);
    CHECK(defaults.c_m_per_s == 2.99792458e8);
    CHECK(defaults.m_e_mev == 0.51099895);
    CHECK(defaults.coulomb_mev_fm() == defaults.alpha * defaults.hbar_c_mev_fm);

    const std::string path = "wavepack_test_constants.tmp";
    {
        std::ofstream out(path);
        out << "# test table\n"
            << "alpha = 0.008\n"
            << "m_p_mev 1000\n";
    }
    load_constants_file(path);
    CHECK(constants().alpha == 0.008);
    CHECK(constants().m_p_mev == 1000.0);
    CHECK(constants().c_m_per_s == defaults.c_m_per_s); // untouched keys persist
    reset_constants();
    CHECK(constants().alpha == defaults.alpha);
    CHECK(constants().m_p_mev == defaults.m_p_mev);

    // Bad files are rejected without mutating the live table.
    {
        std::ofstream out(path);
        out << "speed_of_dark = 1\n";
    }
    CHECK_THROWS_AS(load_constants_file(path), std::runtime_error);
    CHECK(constants().alpha == defaults.alpha);
    {
        std::ofstream out(path);
        out << "alpha = fast\n";
    }
    CHECK_THROWS_AS(load_constants_file(path), std::runtime_error);
    CHECK_THROWS_AS(load_constants_file("no/such/file.txt"), std::runtime_error);
    std::remove(path.c_str());
}
