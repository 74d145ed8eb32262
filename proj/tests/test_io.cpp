#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "rpp/error.hpp"
#include "rpp/io.hpp"
#include "rpp/sampling.hpp"

using namespace rpp;

TEST_CASE("shortest round-trip doubles")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
    for (double v : {1.0 / 3, 7.9577471545947667e-05, -1e-300, 123456789.125})
        CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("window json round trip")
{
    for (auto const& w : {Window::box(Point{1, 2}, 3.0), Window::ball(Point{0, 0, 0}, 2.5),
                          Window::annulus(Point{0, 1}, 0.5, 1.5)})
        CHECK(window_from_json(window_to_json(w)) == w);
    auto j = window_to_json(Window::centered_box(2, 1.0));
    CHECK(j.dump() == R"({"type":"box","center":[0.0,0.0],"side":1.0})");
    CHECK_THROWS_AS(window_from_json(Json::parse(R"({"type":"hexagon","center":[0]})")), Error);
}

TEST_CASE("window specs")
{
    CHECK(parse_window_spec("box:1", 3) == Window::centered_box(3, 1.0));
    CHECK(parse_window_spec("ball:2.5", 2) == Window::centered_ball(2, 2.5));
    CHECK(parse_window_spec("annulus:1:2", 3) == Window::annulus(Point::origin(3), 1.0, 2.0));
    CHECK(parse_window_spec(R"({"type":"ball","center":[1,1],"radius":2})", 2)
          == Window::ball(Point{1, 1}, 2.0));
    CHECK_THROWS_AS(parse_window_spec("disk:1", 2), Error);
    CHECK_THROWS_AS(parse_window_spec("box:x", 2), Error);
    CHECK_THROWS_AS(parse_window_spec(R"({"type":"ball","center":[1,1],"radius":2})", 3), Error);
}

TEST_CASE("configuration csv")
{
    auto c = sample_poisson(Window::centered_box(3, 1.0), 50, Seed{1, 0});
    std::ostringstream os;
    write_configuration_csv(os, c);
    auto const text = os.str();
    CHECK(text.rfind("x1,x2,x3\n", 0) == 0);
    std::istringstream is(text);
    auto back = read_configuration_csv(is, c.window(), c.intensity());
    CHECK(back == c);

    std::istringstream bad_header("a,b\n1,2\n");
    CHECK_THROWS_AS(read_configuration_csv(bad_header), Error);
    std::istringstream ragged("x1,x2\n1,2\n3\n");
    CHECK_THROWS_AS(read_configuration_csv(ragged), Error);
    std::istringstream nan("x1\nfoo\n");
    CHECK_THROWS_AS(read_configuration_csv(nan), Error);
    std::istringstream inferred("x1,x2\n0.25,-2\n");
    CHECK(read_configuration_csv(inferred).window() == Window::centered_box(2, 4.0));
}

TEST_CASE("configuration json")
{
    auto c = sample_binomial(Window::centered_ball(2, 1.0), 20, Seed{2, 0});
    auto j = configuration_to_json(c);
    CHECK(j["d"] == 2);
    CHECK(j["points"].size() == 20);
    CHECK(configuration_from_json(j) == c);
    auto s = sample_sobol(2, 8, false, Seed{});
    CHECK(configuration_to_json(s)["intensity"].is_null());
    CHECK(configuration_from_json(configuration_to_json(s)) == s);
}

TEST_CASE("configuration files")
{
    auto dir = std::filesystem::temp_directory_path() / "rpp_io_test";
    std::filesystem::remove_all(dir);
    auto c = sample_poisson(Window::centered_ball(3, 1.0), 40, Seed{3, 0});
    save_configuration(dir / "c.json", c);
    save_configuration(dir / "c.csv", c);
    CHECK(load_configuration(dir / "c.json") == c);
    CHECK(load_configuration(dir / "c.csv", c.window(), c.intensity()) == c);
    CHECK_THROWS_AS(load_configuration(dir / "missing.csv"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("tables")
{
    RadialFunctionEstimate r{{0.5, 1.5}, {0.9, 1.1}, {3, 4}};
    std::ostringstream os;
    write_radial_csv(os, r);
    CHECK(os.str() == "abscissa,value,count\n0.5,0.9,3\n1.5,1.1,4\n");

    ForceField f(2, {1.0, -0.5, 0.25, 2.0});
    std::ostringstream fs;
    write_force_field_csv(fs, f);
    CHECK(fs.str() == "f1,f2\n1,-0.5\n0.25,2\n");

    auto rep = EstimateReport::from({1.0, 3.0}, {10, 12});
    std::ostringstream es;
    write_estimate_report_csv(es, rep);
    CHECK(es.str() == "rep,value,n_points\n0,1,10\n1,3,12\n");
    auto ej = estimate_report_to_json(rep);
    CHECK(ej["mean"] == 2.0);
    CHECK(ej["reps"] == 2);
}

TEST_CASE("sweep serialization")
{
    SweepResult s;
    s.axis_name = "epsilon";
    s.axis_values = {0.0, 0.5};
    s.per_cell = {EstimateReport::from({1.0, 2.0}, {5, 6}), EstimateReport::from({3.0, 5.0}, {7, 7})};
    s.failed = {0, 1};
    s.metadata = {{"d", "3"}, {"process", "poisson"}};

    std::ostringstream os;
    write_sweep_csv(os, s);
    CHECK(os.str() == "epsilon,rep,value,n_points\n0,0,1,5\n0,1,2,6\n0.5,0,3,7\n0.5,1,5,7\n");

    auto back = sweep_from_json(sweep_to_json(s));
    CHECK(back.axis_values == s.axis_values);
    CHECK(back.per_cell[1].values == s.per_cell[1].values);
    CHECK(back.failed == s.failed);
    CHECK(back.metadata == s.metadata);
    CHECK(sweep_to_json(back).dump() == sweep_to_json(s).dump());

    std::ostringstream pd;
    write_plot_data_csv(pd, s);
    auto const text = pd.str();
    CHECK(text.rfind("epsilon,mean,std,se,mean_n_points,log_mean_n_points,log_std,failed\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("manifest round trip")
{
    RunManifest m;
    m.command = "sample";
    m.argv = {"sample", "poisson", "--d", "3"};
    m.parameters = {{"d", 3}, {"rho", 500.0}};
    m.seed = Seed{7, 2};
    m.artifacts = {"out.csv"};
    m.version = "1.0.0";
    m.timestamp = "2026-01-01T00:00:00Z";
    auto back = manifest_from_json(manifest_to_json(m));
    CHECK(back.argv == m.argv);
    CHECK(back.seed == m.seed);
    CHECK(back.parameters == m.parameters);
    CHECK(back.artifacts == m.artifacts);
    CHECK_THROWS_AS(manifest_from_json(Json::parse("{}")), Error);
}
