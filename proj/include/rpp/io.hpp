#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpp/bench.hpp"
#include "rpp/configuration.hpp"
#include "rpp/estimators.hpp"
#include "rpp/force.hpp"
#include "rpp/random.hpp"
#include "rpp/secondorder.hpp"
#include "rpp/stats.hpp"

namespace rpp {

using Json = nlohmann::ordered_json;

Json window_to_json(Window const& w);
Window window_from_json(Json const& j);

/*!
 * Window from a command-line spec: "box:SIDE", "ball:R", "annulus:R0:R1"
 * (all centered at the origin) or a JSON object.
 */
Window parse_window_spec(std::string const& spec, int d);

void write_configuration_csv(std::ostream& os, Configuration const& c);
//! Points from a CSV with header x1..xd. Without a window, the smallest
//! origin-centered box containing the points is used.
Configuration read_configuration_csv(std::istream& is, std::optional<Window> window = std::nullopt,
                                     std::optional<double> intensity = std::nullopt);

Json configuration_to_json(Configuration const& c);
Configuration configuration_from_json(Json const& j);

//! Format chosen by extension: .json or .csv.
void save_configuration(std::filesystem::path const& path, Configuration const& c);
Configuration load_configuration(std::filesystem::path const& path,
                                 std::optional<Window> window = std::nullopt,
                                 std::optional<double> intensity = std::nullopt);

void write_force_field_csv(std::ostream& os, ForceField const& f);
void write_radial_csv(std::ostream& os, RadialFunctionEstimate const& r);

Json estimate_report_to_json(EstimateReport const& r);
//! Columns rep,value,n_points.
void write_estimate_report_csv(std::ostream& os, EstimateReport const& r);

Json slope_fit_to_json(SlopeFit const& s);

Json sweep_to_json(SweepResult const& s);
SweepResult sweep_from_json(Json const& j);
//! Long format: axis,rep,value,n_points (failed replications omitted).
void write_sweep_csv(std::ostream& os, SweepResult const& s);
//! One row per cell: axis,mean,std,se,mean_n_points,log_mean_n_points,log_std,failed.
void write_plot_data_csv(std::ostream& os, SweepResult const& s);

struct RunManifest
{
    std::string command;
    std::vector<std::string> argv;
    Json parameters = Json::object();
    Seed seed{};
    std::vector<std::string> artifacts;
    std::string version;
    std::string timestamp;
};

Json manifest_to_json(RunManifest const& m);
RunManifest manifest_from_json(Json const& j);

std::string read_text_file(std::filesystem::path const& path);
void write_text_file(std::filesystem::path const& path, std::string const& text);

}  // namespace rpp
