#include "rpp/io.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rpp/error.hpp"

namespace rpp {

namespace {
Json point_json(Point const& p)
{
    return Json(p.coords());
}

Point point_from_json(Json const& j)
{
    return Point(j.get<std::vector<double>>());
}

double parse_double(std::string const& s)
{
    double v = 0;
    char const* first = s.data();
    char const* last = s.data() + s.size();
    while (first < last && *first == ' ')
        ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r'))
        --last;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw Error(ErrorKind::Parse, "not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}
}  // namespace

Json window_to_json(Window const& w)
{
    Json j;
    switch (w.kind()) {
    case WindowKind::Box:
        j["type"] = "box";
        j["center"] = point_json(w.center());
        j["side"] = w.side();
        break;
    case WindowKind::Ball:
        j["type"] = "ball";
        j["center"] = point_json(w.center());
        j["radius"] = w.radius();
        break;
    case WindowKind::Annulus:
        j["type"] = "annulus";
        j["center"] = point_json(w.center());
        j["inner"] = w.inner_radius();
        j["outer"] = w.radius();
        break;
    }
    return j;
}

Window window_from_json(Json const& j)
{
    try {
        auto const type = j.at("type").get<std::string>();
        Point const c = point_from_json(j.at("center"));
        if (type == "box")
            return Window::box(c, j.at("side").get<double>());
        if (type == "ball")
            return Window::ball(c, j.at("radius").get<double>());
        if (type == "annulus")
            return Window::annulus(c, j.at("inner").get<double>(), j.at("outer").get<double>());
        throw Error(ErrorKind::Parse, "unknown window type '" + type + "'");
    } catch (nlohmann::json::exception const& e) {
        throw Error(ErrorKind::Parse, std::string("bad window JSON: ") + e.what());
    }
}

Window parse_window_spec(std::string const& spec, int d)
{
    if (!spec.empty() && spec.front() == '{') {
        Json j;
        try {
            j = Json::parse(spec);
        } catch (nlohmann::json::exception const& e) {
            throw Error(ErrorKind::Parse, std::string("bad window JSON: ") + e.what());
        }
        Window w = window_from_json(j);
        if (w.dim() != d)
            throw Error(ErrorKind::InvalidArgument, "window dimension does not match d");
        return w;
    }
    auto const parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "box")
        return Window::centered_box(d, parse_double(parts[1]));
    if (parts.size() == 2 && parts[0] == "ball")
        return Window::centered_ball(d, parse_double(parts[1]));
    if (parts.size() == 3 && parts[0] == "annulus")
        return Window::annulus(Point::origin(d), parse_double(parts[1]), parse_double(parts[2]));
    throw Error(ErrorKind::InvalidArgument,
                "window must be box:SIDE, ball:R, annulus:R0:R1 or a JSON object, got '" + spec + "'");
}

void write_configuration_csv(std::ostream& os, Configuration const& c)
{
    for (int k = 0; k < c.dim(); ++k)
        os << (k ? ",x" : "x") << k + 1;
    os << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto x = c[i];
        for (int k = 0; k < c.dim(); ++k)
            os << (k ? "," : "") << format_double(x[k]);
        os << '\n';
    }
}

Configuration read_configuration_csv(std::istream& is, std::optional<Window> window,
                                     std::optional<double> intensity)
{
    std::string line;
    if (!std::getline(is, line))
        throw Error(ErrorKind::Parse, "empty CSV");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    auto const header = split(line, ',');
    int const d = static_cast<int>(header.size());
    for (int k = 0; k < d; ++k)
        if (header[k] != "x" + std::to_string(k + 1))
            throw Error(ErrorKind::Parse, "CSV header must be x1,...,xd");
    std::vector<double> coords;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        auto const cells = split(line, ',');
        if (static_cast<int>(cells.size()) != d)
            throw Error(ErrorKind::Parse, "row " + std::to_string(row) + " has "
                                              + std::to_string(cells.size()) + " fields, expected "
                                              + std::to_string(d));
        for (auto const& s : cells)
            coords.push_back(parse_double(s));
    }
    if (!window) {
        double half = 0;
        for (double v : coords)
            half = std::max(half, std::abs(v));
        window = Window::centered_box(d, half > 0 ? 2 * half : 1.0);
    }
    if (window->dim() != d)
        throw Error(ErrorKind::InvalidArgument, "window dimension does not match the CSV");
    return Configuration(d, std::move(coords), *window, intensity);
}

Json configuration_to_json(Configuration const& c)
{
    Json j;
    j["d"] = c.dim();
    j["window"] = window_to_json(c.window());
    j["intensity"] = c.intensity() ? Json(*c.intensity()) : Json(nullptr);
    Json pts = Json::array();
    for (std::size_t i = 0; i < c.size(); ++i)
        pts.push_back(Json(c[i]));
    j["points"] = std::move(pts);
    return j;
}

Configuration configuration_from_json(Json const& j)
{
    try {
        int const d = j.at("d").get<int>();
        Window w = window_from_json(j.at("window"));
        std::optional<double> rho;
        if (j.contains("intensity") && !j["intensity"].is_null())
            rho = j["intensity"].get<double>();
        std::vector<double> coords;
        for (auto const& p : j.at("points")) {
            auto v = p.get<std::vector<double>>();
            if (static_cast<int>(v.size()) != d)
                throw Error(ErrorKind::Parse, "point with wrong dimension in configuration JSON");
            coords.insert(coords.end(), v.begin(), v.end());
        }
        return Configuration(d, std::move(coords), std::move(w), rho);
    } catch (nlohmann::json::exception const& e) {
        throw Error(ErrorKind::Parse, std::string("bad configuration JSON: ") + e.what());
    }
}

void save_configuration(std::filesystem::path const& path, Configuration const& c)
{
    std::ostringstream os;
    if (path.extension() == ".json")
        os << configuration_to_json(c).dump(1) << '\n';
    else
        write_configuration_csv(os, c);
    write_text_file(path, os.str());
}

Configuration load_configuration(std::filesystem::path const& path, std::optional<Window> window,
                                 std::optional<double> intensity)
{
    std::string const text = read_text_file(path);
    if (path.extension() == ".json") {
        Json j;
        try {
            j = Json::parse(text);
        } catch (nlohmann::json::exception const& e) {
            throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
        }
        Configuration c = configuration_from_json(j);
        if (intensity)
            c = c.with_intensity(intensity);
        if (window)
            c = Configuration(c.dim(), std::vector<double>(c.coords().begin(), c.coords().end()),
                              *window, c.intensity());
        return c;
    }
    std::istringstream is(text);
    return read_configuration_csv(is, window, intensity);
}

void write_force_field_csv(std::ostream& os, ForceField const& f)
{
    for (int k = 0; k < f.dim(); ++k)
        os << (k ? ",f" : "f") << k + 1;
    os << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto v = f[i];
        for (int k = 0; k < f.dim(); ++k)
            os << (k ? "," : "") << format_double(v[k]);
        os << '\n';
    }
}

void write_radial_csv(std::ostream& os, RadialFunctionEstimate const& r)
{
    os << "abscissa,value,count\n";
    for (std::size_t i = 0; i < r.size(); ++i)
        os << format_double(r.abscissae[i]) << ',' << format_double(r.values[i]) << ','
           << r.counts[i] << '\n';
}

Json estimate_report_to_json(EstimateReport const& r)
{
    Json j;
    j["mean"] = r.mean;
    j["sample_std"] = r.sample_std;
    j["standard_error"] = r.standard_error;
    j["mean_points"] = r.values.empty() ? 0.0 : r.mean_points();
    j["reps"] = r.values.size();
    j["values"] = r.values;
    j["n_points_used"] = r.n_points_used;
    return j;
}

void write_estimate_report_csv(std::ostream& os, EstimateReport const& r)
{
    os << "rep,value,n_points\n";
    for (std::size_t i = 0; i < r.values.size(); ++i)
        os << i << ',' << format_double(r.values[i]) << ',' << r.n_points_used[i] << '\n';
}

Json slope_fit_to_json(SlopeFit const& s)
{
    return Json{{"slope", s.slope},
                {"intercept", s.intercept},
                {"slope_stderr", s.slope_stderr},
                {"r_squared", s.r_squared}};
}

Json sweep_to_json(SweepResult const& s)
{
    Json j;
    j["axis_name"] = s.axis_name;
    j["axis_values"] = s.axis_values;
    Json cells = Json::array();
    for (std::size_t i = 0; i < s.per_cell.size(); ++i) {
        Json c = estimate_report_to_json(s.per_cell[i]);
        c["failed"] = i < s.failed.size() ? s.failed[i] : 0;
        cells.push_back(std::move(c));
    }
    j["per_cell"] = std::move(cells);
    Json meta = Json::object();
    for (auto const& [k, v] : s.metadata)
        meta[k] = v;
    j["metadata"] = std::move(meta);
    return j;
}

SweepResult sweep_from_json(Json const& j)
{
    try {
        SweepResult s;
        s.axis_name = j.at("axis_name").get<std::string>();
        s.axis_values = j.at("axis_values").get<std::vector<double>>();
        for (auto const& c : j.at("per_cell")) {
            s.per_cell.push_back(EstimateReport::from(c.at("values").get<std::vector<double>>(),
                                                      c.at("n_points_used").get<std::vector<std::size_t>>()));
            s.failed.push_back(c.value("failed", std::size_t{0}));
        }
        for (auto const& [k, v] : j.at("metadata").items())
            s.metadata[k] = v.get<std::string>();
        if (s.axis_values.size() != s.per_cell.size())
            throw Error(ErrorKind::Parse, "sweep JSON: axis_values and per_cell differ in length");
        return s;
    } catch (nlohmann::json::exception const& e) {
        throw Error(ErrorKind::Parse, std::string("bad sweep JSON: ") + e.what());
    }
}

void write_sweep_csv(std::ostream& os, SweepResult const& s)
{
    os << s.axis_name << ",rep,value,n_points\n";
    for (std::size_t c = 0; c < s.per_cell.size(); ++c) {
        auto const& r = s.per_cell[c];
        for (std::size_t i = 0; i < r.values.size(); ++i)
            os << format_double(s.axis_values[c]) << ',' << i << ',' << format_double(r.values[i])
               << ',' << r.n_points_used[i] << '\n';
    }
}

void write_plot_data_csv(std::ostream& os, SweepResult const& s)
{
    os << s.axis_name << ",mean,std,se,mean_n_points,log_mean_n_points,log_std,failed\n";
    for (std::size_t c = 0; c < s.per_cell.size(); ++c) {
        auto const& r = s.per_cell[c];
        double const np = r.values.empty() ? 0.0 : r.mean_points();
        os << format_double(s.axis_values[c]) << ',' << format_double(r.mean) << ','
           << format_double(r.sample_std) << ',' << format_double(r.standard_error) << ','
           << format_double(np) << ',' << format_double(std::log(np)) << ','
           << format_double(std::log(r.sample_std)) << ','
           << (c < s.failed.size() ? s.failed[c] : 0) << '\n';
    }
}

Json manifest_to_json(RunManifest const& m)
{
    Json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["parameters"] = m.parameters;
    j["seed"] = {{"base", m.seed.base}, {"stream", m.seed.stream}};
    j["artifacts"] = m.artifacts;
    j["version"] = m.version;
    j["timestamp"] = m.timestamp;
    return j;
}

RunManifest manifest_from_json(Json const& j)
{
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.argv = j.at("argv").get<std::vector<std::string>>();
        m.parameters = j.value("parameters", Json::object());
        m.seed.base = j.at("seed").at("base").get<std::uint64_t>();
        m.seed.stream = j.at("seed").value("stream", std::uint64_t{0});
        m.artifacts = j.value("artifacts", std::vector<std::string>{});
        m.version = j.value("version", std::string{});
        m.timestamp = j.value("timestamp", std::string{});
        return m;
    } catch (nlohmann::json::exception const& e) {
        throw Error(ErrorKind::Parse, std::string("bad manifest: ") + e.what());
    }
}

std::string read_text_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Parse, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(std::filesystem::path const& path, std::string const& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Resource, "cannot write " + path.string());
    out << text;
    if (!out)
        throw Error(ErrorKind::Resource, "write failed: " + path.string());
}

}  // namespace rpp
