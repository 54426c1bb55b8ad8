#include "dma/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "dma/csv.hpp"

namespace dma {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double number(const std::string &key, const std::string &value)
{
    try {
        return csv::parse_double(value);
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

std::size_t count(const std::string &key, const std::string &value)
{
    try {
        return static_cast<std::size_t>(csv::parse_unsigned(value));
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("config: key '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
}

} // namespace

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = {
        "f_t",   "B",     "K",       "phi_t", "phi_t_deg", "r",          "P_in_tot", "T_temp", "G_dma",
        "N_slot", "d_x",  "d_x_lambda", "Q",  "B_tune",    "Lambda",     "eps_r",    "f_c10",  "F_coupl"};
    return keys;
}

Settings parse_settings(std::istream &in)
{
    Settings settings;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");
        settings[key] = value;
    }
    return settings;
}

Settings read_settings_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    return parse_settings(in);
}

void apply_settings(const Settings &settings, ScenarioConfig &cfg, DmaDesign &design)
{
    const auto &keys = config_keys();
    for (const auto &[key, value] : settings)
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");
    if (settings.contains("phi_t") && settings.contains("phi_t_deg"))
        throw std::invalid_argument("config: give phi_t or phi_t_deg, not both");
    if (settings.contains("d_x") && settings.contains("d_x_lambda"))
        throw std::invalid_argument("config: give d_x or d_x_lambda, not both");

    if (auto it = settings.find("f_t"); it != settings.end()) {
        const double f_t = number(it->first, it->second);
        cfg.f_t = f_t;
        design.f_t = f_t;
        if (!settings.contains("d_x") && !settings.contains("d_x_lambda"))
            design.d_x = kSpeedOfLight / f_t / 4.0;
    }

    for (const auto &[key, value] : settings) {
        if (key == "f_t")
            continue;
        else if (key == "B")
            cfg.B = number(key, value);
        else if (key == "K")
            cfg.K = count(key, value);
        else if (key == "phi_t")
            cfg.phi_t = number(key, value);
        else if (key == "phi_t_deg")
            cfg.phi_t = number(key, value) * kPi / 180.0;
        else if (key == "r")
            cfg.r = number(key, value);
        else if (key == "P_in_tot")
            cfg.P_in_tot = number(key, value);
        else if (key == "T_temp")
            cfg.T_temp = number(key, value);
        else if (key == "G_dma")
            cfg.G_dma = number(key, value);
        else if (key == "N_slot")
            design.N_slot = count(key, value);
        else if (key == "d_x")
            design.d_x = number(key, value);
        else if (key == "d_x_lambda")
            design.d_x = number(key, value) * kSpeedOfLight / design.f_t;
        else if (key == "Q")
            design.Q = number(key, value);
        else if (key == "B_tune")
            design.B_tune = number(key, value);
        else if (key == "Lambda")
            design.Lambda = number(key, value);
        else if (key == "eps_r")
            design.eps_r = number(key, value);
        else if (key == "f_c10")
            design.f_c10 = number(key, value);
        else if (key == "F_coupl")
            design.F_coupl = number(key, value);
    }
}

void write_settings(std::ostream &out, const ScenarioConfig &cfg, const DmaDesign &design)
{
    out << "# scenario\n";
    out << "f_t = " << csv::format(cfg.f_t) << '\n';
    out << "B = " << csv::format(cfg.B) << '\n';
    out << "K = " << cfg.K << '\n';
    out << "phi_t = " << csv::format(cfg.phi_t) << '\n';
    out << "r = " << csv::format(cfg.r) << '\n';
    out << "P_in_tot = " << csv::format(cfg.P_in_tot) << '\n';
    out << "T_temp = " << csv::format(cfg.T_temp) << '\n';
    out << "G_dma = " << csv::format(cfg.G_dma) << '\n';
    out << "# design\n";
    out << "N_slot = " << design.N_slot << '\n';
    out << "d_x = " << csv::format(design.d_x) << '\n';
    out << "Q = " << csv::format(design.Q) << '\n';
    out << "B_tune = " << csv::format(design.B_tune) << '\n';
    out << "Lambda = " << csv::format(design.Lambda) << '\n';
    out << "eps_r = " << csv::format(design.eps_r) << '\n';
    out << "f_c10 = " << csv::format(design.f_c10) << '\n';
    out << "F_coupl = " << csv::format(design.F_coupl) << '\n';
}

} // namespace dma
