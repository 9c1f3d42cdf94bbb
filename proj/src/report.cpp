#include "hardy/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hardy::report {
namespace {

nlohmann::json number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

std::string csv_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string csv_text(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

void open_for_write(std::ofstream& f, std::filesystem::path const& p)
{
    f.open(p);
    if (!f)
        throw InputError("cannot write " + p.string());
}

} // namespace

nlohmann::json to_json(VerificationReport const& rep)
{
    nlohmann::json j;
    j["experiment"] = rep.experiment;
    j["provenance"] = rep.provenance;
    j["pass"] = rep.pass;
    j["applicable"] = rep.applicable;
    j["solver_failure"] = rep.solver_failure;

    nlohmann::json params = nlohmann::json::object();
    for (auto const& [k, v] : rep.parameters)
        params[k] = v;
    j["parameters"] = params;

    nlohmann::json levels = nlohmann::json::array();
    for (auto const& l : rep.levels)
    {
        nlohmann::json q = nlohmann::json::array();
        for (double v : l.random_quotients)
            q.push_back(number(v));
        levels.push_back({{"h", number(l.h)},
                          {"dofs", l.dofs},
                          {"tolerance", number(l.tolerance)},
                          {"solved", l.solved},
                          {"lambda_min", number(l.lambda_min)},
                          {"bracket", {number(l.lower), number(l.upper)}},
                          {"residual", number(l.residual)},
                          {"relative_residual", number(l.relative_residual)},
                          {"iterations", l.iterations},
                          {"variational_ok", l.variational_ok},
                          {"random_quotients", q},
                          {"diagnostic", l.diagnostic}});
    }
    j["levels"] = levels;

    nlohmann::json quantities = nlohmann::json::object();
    for (auto const& [k, v] : rep.quantities)
        quantities[k] = number(v);
    j["quantities"] = quantities;
    j["notes"] = rep.notes;
    return j;
}

nlohmann::json metadata()
{
    auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream ts;
    ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    return {{"timestamp", ts.str()}, {"threads", verify::thread_cap()}, {"version", tool_version}};
}

nlohmann::json document(VerificationReport const& rep)
{
    return {{"report", to_json(rep)}, {"metadata", metadata()}};
}

void write_levels_csv(std::ostream& os, VerificationReport const& rep)
{
    os << "h,dofs,tolerance,solved,lambda_min,lower,upper,residual,relative_residual,iterations,"
          "min_random_quotient\n";
    for (auto const& l : rep.levels)
    {
        double qmin = std::numeric_limits<double>::infinity();
        for (double q : l.random_quotients)
            qmin = std::min(qmin, q);
        os << csv_number(l.h) << ',' << l.dofs << ',' << csv_number(l.tolerance) << ',' << (l.solved ? 1 : 0) << ','
           << csv_number(l.lambda_min) << ',' << csv_number(l.lower) << ',' << csv_number(l.upper) << ','
           << csv_number(l.residual) << ',' << csv_number(l.relative_residual) << ',' << l.iterations << ','
           << csv_number(qmin) << '\n';
    }
}

void write_table_csv(std::ostream& os, VerificationReport const& rep)
{
    if (rep.columns.empty())
        return;
    for (std::size_t c = 0; c < rep.columns.size(); ++c)
        os << (c ? "," : "") << csv_text(rep.columns[c]);
    os << '\n';
    for (auto const& row : rep.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << csv_number(row[c]);
        os << '\n';
    }
}

std::vector<std::filesystem::path> write(VerificationReport const& rep, std::filesystem::path const& path)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::vector<std::filesystem::path> written;

    std::ofstream json;
    open_for_write(json, path);
    json << document(rep).dump(2) << '\n';
    written.push_back(path);

    auto sibling = [&](char const* suffix) {
        auto p = path;
        p.replace_filename(path.stem().string() + suffix);
        return p;
    };
    if (!rep.levels.empty())
    {
        auto const p = sibling(".levels.csv");
        std::ofstream f;
        open_for_write(f, p);
        write_levels_csv(f, rep);
        written.push_back(p);
    }
    if (!rep.columns.empty())
    {
        auto const p = sibling(".table.csv");
        std::ofstream f;
        open_for_write(f, p);
        write_table_csv(f, rep);
        written.push_back(p);
    }
    return written;
}

std::string summary(VerificationReport const& rep)
{
    std::ostringstream os;
    os << rep.experiment << ": ";
    if (!rep.applicable)
        os << "not applicable";
    else if (rep.solver_failure)
        os << "solver failure";
    else
        os << (rep.pass ? "pass" : "FAIL");
    os << '\n';
    os << std::setprecision(6);
    for (auto const& l : rep.levels)
    {
        os << "  h=" << l.h << " dofs=" << l.dofs << " lambda_min=" << l.lambda_min << " tol=" << l.tolerance;
        if (!l.solved)
            os << " [" << l.diagnostic << "]";
        os << '\n';
    }
    for (auto const& [k, v] : rep.quantities)
        os << "  " << k << " = " << v << '\n';
    if (!rep.rows.empty())
    {
        os << " ";
        for (auto const& c : rep.columns)
            os << ' ' << std::setw(13) << c;
        os << '\n';
        for (auto const& row : rep.rows)
        {
            os << " ";
            for (double x : row)
                os << ' ' << std::setw(13) << x;
            os << '\n';
        }
    }
    for (auto const& n : rep.notes)
        os << "  " << n << '\n';
    return os.str();
}

} // namespace hardy::report
