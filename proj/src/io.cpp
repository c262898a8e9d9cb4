#include "ppspec/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ppspec {

namespace {

json coord_to_json(const Coord& c)
{
    if (c.is_exact())
        return json::array({c.exact_value().a, c.exact_value().b});
    return c.value();
}

Coord coord_from_json(const json& j, bool exact)
{
    if (exact) {
        if (!j.is_array() || j.size() != 2)
            throw std::invalid_argument("exact coordinate must be an [a, b] pair");
        return Coord(QuadInt{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()});
    }
    return Coord(j.get<double>());
}

json point_to_json(const Point& p)
{
    json out = json::array();
    for (int i = 0; i < p.dim; ++i)
        out.push_back(coord_to_json(p.x[static_cast<std::size_t>(i)]));
    return out;
}

std::string header(std::initializer_list<const char*> cols, char sep)
{
    std::ostringstream os;
    if (sep != ',')
        os << "# ";
    bool first = true;
    for (const char* c : cols) {
        if (!first)
            os << sep;
        os << c;
        first = false;
    }
    os << '\n';
    return os.str();
}

} // namespace

json region_to_json(const Region& r)
{
    json j;
    if (r.kind() == Region::Kind::Ball) {
        j["kind"] = "ball";
        j["center"] = std::vector<double>(r.center().begin(), r.center().begin() + r.dim());
        j["radius"] = r.radius();
    } else {
        const auto lo = r.lo();
        const auto hi = r.hi();
        j["kind"] = "box";
        j["lo"] = std::vector<double>(lo.begin(), lo.begin() + r.dim());
        j["hi"] = std::vector<double>(hi.begin(), hi.begin() + r.dim());
    }
    return j;
}

Region region_from_json(const json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") {
        const auto c = j.at("center").get<std::vector<double>>();
        return Region::ball(c, j.at("radius").get<double>());
    }
    if (kind == "box") {
        const auto lo = j.at("lo").get<std::vector<double>>();
        const auto hi = j.at("hi").get<std::vector<double>>();
        return Region::box(lo, hi);
    }
    throw std::invalid_argument("region kind must be ball or box");
}

json patch_to_json(const MultiSetPatch& patch)
{
    bool exact = true;
    for (const auto& part : patch.cluster.parts())
        for (const auto& p : part)
            exact = exact && p.is_exact();
    json j;
    j["dim"] = patch.dim();
    j["m"] = patch.colors();
    j["coords"] = exact ? "exact" : "float";
    if (exact)
        j["field"] = {{"tau", "golden"}};
    json pts = json::array();
    for (const auto& [p, c] : patch.support()) {
        json row = point_to_json(p);
        row.push_back(c);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["region"] = region_to_json(patch.region);
    return j;
}

MultiSetPatch patch_from_json(const json& j)
{
    try {
        const int dim = j.at("dim").get<int>();
        const int m = j.at("m").get<int>();
        if (dim < 1 || dim > 2 || m < 1)
            throw std::invalid_argument("point set: dim must be 1 or 2 and m >= 1");
        const bool exact = j.value("coords", std::string("float")) == "exact";
        if (exact && j.contains("field") && j["field"].value("tau", std::string("golden")) != "golden")
            throw std::invalid_argument("point set: only the golden field is supported");
        MultiSetPatch patch;
        patch.region = region_from_json(j.at("region"));
        patch.cluster = Cluster(m, dim);
        for (const auto& row : j.at("points")) {
            if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
                throw std::invalid_argument("point set: each point needs dim coordinates and a color");
            const int color = row[static_cast<std::size_t>(dim)].get<int>();
            if (color < 0 || color >= m)
                throw std::invalid_argument("point set: color out of range");
            Point p;
            p.dim = dim;
            for (int i = 0; i < dim; ++i)
                p.x[static_cast<std::size_t>(i)] = coord_from_json(row[static_cast<std::size_t>(i)], exact);
            if (!patch.region.contains(p))
                throw std::invalid_argument("point set: point outside the declared region");
            patch.cluster.insert(color, p);
        }
        return patch;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("point set: ") + e.what());
    }
}

json cluster_to_json(const Cluster& c)
{
    json parts = json::array();
    for (const auto& part : c.parts()) {
        json pts = json::array();
        for (const auto& p : part)
            pts.push_back(p.dim == 1 ? json(p[0]) : json(p.values()));
        parts.push_back(std::move(pts));
    }
    return parts;
}

Cluster cluster_from_json(const json& j, int dim)
{
    try {
        if (!j.is_array() || j.empty())
            throw std::invalid_argument("cluster: expected one list of points per color");
        Cluster c(static_cast<int>(j.size()), dim);
        for (std::size_t color = 0; color < j.size(); ++color)
            for (const auto& q : j[color]) {
                Point p;
                p.dim = dim;
                if (dim == 1) {
                    p.x[0] = coord_from_json(q, q.is_array());
                } else {
                    if (!q.is_array() || static_cast<int>(q.size()) != dim)
                        throw std::invalid_argument("cluster: 2D points are [x, y]");
                    for (int i = 0; i < dim; ++i)
                        p.x[static_cast<std::size_t>(i)] = Coord(q[static_cast<std::size_t>(i)].get<double>());
                }
                c.insert(static_cast<int>(color), p);
            }
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("cluster: ") + e.what());
    }
}

json interval_to_json(const Interval& v)
{
    return {{"lo", v.lo}, {"hi", v.hi}, {"lo_closed", v.lo_closed}, {"hi_closed", v.hi_closed}, {"str", v.str()}};
}

json frequency_summary(const FrequencyEstimate& e)
{
    return {{"cluster", cluster_to_json(e.cluster)},
            {"value", e.value},
            {"uniformity_gap", e.uniformity_gap},
            {"cauchy_gaps", e.cauchy_gaps},
            {"ns", e.ns},
            {"mean_ratio", e.mean_ratio},
            {"offsets", e.offsets.size()}};
}

json partition_to_json(const HullPartition& part)
{
    json cells = json::array();
    for (const auto& c : part.cells)
        cells.push_back({{"cluster", cluster_to_json(c.cluster)},
                         {"patch", cluster_to_json(c.patch)},
                         {"patch_class", c.patch_class},
                         {"interval", interval_to_json(c.window)}});
    return cells;
}

json metric_to_json(const MetricBracket& m)
{
    return {{"lower", m.lower}, {"upper", m.upper}, {"eps_grid", m.eps_grid}};
}

std::string frequency_table(const FrequencyEstimate& e, char sep)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << header({"n", "offset", "count", "ratio"}, sep);
    for (std::size_t k = 0; k < e.ns.size(); ++k)
        for (std::size_t j = 0; j < e.offsets.size(); ++j)
            os << e.ns[k] << sep << e.offsets[j][0] << sep << e.counts[k][j] << sep << e.ratios[k][j] << '\n';
    return os.str();
}

std::string autocorr_table(const AutocorrelationMeasure& g, char sep)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << header({"t", "re_c", "im_c", "method"}, sep);
    for (const auto& e : g.entries)
        os << e.t << sep << e.c.real() << sep << e.c.imag() << sep << g.method_name() << '\n';
    return os.str();
}

std::string diffraction_table(const DiffractionEstimate& d, char sep)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << header({"k", "re_a", "im_a", "intensity", "n", "retained"}, sep);
    for (const auto& p : d.entries)
        os << p.k << sep << p.amplitude.real() << sep << p.amplitude.imag() << sep << p.intensity << sep << p.n
           << sep << (p.retained ? 1 : 0) << '\n';
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

} // namespace ppspec
