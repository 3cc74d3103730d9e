#include "spreadlab/data.hpp"

#include "spreadlab/projgeom.hpp"

#include <json.hpp>

#include <fstream>
#include <mutex>
#include <sstream>

namespace dataset {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kEmbedded[];
extern const std::size_t kEmbeddedCount;
}  // namespace detail

using gfcore::Error;
using gfcore::ErrorKind;
using json = nlohmann::json;

namespace {
std::mutex g_mu;
std::string g_override;
std::optional<std::vector<CitedStatus>> g_cited;  // cleared when the override changes

json parse_json(std::string_view name)
{
    auto text = load(name);
    if (!text) throw Error(ErrorKind::ParseError, "missing data file " + std::string(name));
    try {
        return json::parse(*text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string(name) + ": " + e.what());
    }
}
}  // namespace

std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kEmbeddedCount; ++i) out.emplace_back(detail::kEmbedded[i].first);
    return out;
}

void set_override_dir(std::string dir)
{
    std::lock_guard<std::mutex> lock(g_mu);
    g_override = std::move(dir);
    g_cited.reset();
}

std::optional<std::string> load(std::string_view name)
{
    std::string dir;
    {
        std::lock_guard<std::mutex> lock(g_mu);
        dir = g_override;
    }
    if (!dir.empty()) {
        std::ifstream in(dir + "/" + std::string(name), std::ios::binary);
        if (in) {
            std::ostringstream os;
            os << in.rdbuf();
            return os.str();
        }
    }
    for (std::size_t i = 0; i < detail::kEmbeddedCount; ++i)
        if (detail::kEmbedded[i].first == name) return std::string(detail::kEmbedded[i].second);
    return std::nullopt;
}

std::vector<SporadicBound> sporadic_bounds()
{
    std::vector<SporadicBound> out;
    try {
        const json doc = parse_json("sporadic_bounds.json");
        for (const auto& e : doc.at("entries")) {
            SporadicBound b;
            b.q = e.at("q").get<std::uint64_t>();
            b.v = e.at("v").get<unsigned>();
            b.k = e.at("k").get<unsigned>();
            b.value = gfcore::BigInt(e.at("value").get<std::string>());
            const auto dir = e.at("direction").get<std::string>();
            if (dir != "lower" && dir != "upper") throw Error(ErrorKind::ParseError, "direction must be lower or upper");
            b.lower = dir == "lower";
            b.citation = e.value("citation", "");
            out.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("sporadic_bounds.json: ") + e.what());
    }
    return out;
}

std::vector<CitedStatus> cited_status()
{
    std::vector<CitedStatus> out;
    try {
        const json doc = parse_json("cited_status.json");
        for (const auto& e : doc.at("entries")) {
            const auto kind = e.at("status").get<std::string>();
            if (kind != "exists" && kind != "decided") throw Error(ErrorKind::ParseError, "status must be exists or decided");
            for (const auto& n : e.at("n"))
                out.push_back({e.at("q").get<std::uint64_t>(), e.at("r").get<unsigned>(), n.get<std::uint64_t>(),
                               kind == "exists" ? CitedKind::Exists : CitedKind::Decided, e.value("citation", "")});
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("cited_status.json: ") + e.what());
    }
    return out;
}

std::optional<CitedStatus> cited(std::uint64_t q, unsigned r, std::uint64_t n)
{
    std::vector<CitedStatus> table;
    {
        std::lock_guard<std::mutex> lock(g_mu);
        if (g_cited) table = *g_cited;
    }
    if (table.empty()) {
        table = cited_status();
        std::lock_guard<std::mutex> lock(g_mu);
        g_cited = table;
    }
    for (const auto& c : table)
        if (c.q == q && c.r == r && c.n == n) return c;
    return std::nullopt;
}

gfcore::Matrix matrix(std::string_view name, std::uint64_t q)
{
    auto text = load(name);
    if (!text) throw Error(ErrorKind::ParseError, "missing matrix " + std::string(name));
    return projgeom::parse_matrix(gfcore::field_new(q), *text);
}

}  // namespace dataset
