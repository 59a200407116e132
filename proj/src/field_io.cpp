#include "dgch/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace dgch {

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& os, const FieldXd& field)
{
    const Grid& g = field.grid();
    os << "# grid dim=" << g.dim() << " n=" << g.n(0);
    if (g.dim() == 2) os << "," << g.n(1);
    os << " length=" << format_double(g.length(0));
    if (g.dim() == 2) os << "," << format_double(g.length(1));
    os << " bc=" << to_string(g.bc()) << "\n";
    const Index rows = g.dim() == 2 ? g.n(1) : 1;
    for (Index j = 0; j < rows; ++j) {
        for (Index i = 0; i < g.n(0); ++i) {
            if (i) os << ',';
            os << format_double(field(g.index(i, j)));
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

double parse_number(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

Grid parse_grid_comment(const std::string& line)
{
    int dim = 0;
    std::vector<std::string> n, len;
    Boundary bc = Boundary::Periodic;
    std::istringstream is(line.substr(1));
    std::string tok;
    is >> tok;
    if (tok != "grid") throw ConfigError("CSV field is missing its '# grid' header");
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "dim")
            dim = static_cast<int>(parse_number(value));
        else if (key == "n")
            n = split(value, ',');
        else if (key == "length")
            len = split(value, ',');
        else if (key == "bc")
            bc = boundary_from_string(value);
    }
    if (dim == 1 && n.size() == 1 && len.size() == 1)
        return Grid::line(static_cast<Index>(parse_number(n[0])), parse_number(len[0]), bc);
    if (dim == 2 && n.size() == 2 && len.size() == 2)
        return Grid::plane(static_cast<Index>(parse_number(n[0])), static_cast<Index>(parse_number(n[1])),
                           parse_number(len[0]), parse_number(len[1]), bc);
    throw ConfigError("malformed '# grid' header in CSV field");
}

template <typename T>
void put(std::ostream& os, T value)
{
    static_assert(std::endian::native == std::endian::little, "binary field I/O assumes a little-endian host");
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    os.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& is)
{
    char bytes[sizeof(T)];
    if (!is.read(bytes, sizeof(T))) throw ConfigError("truncated binary field");
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

FieldXd read_csv(std::istream& is)
{
    std::string line;
    Grid grid;
    bool have_grid = false;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_grid && line.rfind("# grid", 0) == 0) {
                grid = parse_grid_comment(line);
                have_grid = true;
            }
            continue;
        }
        if (!have_grid) throw ConfigError("CSV field is missing its '# grid' header");
        const auto cells = split(line, ',');
        if (static_cast<Index>(cells.size()) != grid.n(0)) throw ConfigError("CSV row length does not match grid");
        for (const auto& c : cells) values.push_back(parse_number(c));
    }
    if (!have_grid) throw ConfigError("CSV field is missing its '# grid' header");
    FieldXd::Values v = Eigen::Map<const FieldXd::Values>(values.data(), static_cast<Index>(values.size()));
    return FieldXd(grid, std::move(v));
}

void write_binary(std::ostream& os, const FieldXd& field)
{
    const Grid& g = field.grid();
    put<std::int32_t>(os, g.dim());
    for (int a = 0; a < g.dim(); ++a) put<std::int64_t>(os, g.n(a));
    for (int a = 0; a < g.dim(); ++a) put<double>(os, g.length(a));
    put<std::int32_t>(os, g.bc() == Boundary::Periodic ? 0 : 1);
    for (Index k = 0; k < field.size(); ++k) put<double>(os, field(k));
}

FieldXd read_binary(std::istream& is)
{
    const auto dim = get<std::int32_t>(is);
    if (dim != 1 && dim != 2) throw ConfigError("binary field: unsupported dimension");
    std::int64_t n[2] = {1, 1};
    double len[2] = {1.0, 1.0};
    for (int a = 0; a < dim; ++a) n[a] = get<std::int64_t>(is);
    for (int a = 0; a < dim; ++a) len[a] = get<double>(is);
    const auto tag = get<std::int32_t>(is);
    if (tag != 0 && tag != 1) throw ConfigError("binary field: unknown boundary tag");
    const Boundary bc = tag == 0 ? Boundary::Periodic : Boundary::Neumann;
    const Grid grid = dim == 1 ? Grid::line(n[0], len[0], bc) : Grid::plane(n[0], n[1], len[0], len[1], bc);
    FieldXd::Values v(grid.cells());
    for (Index k = 0; k < v.size(); ++k) v(k) = get<double>(is);
    return FieldXd(grid, std::move(v));
}

void write_binary_file(const std::string& path, const FieldXd& field)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_binary(os, field);
}

FieldXd read_binary_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_binary(is);
}

}  // namespace dgch
