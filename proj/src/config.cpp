#include "dgch/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dgch/field_io.hpp"

namespace dgch {

namespace {

std::string trim(std::string s)
{
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

double to_number(const std::string& raw)
{
    const std::string s = trim(raw);
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last) throw ConfigError("not a number: '" + s + "'");
    if (!std::isfinite(v)) throw ConfigError("number must be finite: '" + s + "'");
    return v;
}

Index to_count(const std::string& raw)
{
    const double v = to_number(raw);
    if (v != std::floor(v) || v < 0 || v > 1e15) throw ConfigError("not a non-negative integer: '" + trim(raw) + "'");
    return static_cast<Index>(v);
}

class RegionParser {
public:
    explicit RegionParser(std::string text) : s_(std::move(text)) {}

    Region parse()
    {
        Region r = region();
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return r;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ConfigError("bad region '" + s_ + "': " + why);
    }
    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string word()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a shape name");
        std::string w = s_.substr(start, pos_ - start);
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return w;
    }
    std::vector<double> numbers()
    {
        expect('(');
        const std::size_t close = s_.find(')', pos_);
        if (close == std::string::npos) fail("missing ')'");
        std::vector<double> out;
        std::istringstream is(s_.substr(pos_, close - pos_));
        std::string item;
        while (std::getline(is, item, ',')) out.push_back(to_number(item));
        pos_ = close + 1;
        return out;
    }
    Region region()
    {
        const std::string name = word();
        if (name == "union") {
            expect('(');
            std::vector<Region> parts{region()};
            skip();
            while (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                parts.push_back(region());
                skip();
            }
            expect(')');
            return Region::union_of(parts);
        }
        const auto a = numbers();
        auto need = [&](std::size_t k) {
            if (a.size() != k) fail(name + " takes " + std::to_string(k) + " numbers");
        };
        if (name == "interval") {
            need(2);
            return Region::interval(a[0], a[1]);
        }
        if (name == "disk") {
            need(3);
            return Region::disk(a[0], a[1], a[2]);
        }
        if (name == "rectangle") {
            need(4);
            return Region::rectangle(a[0], a[1], a[2], a[3]);
        }
        if (name == "halfspace") {
            need(2);
            if (a[0] != 0.0 && a[0] != 1.0) fail("halfspace axis must be 0 or 1");
            return Region::half_space(static_cast<int>(a[0]), a[1]);
        }
        fail("unknown shape '" + name + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

using Setter = void (*)(RunConfig&, const std::string&);

const std::map<std::string, std::map<std::string, Setter>>& schema()
{
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"model",
         {
             {"u_minus", [](RunConfig& c, const std::string& v) { c.params.u_minus = to_number(v); }},
             {"u_plus", [](RunConfig& c, const std::string& v) { c.params.u_plus = to_number(v); }},
             {"gamma", [](RunConfig& c, const std::string& v) { c.params.gamma = to_number(v); }},
             {"p", [](RunConfig& c, const std::string& v) { c.params.p = to_number(v); }},
             {"alpha", [](RunConfig& c, const std::string& v) { c.params.alpha = to_number(v); }},
             {"epsilon", [](RunConfig& c, const std::string& v) { c.params.epsilon = to_number(v); }},
             {"form", [](RunConfig& c, const std::string& v) { c.form = coefficient_form_from_string(trim(v)); }},
         }},
        {"grid",
         {
             {"dim",
              [](RunConfig& c, const std::string& v) {
                  const Index d = to_count(v);
                  if (d != 1 && d != 2) throw ConfigError("grid dim must be 1 or 2");
                  c.dim = static_cast<int>(d);
              }},
             {"n",
              [](RunConfig& c, const std::string& v) {
                  c.n.clear();
                  for (double x : parse_number_list(v)) {
                      if (x != std::floor(x) || x < 4) throw ConfigError("grid n must be integers >= 4");
                      c.n.push_back(static_cast<Index>(x));
                  }
              }},
             {"length", [](RunConfig& c, const std::string& v) { c.length = parse_number_list(v); }},
             {"bc", [](RunConfig& c, const std::string& v) { c.bc = boundary_from_string(trim(v)); }},
         }},
        {"region", {{"shape", [](RunConfig& c, const std::string& v) { c.region = parse_region(v); }}}},
        {"sweep",
         {
             {"eps_list", [](RunConfig& c, const std::string& v) { c.eps_list = parse_number_list(v); }},
             {"cells_per_width", [](RunConfig& c, const std::string& v) { c.policy.cells_per_width = to_number(v); }},
             {"max_cells_per_axis",
              [](RunConfig& c, const std::string& v) { c.policy.max_cells_per_axis = to_count(v); }},
             {"cutoff_K", [](RunConfig& c, const std::string& v) { c.sweep.cutoff_K = to_number(v); }},
             {"tolerance", [](RunConfig& c, const std::string& v) { c.tolerance = to_number(v); }},
             {"profile",
              [](RunConfig& c, const std::string& v) { c.sweep.profile = profile_kind_from_string(trim(v)); }},
             {"threads", [](RunConfig& c, const std::string& v) { c.sweep.threads = static_cast<int>(to_count(v)); }},
         }},
        {"flow",
         {
             {"dt_init", [](RunConfig& c, const std::string& v) { c.flow.dt_init = to_number(v); }},
             {"t_end", [](RunConfig& c, const std::string& v) { c.flow.t_end = to_number(v); }},
             {"dt_min", [](RunConfig& c, const std::string& v) { c.flow.dt_min = to_number(v); }},
             {"save_every", [](RunConfig& c, const std::string& v) { c.flow.save_every = to_count(v); }},
             {"safety", [](RunConfig& c, const std::string& v) { c.flow.safety = to_number(v); }},
         }},
        {"initial",
         {{"profile",
           [](RunConfig& c, const std::string& v) { c.initial_profile = profile_kind_from_string(trim(v)); }}}},
        {"output", {{"dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); }}}},
    };
    return s;
}

void validate(RunConfig& c)
{
    if (static_cast<int>(c.length.size()) != c.dim) throw ConfigError("grid length needs one value per axis");
    for (double l : c.length)
        if (!(l > 0.0)) throw ConfigError("grid length must be positive");
    if (!c.n.empty() && static_cast<int>(c.n.size()) != c.dim) throw ConfigError("grid n needs one value per axis");
    c.params.validate(c.form);

    const Grid dom = c.domain();
    c.policy.domain = dom;
    if (c.region) validate_region(*c.region, dom);

    if (!c.eps_list.empty()) {
        if (c.eps_list.size() < 3) throw ConfigError("eps_list needs at least 3 entries");
        for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
            if (!(c.eps_list[i] > 0.0)) throw ConfigError("eps_list entries must be positive");
            if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
                throw ConfigError("eps_list must be strictly decreasing");
        }
    }
    c.policy.validate();
    if (!(c.sweep.cutoff_K > 0.0)) throw ConfigError("cutoff_K must be positive");
    if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be positive");

    if (c.has_flow) {
        if (c.form != CoefficientForm::Regularized) throw ConfigError("the flow requires form = regularized");
        if (c.n.empty()) throw ConfigError("the flow requires grid n");
        c.flow.params = c.params;
        c.flow.validate();
    }
}

}  // namespace

Grid RunConfig::domain() const
{
    const Index n0 = n.empty() ? 4 : n[0];
    if (dim == 1) return Grid::line(n0, length.at(0), bc);
    const Index n1 = n.empty() ? 4 : n.at(1);
    return Grid::plane(n0, n1, length.at(0), length.at(1), bc);
}

std::string RunConfig::describe() const
{
    std::ostringstream os;
    auto list = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, double>)
                s += format_double(v[i]);
            else
                s += std::to_string(v[i]);
        }
        return s;
    };
    os << "u_minus=" << format_double(params.u_minus) << " u_plus=" << format_double(params.u_plus)
       << " gamma=" << format_double(params.gamma) << " p=" << format_double(params.p)
       << " alpha=" << format_double(params.alpha) << " epsilon=" << format_double(params.epsilon)
       << " form=" << to_string(form) << " dim=" << dim << " n=" << (n.empty() ? "auto" : list(n))
       << " length=" << list(length) << " bc=" << to_string(bc);
    if (region) os << " region=" << region->describe();
    if (!eps_list.empty()) {
        os << " eps_list=" << list(eps_list) << " cells_per_width=" << format_double(policy.cells_per_width)
           << " max_cells_per_axis=" << policy.max_cells_per_axis << " cutoff_K=" << format_double(sweep.cutoff_K)
           << " tolerance=" << format_double(tolerance) << " sweep_profile=" << to_string(sweep.profile);
    }
    if (has_flow) {
        os << " dt_init=" << format_double(flow.dt_init) << " t_end=" << format_double(flow.t_end)
           << " dt_min=" << format_double(flow.dt_min) << " save_every=" << flow.save_every
           << " safety=" << format_double(flow.safety) << " initial_profile=" << to_string(initial_profile);
    }
    return os.str();
}

Region parse_region(const std::string& text) { return RegionParser(text).parse(); }

std::vector<double> parse_number_list(const std::string& text)
{
    std::string s = text;
    for (auto& c : s)
        if (c == ',') c = ' ';
    std::istringstream is(s);
    std::vector<double> out;
    std::string item;
    while (is >> item) out.push_back(to_number(item));
    return out;
}

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    std::string section;
    std::set<std::string> seen;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        try {
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError("malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                if (!schema().count(section)) throw ConfigError("unknown section [" + section + "]");
                if (section == "flow") c.has_flow = true;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected key = value");
            if (section.empty()) throw ConfigError("key outside of any section");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto& keys = schema().at(section);
            const auto it = keys.find(key);
            if (it == keys.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            if (!seen.insert(section + "." + key).second) throw ConfigError("duplicate key '" + key + "'");
            it->second(c, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

}  // namespace dgch
