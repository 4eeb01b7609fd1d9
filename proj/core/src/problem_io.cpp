#include <csplab/error.hpp>
#include <csplab/problem_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace csplab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Value value_from_json(const json& j)
{
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    throw ParseError("domain values must be integers or strings");
}

ordered_json value_to_json(const Value& v)
{
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return *i;
    }
    return std::get<std::string>(v);
}

VarId lookup(const Problem& p, const std::vector<std::string>& names, const std::string& name)
{
    (void)p;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return static_cast<VarId>(i);
        }
    }
    throw ParseError("unknown variable '" + name + "' in constraint scope");
}

} // namespace

Problem parse_problem(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    }
    try {
        std::vector<std::string> names = doc.at("variables").get<std::vector<std::string>>();
        std::vector<std::vector<Value>> domains;
        const auto& doms = doc.at("domains");
        for (const auto& name : names) {
            if (!doms.contains(name)) {
                throw ParseError("missing domain for variable '" + name + "'");
            }
            std::vector<Value> dom;
            for (const auto& v : doms.at(name)) {
                dom.push_back(value_from_json(v));
            }
            domains.push_back(std::move(dom));
        }

        // Scope/tuple translation needs the domains but not a built Problem.
        const Problem shape(names, domains, {});
        std::vector<Constraint> constraints;
        for (const auto& jc : doc.value("constraints", json::array())) {
            std::vector<VarId> scope;
            for (const auto& s : jc.at("scope")) {
                scope.push_back(lookup(shape, names, s.get<std::string>()));
            }
            const auto kind = jc.at("kind").get<std::string>();
            if (kind == "extensional") {
                std::vector<ValueIndex> flat;
                for (const auto& jt : jc.at("tuples")) {
                    if (jt.size() != scope.size()) {
                        throw ParseError("tuple length does not match the scope");
                    }
                    for (std::size_t p = 0; p < scope.size(); ++p) {
                        const auto idx = shape.index_of(scope[p], value_from_json(jt[p]));
                        if (!idx) {
                            throw ParseError("tuple value not in the domain of '" +
                                             names[static_cast<std::size_t>(scope[p])] + "'");
                        }
                        flat.push_back(*idx);
                    }
                }
                constraints.push_back(Constraint::extensional_flat(std::move(scope), std::move(flat)));
            } else if (kind == "not_equal") {
                if (scope.size() != 2) {
                    throw ParseError("not_equal constraints are binary");
                }
                constraints.push_back(Constraint::not_equal(scope[0], scope[1]));
            } else if (kind == "letter_equality") {
                if (scope.size() != 2) {
                    throw ParseError("letter_equality constraints are binary");
                }
                const auto& params = jc.at("params");
                constraints.push_back(Constraint::letter_equality(
                    scope[0], scope[1], params.at("posA").get<int>(), params.at("posB").get<int>()));
            } else {
                throw ParseError("unknown constraint kind '" + kind + "'");
            }
        }
        return Problem(std::move(names), std::move(domains), std::move(constraints));
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    } catch (const ScopeError& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    }
}

std::string problem_to_json(const Problem& p, int indent)
{
    ordered_json doc;
    doc["variables"] = p.names();
    ordered_json doms = ordered_json::object();
    for (VarId v = 0; v < p.num_variables(); ++v) {
        ordered_json dom = ordered_json::array();
        for (const auto& value : p.domain(v)) {
            dom.push_back(value_to_json(value));
        }
        doms[p.name(v)] = std::move(dom);
    }
    doc["domains"] = std::move(doms);
    ordered_json cons = ordered_json::array();
    for (const auto& c : p.constraints()) {
        ordered_json jc;
        ordered_json scope = ordered_json::array();
        for (auto v : c.scope()) {
            scope.push_back(p.name(v));
        }
        jc["scope"] = std::move(scope);
        switch (c.kind()) {
        case RelationKind::Extensional: {
            jc["kind"] = "extensional";
            ordered_json tuples = ordered_json::array();
            for (std::size_t i = 0; i < c.size(); ++i) {
                ordered_json jt = ordered_json::array();
                const auto t = c.tuple(i);
                for (std::size_t pos = 0; pos < t.size(); ++pos) {
                    jt.push_back(value_to_json(p.domain(c.scope()[pos])[static_cast<std::size_t>(t[pos])]));
                }
                tuples.push_back(std::move(jt));
            }
            jc["tuples"] = std::move(tuples);
            break;
        }
        case RelationKind::NotEqual:
            jc["kind"] = "not_equal";
            break;
        case RelationKind::LetterEquality:
            jc["kind"] = "letter_equality";
            jc["params"] = ordered_json{{"posA", c.pos_a()}, {"posB", c.pos_b()}};
            break;
        }
        cons.push_back(std::move(jc));
    }
    doc["constraints"] = std::move(cons);
    return doc.dump(indent);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

Problem load_problem(const std::filesystem::path& path)
{
    return parse_problem(read_text_file(path));
}

void save_problem(const Problem& p, const std::filesystem::path& path)
{
    write_text_file(path, problem_to_json(p, 1) + "\n");
}

std::vector<VarId> parse_order(const Problem& p, std::string_view text)
{
    std::vector<VarId> order;
    std::set<VarId> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) {
            continue;
        }
        line = line.substr(start);
        const auto v = p.find(line);
        if (!v) {
            throw ParseError("order file names unknown variable '" + line + "'");
        }
        if (!seen.insert(*v).second) {
            throw ParseError("order file repeats variable '" + line + "'");
        }
        order.push_back(*v);
    }
    if (static_cast<int>(order.size()) != p.num_variables()) {
        throw ParseError("order file must list every variable exactly once");
    }
    return order;
}

std::vector<VarId> load_order(const Problem& p, const std::filesystem::path& path)
{
    return parse_order(p, read_text_file(path));
}

std::string order_to_text(const Problem& p, const std::vector<VarId>& order)
{
    std::string out;
    for (auto v : order) {
        out += p.name(v);
        out += '\n';
    }
    return out;
}

} // namespace csplab
