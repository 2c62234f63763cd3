#include "pwamin/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwamin/errors.hpp"

namespace pwamin {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ParseError(origin, 0, 0, what);
}

Rational parse_scalar(const json& v, const std::string& origin, const std::string& where) {
    if (v.is_number_integer()) {
        // round-trip through the literal digits so any magnitude works
        auto r = Rational::parse(v.dump());
        if (!r) fail(origin, where + ": bad integer");
        return *r;
    }
    if (v.is_number_float())
        fail(origin, where + ": decimal literals are inexact; write the value as \"p/q\"");
    if (v.is_string()) {
        auto r = Rational::parse(v.get<std::string>());
        if (!r) fail(origin, where + ": expected \"p\" or \"p/q\" with nonzero q, got \"" +
                                 v.get<std::string>() + "\"");
        return *r;
    }
    fail(origin, where + ": expected a number or a \"p/q\" string");
}

Vec<Rational> parse_vector(const json& v, const std::string& origin, const std::string& where) {
    if (!v.is_array()) fail(origin, where + ": expected an array");
    Vec<Rational> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_scalar(v[i], origin, where + "[" + std::to_string(i) + "]"));
    return out;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& origin, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(origin, where + ": unknown key \"" + it.key() + "\"");
    }
}

json scalar_to_json(const Rational& r) {
    if (r.is_integer()) {
        const mpz_class& num = r.raw().get_num();
        if (num.fits_slong_p()) return json(static_cast<long>(num.get_si()));
    }
    return json(r.str());
}

json vector_to_json(const Vec<Rational>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(scalar_to_json(e));
    return out;
}

} // namespace

Instance parse_instance(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> 1-based line/column
        std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        if (offset > text.size()) offset = text.size();
        int line = 1, col = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        std::string msg = e.what();
        if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
        throw ParseError(origin, line, col, msg);
    }

    if (!doc.is_object()) fail(origin, "top level must be an object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        fail(origin, "missing string field \"kind\"");
    std::string kind = doc["kind"].get<std::string>();
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
        fail(origin, "missing positive integer field \"n\"");
    const std::size_t n = doc["n"].get<std::size_t>();

    Instance inst;
    try {
        if (kind == "pwa") {
            check_keys(doc, {"kind", "n", "A", "b", "x0"}, origin, "pwa instance");
            if (!doc.contains("A") || !doc["A"].is_array() || doc["A"].empty())
                fail(origin, "\"A\" must be a nonempty array of rows");
            if (!doc.contains("b")) fail(origin, "missing field \"b\"");
            std::vector<Vec<Rational>> rows;
            for (std::size_t i = 0; i < doc["A"].size(); ++i) {
                auto row = parse_vector(doc["A"][i], origin, "A[" + std::to_string(i) + "]");
                if (row.size() != n)
                    fail(origin, "A[" + std::to_string(i) + "] has length " +
                                     std::to_string(row.size()) + ", expected n = " + std::to_string(n));
                rows.push_back(std::move(row));
            }
            auto b = parse_vector(doc["b"], origin, "b");
            if (b.size() != rows.size())
                fail(origin, "\"b\" has length " + std::to_string(b.size()) + ", expected " +
                                 std::to_string(rows.size()));
            inst.kind = Instance::Kind::Pwa;
            inst.pwa.emplace(std::move(rows), std::move(b));
        } else if (kind == "summax") {
            check_keys(doc, {"kind", "n", "groups", "x0"}, origin, "summax instance");
            if (!doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty())
                fail(origin, "\"groups\" must be a nonempty array");
            std::vector<std::vector<AffineTerm<Rational>>> groups;
            for (std::size_t gi = 0; gi < doc["groups"].size(); ++gi) {
                const json& g = doc["groups"][gi];
                std::string gw = "groups[" + std::to_string(gi) + "]";
                if (!g.is_array() || g.empty()) fail(origin, gw + " must be a nonempty array of terms");
                std::vector<AffineTerm<Rational>> terms;
                for (std::size_t ti = 0; ti < g.size(); ++ti) {
                    const json& t = g[ti];
                    std::string tw = gw + "[" + std::to_string(ti) + "]";
                    if (!t.is_object()) fail(origin, tw + " must be an object {\"a\": [...], \"b\": num}");
                    check_keys(t, {"a", "b"}, origin, tw);
                    if (!t.contains("a") || !t.contains("b")) fail(origin, tw + " needs \"a\" and \"b\"");
                    auto a = parse_vector(t["a"], origin, tw + ".a");
                    if (a.size() != n)
                        fail(origin, tw + ".a has length " + std::to_string(a.size()) +
                                         ", expected n = " + std::to_string(n));
                    terms.push_back({std::move(a), parse_scalar(t["b"], origin, tw + ".b")});
                }
                groups.push_back(std::move(terms));
            }
            inst.kind = Instance::Kind::SumMax;
            inst.summax.emplace(n, std::move(groups));
        } else {
            fail(origin, "\"kind\" must be \"pwa\" or \"summax\", got \"" + kind + "\"");
        }

        if (doc.contains("x0")) {
            auto x0 = parse_vector(doc["x0"], origin, "x0");
            if (x0.size() != n)
                fail(origin, "\"x0\" has length " + std::to_string(x0.size()) + ", expected n = " +
                                 std::to_string(n));
            inst.x0 = std::move(x0);
        }
    } catch (const DimensionError& e) {
        fail(origin, e.what());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path);
}

std::string canonical_json(const Instance& inst) {
    json doc;
    doc["n"] = inst.var_count();
    if (inst.kind == Instance::Kind::Pwa) {
        doc["kind"] = "pwa";
        json rows = json::array();
        for (const auto& r : inst.pwa->rows()) rows.push_back(vector_to_json(r));
        doc["A"] = std::move(rows);
        doc["b"] = vector_to_json(inst.pwa->offsets());
    } else {
        doc["kind"] = "summax";
        json groups = json::array();
        for (const auto& g : inst.summax->groups()) {
            json terms = json::array();
            for (const auto& t : g) {
                json term;
                term["a"] = vector_to_json(t.a);
                term["b"] = scalar_to_json(t.b);
                terms.push_back(std::move(term));
            }
            groups.push_back(std::move(terms));
        }
        doc["groups"] = std::move(groups);
    }
    if (inst.x0) doc["x0"] = vector_to_json(*inst.x0);
    return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << canonical_json(inst);
    if (!out) throw Error("write failed: " + path);
}

} // namespace pwamin
