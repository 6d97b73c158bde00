#include "submax/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace submax {

namespace {

bool parse_int(const std::string& s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Relation read_relation_text(std::istream& in, std::vector<std::string>* warnings) {
    int lineno = 0;
    int k = -1, arity = -1;
    std::optional<Bitset> bits;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        auto pos = trimmed.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        trimmed = trimmed.substr(pos);
        if (trimmed[0] == '#') continue;
        if (trimmed.rfind("k=", 0) == 0) {
            if (k != -1) throw ParseError(lineno, "duplicate k= header");
            std::string v = trimmed.substr(2);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.pop_back();
            if (!parse_int(v, k) || k < 2) throw ParseError(lineno, "bad k= value");
            continue;
        }
        if (trimmed.rfind("arity=", 0) == 0) {
            if (k == -1) throw ParseError(lineno, "arity= before k=");
            if (arity != -1) throw ParseError(lineno, "duplicate arity= header");
            std::string v = trimmed.substr(6);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.pop_back();
            if (!parse_int(v, arity) || arity < 1) throw ParseError(lineno, "bad arity= value");
            bits = Bitset(Relation::universe_check(Domain(k), arity));
            continue;
        }
        if (!bits) throw ParseError(lineno, "tuple before k=/arity= headers");
        auto toks = split_ws(trimmed);
        if (static_cast<int>(toks.size()) != arity)
            throw ParseError(lineno, "expected " + std::to_string(arity) + " entries, got " +
                                         std::to_string(toks.size()));
        std::vector<int> t;
        t.reserve(toks.size());
        for (const auto& tok : toks) {
            int v;
            if (!parse_int(tok, v)) throw ParseError(lineno, "bad entry '" + tok + "'");
            if (v < 0 || v >= k) throw ParseError(lineno, "entry out of range: " + tok);
            t.push_back(v);
        }
        std::size_t r = tuple_rank(k, t);
        if (bits->test(r) && warnings)
            warnings->push_back("line " + std::to_string(lineno) + ": duplicate tuple ignored");
        bits->set(r);
    }
    if (!bits) throw ParseError(lineno, "missing k=/arity= headers");
    return Relation(Domain(k), arity, std::move(*bits));
}

Relation read_relation_text(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream iss(text);
    return read_relation_text(iss, warnings);
}

std::string write_relation_text(const Relation& rel) {
    std::string out = "k=" + std::to_string(rel.k()) + "\narity=" + std::to_string(rel.arity());
    std::vector<int> t(static_cast<std::size_t>(rel.arity()));
    for (std::size_t r = rel.bits().next_set(0); r < rel.bits().size();
         r = rel.bits().next_set(r + 1)) {
        tuple_decode(rel.k(), rel.arity(), r, t);
        out += "\n";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out += " ";
            out += std::to_string(t[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

Relation read_relation_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("json: ") + e.what());
    }
    if (!j.contains("k") || !j.contains("arity") || !j.contains("tuples"))
        throw ParseError(0, "json: expected keys k, arity, tuples");
    int k = j["k"].get<int>();
    int arity = j["arity"].get<int>();
    if (k < 2 || arity < 1) throw ParseError(0, "json: bad k or arity");
    std::vector<std::vector<int>> tuples = j["tuples"].get<std::vector<std::vector<int>>>();
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != arity) throw ParseError(0, "json: tuple arity mismatch");
        for (int v : t)
            if (v < 0 || v >= k) throw ParseError(0, "json: entry out of range");
    }
    return Relation::from_tuples(Domain(k), arity, tuples);
}

std::string write_relation_json(const Relation& rel) {
    nlohmann::json j;
    j["k"] = rel.k();
    j["arity"] = rel.arity();
    j["tuples"] = rel.member_tuples();
    return j.dump();
}

Relation read_relation(const std::string& text, std::vector<std::string>* warnings) {
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return read_relation_json(text);
    return read_relation_text(text, warnings);
}

Relation load_relation_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_relation(ss.str(), warnings);
}

std::string write_operation(const Operation& op) {
    std::string out =
        "k=" + std::to_string(op.k()) + " arity=" + std::to_string(op.arity()) + " table=";
    const auto& t = op.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(static_cast<int>(t[i]));
    }
    return out;
}

Operation read_operation(const std::string& line) {
    auto toks = split_ws(line);
    if (toks.size() < 3 || toks[0].rfind("k=", 0) != 0 || toks[1].rfind("arity=", 0) != 0 ||
        toks[2].rfind("table=", 0) != 0)
        throw ParseError(1, "expected: k=<K> arity=<N> table=<values>");
    int k, arity;
    if (!parse_int(toks[0].substr(2), k) || k < 2) throw ParseError(1, "bad k= value");
    if (!parse_int(toks[1].substr(6), arity) || arity < 1) throw ParseError(1, "bad arity= value");
    std::vector<int> table;
    std::string first = toks[2].substr(6);
    if (!first.empty()) {
        int v;
        if (!parse_int(first, v)) throw ParseError(1, "bad table entry '" + first + "'");
        table.push_back(v);
    }
    for (std::size_t i = 3; i < toks.size(); ++i) {
        int v;
        if (!parse_int(toks[i], v)) throw ParseError(1, "bad table entry '" + toks[i] + "'");
        table.push_back(v);
    }
    std::size_t expected = Operation::table_size_check(Domain(k), arity);
    if (table.size() != expected)
        throw ParseError(1, "expected " + std::to_string(expected) + " table entries, got " +
                                std::to_string(table.size()));
    return Operation::from_table(Domain(k), arity, table);
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string relation_id(const Relation& rel) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(write_relation_text(rel))));
    return std::string(buf);
}

}  // namespace submax
