#include "blobcalc/coefficient_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>

namespace blobcalc {

namespace {

using nlohmann::ordered_json;

std::pair<int, int> line_column_of_offset(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& message) { throw CoefficientParseError(message, 0, 0); }

std::vector<std::string> split_names(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

Scalar parse_scalar(const std::string& text, FieldSpec field) {
    try {
        return Scalar::parse(text, field);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

}  // namespace

CategoryPresentation parse_coefficient_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        auto [line, col] = line_column_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw CoefficientParseError(std::string("JSON parse error: ") + e.what(), line, col);
    }
    try {
        if (!doc.is_object()) fail("top-level value must be an object");
        std::string name = doc.value("name", std::string("unnamed"));
        if (!doc.contains("field") || !doc["field"].is_object() || !doc["field"].contains("char"))
            fail("missing field.char");
        FieldSpec field;
        try {
            field = FieldSpec(doc["field"]["char"].get<unsigned long>());
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (!doc.contains("objects") || !doc["objects"].is_array() || doc["objects"].empty())
            fail("objects must be a nonempty list");
        std::vector<std::string> objects;
        for (const auto& o : doc["objects"]) {
            std::string s = o.get<std::string>();
            if (s.empty() || s.find(',') != std::string::npos)
                fail("object names must be nonempty and comma-free");
            objects.push_back(s);
        }
        auto object_index = [&](const std::string& s) -> int {
            for (std::size_t i = 0; i < objects.size(); ++i)
                if (objects[i] == s) return static_cast<int>(i);
            fail("unknown object '" + s + "'");
        };
        const int n = static_cast<int>(objects.size());
        std::vector<std::vector<std::vector<std::string>>> hom(
            n, std::vector<std::vector<std::string>>(n));
        if (doc.contains("hom")) {
            if (!doc["hom"].is_object()) fail("hom must be an object");
            for (const auto& [key, value] : doc["hom"].items()) {
                auto parts = split_names(key);
                if (parts.size() != 2) fail("hom key must be 'src,dst', got '" + key + "'");
                int s = object_index(parts[0]), d = object_index(parts[1]);
                if (!value.is_array()) fail("hom basis must be a list of names");
                for (const auto& b : value) {
                    std::string bn = b.get<std::string>();
                    if (bn.empty()) fail("empty hom basis name");
                    hom[s][d].push_back(bn);
                }
            }
        }
        auto basis_index = [&](int s, int d, const std::string& bn) -> Index {
            for (std::size_t i = 0; i < hom[s][d].size(); ++i)
                if (hom[s][d][i] == bn) return static_cast<Index>(i);
            fail("unknown basis name '" + bn + "' in Hom(" + objects[s] + "," + objects[d] + ")");
        };
        std::vector<ComposeEntry> compose;
        if (doc.contains("compose")) {
            if (!doc["compose"].is_array()) fail("compose must be a list");
            for (const auto& entry : doc["compose"]) {
                if (!entry.is_array() || entry.size() != 5)
                    fail("compose entries must be [\"src,mid,dst\", a, b, k, scalar]");
                auto parts = split_names(entry[0].get<std::string>());
                if (parts.size() != 3) fail("compose key must name three objects");
                int s = object_index(parts[0]), m = object_index(parts[1]), d = object_index(parts[2]);
                Index a = entry[1].get<Index>(), b = entry[2].get<Index>(), k = entry[3].get<Index>();
                if (a >= hom[s][m].size() || b >= hom[m][d].size() || k >= hom[s][d].size())
                    fail("compose basis index out of range");
                compose.push_back({s, m, d, a, b, k, parse_scalar(entry[4].get<std::string>(), field)});
            }
        }
        std::vector<SparseVec> identities(n);
        if (!doc.contains("identities") || !doc["identities"].is_object())
            fail("identities must be an object keyed by object name");
        for (const auto& [key, value] : doc["identities"].items()) {
            int o = object_index(key);
            if (!value.is_array()) fail("identity entries must be a list");
            for (const auto& term : value) {
                if (!term.is_array() || term.size() != 2) fail("identity terms are [basis, scalar]");
                Index i = basis_index(o, o, term[0].get<std::string>());
                Scalar v = parse_scalar(term[1].get<std::string>(), field);
                auto it = std::lower_bound(identities[o].begin(), identities[o].end(), i,
                                           [](const auto& p, Index idx) { return p.first < idx; });
                if (it != identities[o].end() && it->first == i) fail("duplicate identity term");
                if (!v.is_zero()) identities[o].insert(it, {i, v});
            }
        }
        try {
            return CategoryPresentation(name, field, std::move(objects), std::move(hom), compose,
                                        std::move(identities));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    } catch (const ordered_json::exception& e) {
        fail(std::string("malformed coefficient file: ") + e.what());
    }
}

std::string serialize_coefficient_json(const CategoryPresentation& c) {
    ordered_json doc;
    doc["name"] = c.name();
    doc["field"] = {{"char", c.field().characteristic()}};
    ordered_json objects = ordered_json::array();
    for (int o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
    doc["objects"] = objects;
    ordered_json hom = ordered_json::object();
    for (int s = 0; s < c.object_count(); ++s)
        for (int d = 0; d < c.object_count(); ++d) {
            if (c.hom_dim(s, d) == 0) continue;
            hom[c.object_name(s) + "," + c.object_name(d)] = c.hom_basis(s, d);
        }
    doc["hom"] = hom;
    ordered_json compose = ordered_json::array();
    for (int s = 0; s < c.object_count(); ++s)
        for (int m = 0; m < c.object_count(); ++m)
            for (int d = 0; d < c.object_count(); ++d) {
                std::string key = c.object_name(s) + "," + c.object_name(m) + "," + c.object_name(d);
                for (Index a = 0; a < c.hom_dim(s, m); ++a)
                    for (Index b = 0; b < c.hom_dim(m, d); ++b)
                        for (const auto& [k, v] : c.compose_pair(s, m, d, a, b))
                            compose.push_back(ordered_json::array({key, a, b, k, v.to_string()}));
            }
    doc["compose"] = compose;
    ordered_json identities = ordered_json::object();
    for (int o = 0; o < c.object_count(); ++o) {
        ordered_json terms = ordered_json::array();
        for (const auto& [i, v] : c.identity_vector(o))
            terms.push_back(ordered_json::array({c.hom_basis(o, o)[i], v.to_string()}));
        identities[c.object_name(o)] = terms;
    }
    doc["identities"] = identities;
    return doc.dump(2) + "\n";
}

std::string coefficient_hash(const CategoryPresentation& c) {
    std::string data = serialize_coefficient_json(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

}  // namespace blobcalc
