#include "gerbecalc/json_io.hpp"

#include <map>
#include <utility>
#include <vector>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

namespace {

const nlohmann::json& field(const nlohmann::json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

std::string name_at(const nlohmann::json& node, const char* where) {
    if (!node.is_string()) {
        throw ParseError(std::string("expected an element name in '") + where + "'");
    }
    return node.get<std::string>();
}

}  // namespace

std::string canonical_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

OpenCover cover_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("input is not valid JSON: ") + e.what());
    }
    const nlohmann::json& elements = field(doc, "elements");
    if (!elements.is_array() || elements.empty()) {
        throw ParseError("'elements' must be a nonempty array of names");
    }
    std::vector<std::string> names;
    std::map<std::string, int> index;
    for (const auto& node : elements) {
        std::string name = name_at(node, "elements");
        if (index.count(name)) throw ParseError("duplicate element name '" + name + "'");
        index[name] = static_cast<int>(names.size());
        names.push_back(std::move(name));
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown element name '" + name + "'");
        return it->second;
    };
    const nlohmann::json& order = field(doc, "order");
    if (!order.is_array()) throw ParseError("'order' must be an array of pairs");
    std::vector<std::pair<int, int>> below;
    for (const auto& node : order) {
        if (!node.is_array() || node.size() != 2) {
            throw ParseError("'order' entries must be pairs [a, b]");
        }
        below.emplace_back(lookup(name_at(node[0], "order")),
                           lookup(name_at(node[1], "order")));
    }
    const nlohmann::json& cover = field(doc, "cover");
    if (!cover.is_array() || cover.empty()) {
        throw ParseError("'cover' must be a nonempty array of member lists");
    }
    std::vector<ElemSet> sets;
    for (const auto& member : cover) {
        if (!member.is_array()) throw ParseError("cover members must be arrays of names");
        ElemSet s(names.size(), 0);
        for (const auto& node : member) s[lookup(name_at(node, "cover"))] = 1;
        sets.push_back(std::move(s));
    }
    return make_cover(make_poset(std::move(names), below), std::move(sets));
}

nlohmann::json elemset_json(const FinitePoset& p, const ElemSet& s) {
    nlohmann::json out = nlohmann::json::array();
    for (int e = 0; e < p.size(); ++e) {
        if (s[e]) out.push_back(p.names[e]);
    }
    return out;
}

nlohmann::json shrink_result_json(const OpenCover& cover, const ShrinkResult& result) {
    nlohmann::json doc;
    doc["index_sets"] = result.index_sets;
    nlohmann::json u = nlohmann::json::array();
    for (const ElemSet& s : result.u_sets) u.push_back(elemset_json(cover.poset, s));
    doc["u_sets"] = u;
    nlohmann::json vp = nlohmann::json::array();
    for (const ElemSet& s : result.v_prime) vp.push_back(elemset_json(cover.poset, s));
    doc["v_prime"] = vp;
    return doc;
}

}  // namespace gerbecalc
