#include "picard_strata/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace picard_strata {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw validation_error("malformed JSON document");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void check_format(const json& doc) {
    if (doc.contains("format")) {
        if (!doc["format"].is_number_integer() || doc["format"].get<int>() != 1)
            throw validation_error("unsupported graph format version (expected 1)");
    }
}

} // namespace

DualGraph graph_from_json(const std::string& text) {
    json doc = parse_document(text);
    if (!doc.is_object()) throw validation_error("graph document must be a JSON object");
    check_format(doc);
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw validation_error("graph document needs a \"vertices\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw validation_error("graph document needs an \"edges\" array");

    std::vector<Vertex> vertices;
    for (const json& v : doc["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string())
            throw validation_error("each vertex needs a string \"id\"");
        if (!v.contains("genus") || !v["genus"].is_number_integer())
            throw validation_error("each vertex needs an integer \"genus\"");
        vertices.push_back({v["id"].get<std::string>(), v["genus"].get<int>()});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const json& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw validation_error("each edge must be a pair of vertex ids");
        edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return DualGraph(std::move(vertices), edges);
}

DualGraph graph_from_json_file(const std::string& path) {
    return graph_from_json(read_file(path));
}

std::string graph_to_json(const DualGraph& graph, int indent) {
    json doc;
    doc["format"] = 1;
    doc["vertices"] = json::array();
    for (const Vertex& v : graph.vertices())
        doc["vertices"].push_back({{"id", v.id}, {"genus", v.genus}});
    doc["edges"] = json::array();
    for (const auto& [a, b] : graph.edges())
        doc["edges"].push_back({graph.vertex(a).id, graph.vertex(b).id});
    return doc.dump(indent);
}

std::string graph_to_dot(const DualGraph& graph) {
    std::ostringstream os;
    os << "graph dual {\n";
    for (const Vertex& v : graph.vertices())
        os << "  \"" << v.id << "\" [label=\"" << v.id << ":g=" << v.genus << "\"];\n";
    for (const auto& [a, b] : graph.edges())
        os << "  \"" << graph.vertex(a).id << "\" -- \"" << graph.vertex(b).id << "\";\n";
    os << "}\n";
    return os.str();
}

std::vector<long long> multidegree_from_json(const std::string& text, int expect_len) {
    json doc = parse_document(text);
    if (!doc.is_array()) throw validation_error("multidegree must be a JSON integer array");
    std::vector<long long> out;
    for (const json& x : doc) {
        if (!x.is_number_integer())
            throw validation_error("multidegree entries must be integers");
        out.push_back(x.get<long long>());
    }
    if (expect_len >= 0 && static_cast<int>(out.size()) != expect_len)
        throw validation_error("multidegree length " + std::to_string(out.size()) +
                               " does not match the graph's vertex count " +
                               std::to_string(expect_len));
    return out;
}

std::vector<long long> multidegree_from_json_file(const std::string& path, int expect_len) {
    return multidegree_from_json(read_file(path), expect_len);
}

} // namespace picard_strata
