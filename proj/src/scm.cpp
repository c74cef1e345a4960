#include "ytest/scm.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ytest/errors.hpp"

namespace ytest {

namespace {

struct Structure {
    std::vector<std::size_t> topological_order;
    std::vector<std::vector<std::pair<std::size_t, double>>> parents;  // per node
};

Structure validate_structure(const std::vector<ScmNode>& nodes,
                             const std::vector<ScmEdge>& edges,
                             bool require_positive_noise) {
    if (nodes.empty()) throw ValidationError("model declares no nodes");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name.empty()) throw ValidationError("node names must not be empty");
        if (!index.emplace(nodes[i].name, i).second) {
            throw ValidationError("duplicate node: " + nodes[i].name);
        }
        const double scale = nodes[i].noise_scale;
        if (require_positive_noise ? !(scale > 0.0) : !(scale >= 0.0)) {
            throw ValidationError("node " + nodes[i].name + " has non-positive noise scale");
        }
    }

    Structure out;
    out.parents.resize(nodes.size());
    std::vector<std::vector<std::size_t>> children(nodes.size());
    std::vector<std::size_t> indegree(nodes.size(), 0);
    for (const auto& edge : edges) {
        const auto pit = index.find(edge.parent);
        const auto cit = index.find(edge.child);
        if (pit == index.end() || cit == index.end()) {
            throw ValidationError("edge " + edge.parent + " -> " + edge.child +
                                  " references an undeclared node");
        }
        if (pit->second == cit->second) {
            throw ValidationError("self loop on node " + edge.parent);
        }
        out.parents[cit->second].emplace_back(pit->second, edge.coefficient);
        children[pit->second].push_back(cit->second);
        ++indegree[cit->second];
    }

    // Kahn's algorithm; a leftover node means a cycle.
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (indegree[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
        const std::size_t node = ready.back();
        ready.pop_back();
        out.topological_order.push_back(node);
        for (std::size_t child : children[node]) {
            if (--indegree[child] == 0) ready.push_back(child);
        }
    }
    if (out.topological_order.size() != nodes.size()) {
        throw ValidationError("edge relation contains a cycle");
    }
    return out;
}

/// Shared sampler: per-node noise streams are derived from the node's name,
/// so neither declaration order nor topological tie-breaking affects draws.
Dataset sample_structure(const std::vector<ScmNode>& nodes, const Structure& structure,
                         Eigen::Index n, const rng::Stream& stream) {
    std::vector<Eigen::VectorXd> values(nodes.size());
    for (std::size_t i : structure.topological_order) {
        Eigen::VectorXd column;
        if (nodes[i].noise_scale > 0.0) {
            rng::Stream node_stream = stream.child(nodes[i].name);
            column = nodes[i].noise_scale * node_stream.normals(n);
        } else {
            column = Eigen::VectorXd::Zero(n);
        }
        for (const auto& [parent, coefficient] : structure.parents[i]) {
            column += coefficient * values[parent];
        }
        values[i] = std::move(column);
    }
    Dataset out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.add_column(nodes[i].name, std::move(values[i]));
    }
    return out;
}

double parse_double(std::string_view token, int line_number) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_number) + ": expected a finite number, got '" +
                         std::string(token) + "'");
    }
    return value;
}

Dataset sample_counterexample(Eigen::Index n, const rng::Stream& stream) {
    auto indicator_below = [&](std::string_view name, double cut) {
        rng::Stream s = stream.child(name);
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = s.normal() < cut ? 1.0 : 0.0;
        return v;
    };
    const Eigen::VectorXd z1 = indicator_below("z1", 0.0);
    const Eigen::VectorXd z2 = indicator_below("z2", 1.0);
    const Eigen::VectorXd z3 = indicator_below("z3", -1.0);
    const Eigen::VectorXd i1 = z1.cwiseProduct(z2);
    const Eigen::VectorXd i2 = z2.cwiseProduct(z3);
    rng::Stream e_stream = stream.child("e");
    rng::Stream o_stream = stream.child("o");
    const Eigen::VectorXd e = i1 + i2 + z1 + z2 + z3 + e_stream.normals(n);
    const Eigen::VectorXd o = e + z1 + z2 + z3 + o_stream.normals(n);

    Dataset out;
    out.add_column("z1", z1);
    out.add_column("z2", z2);
    out.add_column("z3", z3);
    out.add_column("i1", i1);
    out.add_column("i2", i2);
    out.add_column("e", e);
    out.add_column("o", o);
    return out;
}

}  // namespace

LinearScm::LinearScm(std::vector<ScmNode> nodes, std::vector<ScmEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    topological_order_ = validate_structure(nodes_, edges_, /*require_positive_noise=*/true)
                             .topological_order;
}

LinearScm load_model(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open model file: " + path.string());

    std::vector<ScmNode> nodes;
    std::vector<ScmEdge> edges;
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        std::string token;
        while (tokens >> token) parts.push_back(token);
        if (parts.empty() || parts.front().starts_with('#')) continue;
        if (parts.size() == 2) {
            nodes.push_back({parts[0], parse_double(parts[1], line_number)});
        } else if (parts.size() == 3) {
            edges.push_back({parts[0], parts[1], parse_double(parts[2], line_number)});
        } else {
            throw ParseError("line " + std::to_string(line_number) +
                             ": expected 'name noise_scale' or 'parent child coefficient'");
        }
    }
    return LinearScm(std::move(nodes), std::move(edges));
}

Dataset sample_custom(const LinearScm& model, Eigen::Index n, const rng::Stream& stream) {
    if (n < 1) throw ValidationError("sample size must be at least 1");
    Structure structure = validate_structure(model.nodes(), model.edges(), true);
    return sample_structure(model.nodes(), structure, n, stream);
}

std::string_view to_string(GraphId id) {
    switch (id) {
        case GraphId::example: return "example";
        case GraphId::g1: return "g1";
        case GraphId::g2: return "g2";
        case GraphId::g3: return "g3";
        case GraphId::g4: return "g4";
        case GraphId::g5: return "g5";
        case GraphId::g6: return "g6";
        case GraphId::g7: return "g7";
        case GraphId::g8: return "g8";
        case GraphId::counterexample: return "counterexample";
    }
    return "?";
}

std::optional<GraphId> parse_graph_id(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "example") return GraphId::example;
    if (lowered == "counterexample") return GraphId::counterexample;
    if (lowered.size() == 2 && lowered[0] == 'g' && lowered[1] >= '1' && lowered[1] <= '8') {
        return static_cast<GraphId>(static_cast<int>(GraphId::g1) + (lowered[1] - '1'));
    }
    return std::nullopt;
}

double CoefficientSampler::draw_one() {
    const double sign = stream_.uniform_pow2(0, 1) == 0 ? -1.0 : 1.0;
    const double magnitude = static_cast<double>(stream_.uniform_pow2(1, 2));
    return sign * magnitude;
}

Eigen::VectorXd CoefficientSampler::draw(Eigen::Index k) {
    if (k < 1) throw ValidationError("coefficient draw needs k >= 1");
    Eigen::VectorXd out(k);
    for (Eigen::Index i = 0; i < k; ++i) out[i] = draw_one();
    return out;
}

Eigen::VectorXd sample_coefficients(Eigen::Index k, rng::Stream& stream) {
    CoefficientSampler sampler(stream);
    return sampler.draw(k);
}

GraphModel draw_graph_model(GraphId id, rng::Stream& coefficient_stream,
                            const GraphOptions& options) {
    if (!(options.sigma > 0.0)) throw ValidationError("sigma must be positive");
    const double base = options.sigma_for_all_noise ? options.sigma : 1.0;
    GraphModel m;
    Eigen::VectorXd a;
    switch (id) {
        case GraphId::g1:
            a = sample_coefficients(4, coefficient_stream);
            m.nodes = {{"A", options.sigma}, {"Z", base}, {"W", base}, {"X", base}};
            m.edges = {{"A", "Z", a[0]}, {"A", "W", a[1]}, {"Z", "X", a[2]}, {"W", "X", a[3]}};
            break;
        case GraphId::g2:
            a = sample_coefficients(6, coefficient_stream);
            // X is an exact function of its parents in this family (no noise term).
            m.nodes = {{"A", base}, {"B", base}, {"Z", base}, {"W", base}, {"X", 0.0}};
            m.edges = {{"A", "Z", a[0]}, {"B", "Z", a[1]}, {"A", "W", a[2]},
                       {"B", "X", a[3]}, {"W", "X", a[4]}, {"Z", "X", a[5]}};
            break;
        case GraphId::g3:
            a = sample_coefficients(8, coefficient_stream);
            // Eight coefficients are drawn but the last is unused: X depends
            // only on B, C, Z and carries no noise term in this family.
            m.nodes = {{"A", base}, {"B", base}, {"C", base},
                       {"Z", base}, {"W", base}, {"X", 0.0}};
            m.edges = {{"A", "Z", a[0]}, {"B", "Z", a[1]}, {"A", "W", a[2]}, {"C", "W", a[3]},
                       {"B", "X", a[4]}, {"C", "X", a[5]}, {"Z", "X", a[6]}};
            break;
        case GraphId::g4:
            a = sample_coefficients(6, coefficient_stream);
            m.nodes = {{"A", base}, {"B", base}, {"C", base},
                       {"Z", base}, {"W", base}, {"X", base}};
            m.edges = {{"A", "Z", a[0]}, {"B", "Z", a[1]}, {"A", "W", a[2]}, {"C", "W", a[3]},
                       {"B", "X", a[4]}, {"C", "X", a[5]}};
            break;
        case GraphId::g5:
            a = sample_coefficients(5, coefficient_stream);
            m.nodes = {{"A", base}, {"B", base}, {"Z", base}, {"W", base}, {"X", base}};
            m.edges = {{"A", "Z", a[0]}, {"B", "Z", a[1]}, {"A", "W", a[2]},
                       {"B", "X", a[3]}, {"W", "X", a[4]}};
            break;
        case GraphId::g6:
            a = sample_coefficients(4, coefficient_stream);
            m.nodes = {{"A", base}, {"W", base}, {"X", base}, {"Z", base}};
            m.edges = {{"A", "W", a[0]}, {"W", "X", a[1]}, {"A", "Z", a[2]}, {"X", "Z", a[3]}};
            break;
        case GraphId::g7:
            a = sample_coefficients(4, coefficient_stream);
            m.nodes = {{"A", base}, {"X", base}, {"W", base}, {"Z", base}};
            m.edges = {{"A", "W", a[0]}, {"X", "W", a[1]}, {"A", "Z", a[2]}, {"X", "Z", a[3]}};
            break;
        case GraphId::g8:
            a = sample_coefficients(5, coefficient_stream);
            m.nodes = {{"A", base}, {"B", base}, {"W", base}, {"X", base}, {"Z", base}};
            m.edges = {{"A", "W", a[0]}, {"B", "W", a[1]}, {"B", "X", a[2]},
                       {"A", "Z", a[3]}, {"X", "Z", a[4]}};
            break;
        default:
            throw ValidationError("draw_graph_model only covers the census graphs g1..g8");
    }
    return m;
}

LinearScm example_model() {
    std::vector<ScmNode> nodes = {{"A", 1.0}, {"Z", 1.0}, {"W", 1.0}, {"B", 1.0},
                                  {"C", 1.0}, {"X", 1.0}, {"Y", 1.0}, {"D", 1.0}};
    std::vector<ScmEdge> edges = {
        {"A", "Z", 1.0}, {"A", "W", 1.0}, {"Z", "B", 1.0},
        {"Z", "X", 1.0}, {"W", "X", 1.0}, {"C", "X", 1.0},
        {"X", "Y", 1.0}, {"B", "Y", 1.0}, {"C", "Y", 1.0},
        {"X", "D", 1.0}, {"Y", "D", 1.0},
    };
    return LinearScm(std::move(nodes), std::move(edges));
}

Dataset sample_graph(GraphId id, Eigen::Index n, const rng::Stream& stream,
                     const GraphOptions& options) {
    if (n < 1) throw ValidationError("sample size must be at least 1");
    if (id == GraphId::example) {
        return sample_custom(example_model(), n, stream);
    }
    if (id == GraphId::counterexample) {
        return sample_counterexample(n, stream);
    }
    rng::Stream coefficient_stream = stream.child("coefficients");
    const GraphModel model = draw_graph_model(id, coefficient_stream, options);
    const Structure structure = validate_structure(model.nodes, model.edges, false);
    const Dataset full = sample_structure(model.nodes, structure, n, stream.child("noise"));
    static const std::vector<std::string> kExposed = {"Z", "X", "W"};
    return full.select(kExposed);
}

}  // namespace ytest
