#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ytest/dataset.hpp"
#include "ytest/rng.hpp"

namespace ytest {

/// Directed edge with a linear path coefficient.
struct ScmEdge {
    std::string parent;
    std::string child;
    double coefficient = 0.0;
};

/// Node declaration: name plus the standard deviation of its additive
/// Gaussian noise term.
struct ScmNode {
    std::string name;
    double noise_scale = 1.0;
};

/// Linear-Gaussian structural causal model over a DAG.
///
/// Construction validates the invariants: unique node names, strictly
/// positive noise scales, edges between declared nodes, and acyclicity.
class LinearScm {
public:
    LinearScm(std::vector<ScmNode> nodes, std::vector<ScmEdge> edges);

    [[nodiscard]] const std::vector<ScmNode>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<ScmEdge>& edges() const { return edges_; }
    /// Node indices in an order where every parent precedes its children.
    [[nodiscard]] const std::vector<std::size_t>& topological_order() const {
        return topological_order_;
    }

private:
    std::vector<ScmNode> nodes_;
    std::vector<ScmEdge> edges_;
    std::vector<std::size_t> topological_order_;
};

/// Parses the declarative model format: one line per node `name noise_scale`,
/// one line per edge `parent child coefficient`; blank lines and lines
/// starting with '#' are ignored.
LinearScm load_model(const std::filesystem::path& path);

/// Samples n i.i.d. rows from the model. Each node's noise stream is derived
/// from the node's name, so declaration order does not affect the draws.
/// Columns appear in declaration order.
Dataset sample_custom(const LinearScm& model, Eigen::Index n, const rng::Stream& stream);

/// Identifiers of the bundled generative scenarios.
enum class GraphId {
    example,  // seven-observed-variable system with a Y-structure
    g1, g2, g3, g4, g5, g6, g7, g8,  // instrument-exposure census graphs
    counterexample,  // binary-interaction system where the indicator is uninformative
};

std::string_view to_string(GraphId id);
std::optional<GraphId> parse_graph_id(std::string_view text);

/// The eight census graphs, in table order.
inline constexpr std::array<GraphId, 8> kStudyGraphs = {
    GraphId::g1, GraphId::g2, GraphId::g3, GraphId::g4,
    GraphId::g5, GraphId::g6, GraphId::g7, GraphId::g8,
};

/// Noise options for the census graphs.
struct GraphOptions {
    /// Noise standard deviation applied to the root node A of g1.
    double sigma = 5.0;
    /// When set, applies sigma to every noise term of g1..g8 instead of only
    /// g1's root.
    bool sigma_for_all_noise = false;
};

/// Support of the path-coefficient distribution.
inline constexpr std::array<double, 4> kCoefficientSupport = {-2.0, -1.0, 1.0, 2.0};

/// Uniform draw over kCoefficientSupport: a sign from {-1, +1} times a
/// magnitude from {1, 2}.
class CoefficientSampler {
public:
    explicit CoefficientSampler(rng::Stream stream) : stream_(stream) {}
    double draw_one();
    /// Throws ValidationError when k < 1.
    Eigen::VectorXd draw(Eigen::Index k);

private:
    rng::Stream stream_;
};

/// k coefficients, each independently uniform over kCoefficientSupport.
Eigen::VectorXd sample_coefficients(Eigen::Index k, rng::Stream& stream);

/// Structural representative of a census family. Unlike LinearScm, a node's
/// noise scale may be zero here: such a node is an exact linear function of
/// its parents (g2 and g3 generate X that way).
struct GraphModel {
    std::vector<ScmNode> nodes;
    std::vector<ScmEdge> edges;
};

/// The structural model behind one g1..g8 replicate, with path coefficients
/// freshly drawn from the given stream in the family's declaration order.
GraphModel draw_graph_model(GraphId id, rng::Stream& coefficient_stream,
                            const GraphOptions& options = {});

/// The seven-observed-variable demonstration system (unit coefficients,
/// unit noise everywhere).
LinearScm example_model();

/// Samples a bundled scenario. g1..g8 expose columns Z, X, W and redraw their
/// coefficients on every call; `example` exposes A, Z, W, B, C, X, Y, D;
/// `counterexample` exposes z1, z2, z3, i1, i2, e, o.
Dataset sample_graph(GraphId id, Eigen::Index n, const rng::Stream& stream,
                     const GraphOptions& options = {});

}  // namespace ytest
