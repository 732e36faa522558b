#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flowgame {

using VertexId = int;
using ArcId = int;
using PlayerId = int;

/// Indicator over arc ids, sized to the owning network's arc count.
using ArcMask = std::vector<bool>;

/// Arc ids in traversal order.
using Path = std::vector<ArcId>;

struct Arc
{
    ArcId id = -1;
    VertexId tail = -1;
    VertexId head = -1;
    std::optional<PlayerId> owner;  // empty for public arcs

    bool is_private() const { return owner.has_value(); }
    bool operator==(const Arc&) const = default;
};

class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

/// Structural invariant violated while constructing a FlowNetwork.
class NetworkError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by preprocess when some s-t path uses public arcs only.
class AssumptionError : public std::runtime_error
{
  public:
    AssumptionError(const std::string& what, Path witness);
    const Path& witness() const { return witness_; }

  private:
    Path witness_;
};

/// A set of player ids, stored sorted and without duplicates.
class Coalition
{
  public:
    Coalition() = default;
    explicit Coalition(std::vector<PlayerId> members);

    const std::vector<PlayerId>& members() const { return members_; }
    bool contains(PlayerId player) const;
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    /// "{1,3,4}"
    std::string to_string() const;

    auto operator<=>(const Coalition&) const = default;

  private:
    std::vector<PlayerId> members_;
};

/// Directed unit-capacity network with a source and a sink. Every arc is
/// either public or owned by exactly one player; arc identity is the position
/// in the arc list, so parallel arcs are unambiguous. Immutable once built.
class FlowNetwork
{
  public:
    /// Arc ids in `arcs` are reassigned to their positions. Throws NetworkError
    /// on an out-of-range endpoint, source == sink, a non-positive or repeated
    /// player id, or duplicate vertex names.
    FlowNetwork(std::vector<std::string> vertex_names, VertexId source, VertexId sink, std::vector<Arc> arcs);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    std::size_t player_count() const { return players_.size(); }

    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(ArcId id) const { return arcs_.at(static_cast<std::size_t>(id)); }
    VertexId source() const { return source_; }
    VertexId sink() const { return sink_; }

    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& vertex_name(VertexId v) const { return names_.at(static_cast<std::size_t>(v)); }
    std::optional<VertexId> find_vertex(std::string_view name) const;

    const std::vector<ArcId>& out_arcs(VertexId v) const { return out_.at(static_cast<std::size_t>(v)); }
    const std::vector<ArcId>& in_arcs(VertexId v) const { return in_.at(static_cast<std::size_t>(v)); }

    /// Player ids in increasing order. Allocation vectors are indexed by
    /// position in this list.
    const std::vector<PlayerId>& players() const { return players_; }
    ArcId arc_of(PlayerId player) const;
    int player_index(PlayerId player) const;
    /// Position in players() of the arc's owner, or -1 for public arcs.
    int player_index_of_arc(ArcId id) const { return arc_player_index_.at(static_cast<std::size_t>(id)); }

    ArcMask private_mask() const;
    ArcMask full_mask() const { return ArcMask(arcs_.size(), true); }
    /// Arcs available to coalition S: its private arcs plus every public arc.
    ArcMask coalition_mask(const Coalition& coalition) const;
    Coalition grand_coalition() const { return Coalition(players_); }

    bool operator==(const FlowNetwork& other) const;

  private:
    std::vector<std::string> names_;
    VertexId source_;
    VertexId sink_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<std::vector<ArcId>> in_;
    std::vector<PlayerId> players_;
    std::vector<ArcId> player_arc_;
    std::vector<int> arc_player_index_;
};

struct Violation
{
    enum class Kind
    {
        AllPublicPath,  // an s-t path without private arcs
        ArcOnNoPath,    // an arc that lies on no s-t path
    };
    Kind kind;
    Path witness;  // the all-public path, for AllPublicPath
    ArcId arc = -1;  // the offending arc, for ArcOnNoPath
};

struct ValidationReport
{
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks that every s-t path carries a private arc and that every arc lies
/// on some (simple) s-t path. Violations are data, never exceptions.
ValidationReport validate(const FlowNetwork& net);

/// An s-t path made of public arcs only, if one exists.
std::optional<Path> all_public_path(const FlowNetwork& net);

/// True iff the arc lies on an s-t path with pairwise distinct vertices.
bool arc_on_some_st_path(const FlowNetwork& net, ArcId arc);

struct PreprocessResult
{
    FlowNetwork network;
    std::vector<ArcId> removed_arcs;  // ids in the input network
    std::vector<PlayerId> removed_players;
    std::vector<std::string> removed_vertices;
};

/// Deletes every arc on no s-t path and every vertex left without arcs
/// (source and sink are kept). Throws AssumptionError if an all-public s-t
/// path exists.
PreprocessResult preprocess(const FlowNetwork& net);

FlowNetwork parse_network(std::istream& in);
FlowNetwork parse_network(std::string_view text);
FlowNetwork load_network(const std::filesystem::path& path);
std::string serialize_network(const FlowNetwork& net);

/// "s -> a -> t" for a path given as arc ids.
std::string describe_path(const FlowNetwork& net, const Path& path);

/// Vertices visited by a walk, starting at the tail of its first arc.
std::vector<VertexId> walk_vertices(const FlowNetwork& net, const Path& walk);

}  // namespace flowgame
