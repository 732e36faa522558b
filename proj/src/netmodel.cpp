#include "flowgame/netmodel.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace flowgame {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

AssumptionError::AssumptionError(const std::string& what, Path witness)
    : std::runtime_error(what), witness_(std::move(witness))
{
}

Coalition::Coalition(std::vector<PlayerId> members) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(PlayerId player) const
{
    return std::binary_search(members_.begin(), members_.end(), player);
}

std::string Coalition::to_string() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += std::to_string(members_[i]);
    }
    return out + "}";
}

FlowNetwork::FlowNetwork(std::vector<std::string> vertex_names, VertexId source, VertexId sink, std::vector<Arc> arcs)
    : names_(std::move(vertex_names)), source_(source), sink_(sink), arcs_(std::move(arcs))
{
    const auto n = static_cast<VertexId>(names_.size());
    auto in_range = [n](VertexId v) { return v >= 0 && v < n; };
    if (!in_range(source_) || !in_range(sink_)) {
        throw NetworkError("source or sink is not a declared vertex");
    }
    if (source_ == sink_) {
        throw NetworkError("source and sink must differ");
    }
    {
        std::set<std::string> seen;
        for (const auto& name : names_) {
            if (name.empty() || !seen.insert(name).second) {
                throw NetworkError("vertex names must be unique and non-empty");
            }
        }
    }
    out_.assign(names_.size(), {});
    in_.assign(names_.size(), {});
    std::map<PlayerId, ArcId> owners;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        Arc& a = arcs_[i];
        a.id = static_cast<ArcId>(i);
        if (!in_range(a.tail) || !in_range(a.head)) {
            throw NetworkError("arc " + std::to_string(i) + " has an undeclared endpoint");
        }
        if (a.owner) {
            if (*a.owner <= 0) {
                throw NetworkError("player ids must be positive");
            }
            if (!owners.emplace(*a.owner, a.id).second) {
                throw NetworkError("player " + std::to_string(*a.owner) + " owns more than one arc");
            }
        }
        out_[static_cast<std::size_t>(a.tail)].push_back(a.id);
        in_[static_cast<std::size_t>(a.head)].push_back(a.id);
    }
    arc_player_index_.assign(arcs_.size(), -1);
    for (const auto& [player, arc] : owners) {
        arc_player_index_[static_cast<std::size_t>(arc)] = static_cast<int>(players_.size());
        players_.push_back(player);
        player_arc_.push_back(arc);
    }
}

std::optional<VertexId> FlowNetwork::find_vertex(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return static_cast<VertexId>(i);
        }
    }
    return std::nullopt;
}

ArcId FlowNetwork::arc_of(PlayerId player) const
{
    return player_arc_.at(static_cast<std::size_t>(player_index(player)));
}

int FlowNetwork::player_index(PlayerId player) const
{
    auto it = std::lower_bound(players_.begin(), players_.end(), player);
    if (it == players_.end() || *it != player) {
        throw std::out_of_range("unknown player " + std::to_string(player));
    }
    return static_cast<int>(it - players_.begin());
}

ArcMask FlowNetwork::private_mask() const
{
    ArcMask mask(arcs_.size(), false);
    for (const auto& a : arcs_) {
        mask[static_cast<std::size_t>(a.id)] = a.is_private();
    }
    return mask;
}

ArcMask FlowNetwork::coalition_mask(const Coalition& coalition) const
{
    ArcMask mask(arcs_.size(), false);
    for (const auto& a : arcs_) {
        mask[static_cast<std::size_t>(a.id)] = !a.is_private() || coalition.contains(*a.owner);
    }
    return mask;
}

bool FlowNetwork::operator==(const FlowNetwork& other) const
{
    return names_ == other.names_ && source_ == other.source_ && sink_ == other.sink_ && arcs_ == other.arcs_;
}

namespace {

std::vector<bool> reachable(const FlowNetwork& net, VertexId from, bool forward, const std::vector<bool>& blocked)
{
    std::vector<bool> seen(net.vertex_count(), false);
    if (!blocked.empty() && blocked[static_cast<std::size_t>(from)]) {
        return seen;
    }
    std::deque<VertexId> queue{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        const auto& arcs = forward ? net.out_arcs(v) : net.in_arcs(v);
        for (ArcId id : arcs) {
            VertexId w = forward ? net.arc(id).head : net.arc(id).tail;
            auto wi = static_cast<std::size_t>(w);
            if (seen[wi] || (!blocked.empty() && blocked[wi])) {
                continue;
            }
            seen[wi] = true;
            queue.push_back(w);
        }
    }
    return seen;
}

bool is_acyclic(const FlowNetwork& net)
{
    std::vector<int> indegree(net.vertex_count(), 0);
    for (const auto& a : net.arcs()) {
        ++indegree[static_cast<std::size_t>(a.head)];
    }
    std::vector<VertexId> stack;
    for (std::size_t v = 0; v < indegree.size(); ++v) {
        if (indegree[v] == 0) {
            stack.push_back(static_cast<VertexId>(v));
        }
    }
    std::size_t visited = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++visited;
        for (ArcId id : net.out_arcs(v)) {
            if (--indegree[static_cast<std::size_t>(net.arc(id).head)] == 0) {
                stack.push_back(net.arc(id).head);
            }
        }
    }
    return visited == net.vertex_count();
}

}  // namespace

std::optional<Path> all_public_path(const FlowNetwork& net)
{
    std::vector<ArcId> parent(net.vertex_count(), -1);
    std::vector<bool> seen(net.vertex_count(), false);
    std::deque<VertexId> queue{net.source()};
    seen[static_cast<std::size_t>(net.source())] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (v == net.sink()) {
            Path path;
            for (VertexId x = v; x != net.source(); x = net.arc(parent[static_cast<std::size_t>(x)]).tail) {
                path.push_back(parent[static_cast<std::size_t>(x)]);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (ArcId id : net.out_arcs(v)) {
            const Arc& a = net.arc(id);
            if (a.is_private() || seen[static_cast<std::size_t>(a.head)]) {
                continue;
            }
            seen[static_cast<std::size_t>(a.head)] = true;
            parent[static_cast<std::size_t>(a.head)] = id;
            queue.push_back(a.head);
        }
    }
    return std::nullopt;
}

bool arc_on_some_st_path(const FlowNetwork& net, ArcId arc)
{
    const Arc& a = net.arc(arc);
    const VertexId s = net.source();
    const VertexId t = net.sink();
    if (a.tail == a.head || a.head == s || a.tail == t) {
        return false;
    }
    auto from_s = reachable(net, s, true, {});
    auto to_t = reachable(net, t, false, {});
    if (!from_s[static_cast<std::size_t>(a.tail)] || !to_t[static_cast<std::size_t>(a.head)]) {
        return false;
    }
    if (is_acyclic(net)) {
        return true;
    }
    // Enumerate simple s-u prefixes avoiding the head and t; the arc is usable
    // iff some prefix leaves a route from the head to t.
    const VertexId u = a.tail;
    const VertexId v = a.head;
    auto to_u = reachable(net, u, false, {});
    std::vector<bool> on_prefix(net.vertex_count(), false);
    std::function<bool(VertexId)> extend = [&](VertexId x) -> bool {
        if (x == u) {
            return reachable(net, v, true, on_prefix)[static_cast<std::size_t>(t)];
        }
        for (ArcId id : net.out_arcs(x)) {
            VertexId y = net.arc(id).head;
            auto yi = static_cast<std::size_t>(y);
            if (on_prefix[yi] || y == v || y == t || !to_u[yi]) {
                continue;
            }
            on_prefix[yi] = true;
            bool found = extend(y);
            on_prefix[yi] = false;
            if (found) {
                return true;
            }
        }
        return false;
    };
    on_prefix[static_cast<std::size_t>(s)] = true;
    return extend(s);
}

ValidationReport validate(const FlowNetwork& net)
{
    ValidationReport report;
    if (auto path = all_public_path(net)) {
        report.violations.push_back({Violation::Kind::AllPublicPath, *path, -1});
    }
    for (const auto& a : net.arcs()) {
        if (!arc_on_some_st_path(net, a.id)) {
            report.violations.push_back({Violation::Kind::ArcOnNoPath, {}, a.id});
        }
    }
    return report;
}

PreprocessResult preprocess(const FlowNetwork& net)
{
    if (auto path = all_public_path(net)) {
        throw AssumptionError("an s-t path uses public arcs only: " + describe_path(net, *path), *path);
    }
    std::vector<bool> keep_arc(net.arc_count(), false);
    std::vector<bool> keep_vertex(net.vertex_count(), false);
    keep_vertex[static_cast<std::size_t>(net.source())] = true;
    keep_vertex[static_cast<std::size_t>(net.sink())] = true;
    std::vector<ArcId> removed_arcs;
    std::vector<PlayerId> removed_players;
    for (const auto& a : net.arcs()) {
        if (arc_on_some_st_path(net, a.id)) {
            keep_arc[static_cast<std::size_t>(a.id)] = true;
            keep_vertex[static_cast<std::size_t>(a.tail)] = true;
            keep_vertex[static_cast<std::size_t>(a.head)] = true;
        } else {
            removed_arcs.push_back(a.id);
            if (a.owner) {
                removed_players.push_back(*a.owner);
            }
        }
    }
    std::vector<VertexId> remap(net.vertex_count(), -1);
    std::vector<std::string> names;
    std::vector<std::string> removed_vertices;
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        if (keep_vertex[v]) {
            remap[v] = static_cast<VertexId>(names.size());
            names.push_back(net.vertex_names()[v]);
        } else {
            removed_vertices.push_back(net.vertex_names()[v]);
        }
    }
    std::vector<Arc> arcs;
    for (const auto& a : net.arcs()) {
        if (keep_arc[static_cast<std::size_t>(a.id)]) {
            arcs.push_back({-1, remap[static_cast<std::size_t>(a.tail)], remap[static_cast<std::size_t>(a.head)], a.owner});
        }
    }
    std::sort(removed_players.begin(), removed_players.end());
    return {FlowNetwork(std::move(names), remap[static_cast<std::size_t>(net.source())],
                        remap[static_cast<std::size_t>(net.sink())], std::move(arcs)),
            std::move(removed_arcs), std::move(removed_players), std::move(removed_vertices)};
}

namespace {

std::vector<std::string> tokenize(const std::string& line)
{
    std::vector<std::string> tokens;
    std::istringstream in(line.substr(0, line.find('#')));
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

int parse_int(const std::string& tok, int line, const char* what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
    }
    return value;
}

}  // namespace

FlowNetwork parse_network(std::istream& in)
{
    std::vector<std::string> names;
    std::map<std::string, VertexId> index;
    bool have_vertices = false;
    std::optional<VertexId> source;
    std::optional<VertexId> sink;
    std::vector<Arc> arcs;
    std::set<PlayerId> players;

    auto lookup = [&](const std::string& tok, int line) {
        if (!have_vertices) {
            throw ParseError(line, "'vertices' must precede any use of vertex '" + tok + "'");
        }
        auto it = index.find(tok);
        if (it == index.end()) {
            throw ParseError(line, "undeclared vertex '" + tok + "'");
        }
        return it->second;
    };

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tokens = tokenize(raw);
        if (tokens.empty()) {
            continue;
        }
        const std::string& directive = tokens[0];
        if (directive == "vertices") {
            if (have_vertices) {
                throw ParseError(line, "duplicate 'vertices' directive");
            }
            if (tokens.size() < 2) {
                throw ParseError(line, "'vertices' needs a count");
            }
            int n = parse_int(tokens[1], line, "vertex count");
            if (n < 2) {
                throw ParseError(line, "a network needs at least two vertices");
            }
            if (tokens.size() != 2 && tokens.size() != static_cast<std::size_t>(n) + 2) {
                throw ParseError(line, "'vertices' lists " + std::to_string(tokens.size() - 2) + " names but declares " +
                                           std::to_string(n));
            }
            for (int i = 0; i < n; ++i) {
                std::string name = tokens.size() == 2 ? std::to_string(i) : tokens[static_cast<std::size_t>(i) + 2];
                if (!index.emplace(name, i).second) {
                    throw ParseError(line, "duplicate vertex name '" + name + "'");
                }
                names.push_back(std::move(name));
            }
            have_vertices = true;
        } else if (directive == "source" || directive == "sink") {
            if (tokens.size() != 2) {
                throw ParseError(line, "'" + directive + "' takes one vertex");
            }
            auto& slot = directive == "source" ? source : sink;
            if (slot) {
                throw ParseError(line, "duplicate '" + directive + "' directive");
            }
            slot = lookup(tokens[1], line);
        } else if (directive == "arc") {
            if (tokens.size() < 4) {
                throw ParseError(line, "'arc' needs tail, head and ownership");
            }
            Arc a;
            a.tail = lookup(tokens[1], line);
            a.head = lookup(tokens[2], line);
            if (tokens[3] == "public" && tokens.size() == 4) {
                a.owner = std::nullopt;
            } else if (tokens[3] == "private" && tokens.size() == 5) {
                int player = parse_int(tokens[4], line, "player id");
                if (player <= 0) {
                    throw ParseError(line, "player ids must be positive");
                }
                if (!players.insert(player).second) {
                    throw ParseError(line, "duplicate player id " + std::to_string(player));
                }
                a.owner = player;
            } else {
                throw ParseError(line, "arc ownership must be 'public' or 'private <player-id>'");
            }
            arcs.push_back(a);
        } else {
            throw ParseError(line, "unknown directive '" + directive + "'");
        }
    }
    if (!have_vertices) {
        throw ParseError(0, "missing 'vertices' directive");
    }
    if (!source) {
        throw ParseError(0, "missing 'source' directive");
    }
    if (!sink) {
        throw ParseError(0, "missing 'sink' directive");
    }
    try {
        return FlowNetwork(std::move(names), *source, *sink, std::move(arcs));
    } catch (const NetworkError& e) {
        throw ParseError(0, e.what());
    }
}

FlowNetwork parse_network(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_network(in);
}

FlowNetwork load_network(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return parse_network(in);
}

std::string serialize_network(const FlowNetwork& net)
{
    std::ostringstream out;
    bool canonical_names = true;
    for (std::size_t i = 0; i < net.vertex_count(); ++i) {
        canonical_names = canonical_names && net.vertex_names()[i] == std::to_string(i);
    }
    out << "vertices " << net.vertex_count();
    if (!canonical_names) {
        for (const auto& name : net.vertex_names()) {
            out << ' ' << name;
        }
    }
    out << '\n';
    out << "source " << net.vertex_name(net.source()) << '\n';
    out << "sink " << net.vertex_name(net.sink()) << '\n';
    for (const auto& a : net.arcs()) {
        out << "arc " << net.vertex_name(a.tail) << ' ' << net.vertex_name(a.head);
        if (a.owner) {
            out << " private " << *a.owner;
        } else {
            out << " public";
        }
        out << '\n';
    }
    return out.str();
}

std::string describe_path(const FlowNetwork& net, const Path& path)
{
    if (path.empty()) {
        return "(empty)";
    }
    std::string out = net.vertex_name(net.arc(path.front()).tail);
    for (ArcId id : path) {
        out += " -> " + net.vertex_name(net.arc(id).head);
    }
    return out;
}

std::vector<VertexId> walk_vertices(const FlowNetwork& net, const Path& walk)
{
    std::vector<VertexId> out;
    if (walk.empty()) {
        return out;
    }
    out.push_back(net.arc(walk.front()).tail);
    for (ArcId id : walk) {
        out.push_back(net.arc(id).head);
    }
    return out;
}

}  // namespace flowgame
