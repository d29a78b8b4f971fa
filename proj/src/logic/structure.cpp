#include <pclab/logic/structure.hpp>
#include <pclab/errors.hpp>

#include <fstream>

using nlohmann::json;
using std::string;
using std::uint32_t;

namespace pclab
{
    auto RelStructure::add_relation(const string & name, std::size_t arity) -> RelationTable &
    {
        auto [it, fresh] = relations.try_emplace(name);
        if (fresh)
            it->second.arity = arity;
        else if (it->second.arity != arity)
            throw UsageError("relation " + name + " redeclared with arity " + std::to_string(arity));
        return it->second;
    }

    auto RelStructure::add_tuple(const string & name, Tuple t) -> void
    {
        auto & r = add_relation(name, t.size());
        for (auto a : t)
            if (a >= n)
                throw UsageError("relation " + name + " mentions element " + std::to_string(a) + " outside the universe");
        r.tuples.insert(std::move(t));
    }

    auto RelStructure::validate() const -> void
    {
        for (auto & [name, r] : relations)
            for (auto & t : r.tuples) {
                if (t.size() != r.arity)
                    throw UsageError("relation " + name + " has a tuple of the wrong length");
                for (auto a : t)
                    if (a >= n)
                        throw UsageError("relation " + name + " mentions element " + std::to_string(a) + " outside the universe");
            }
    }

    auto RelStructure::relation(const string & name) const -> const RelationTable &
    {
        auto it = relations.find(name);
        if (it == relations.end())
            throw UsageError("structure has no relation named " + name);
        return it->second;
    }

    auto to_json(const RelStructure & s) -> json
    {
        json rels = json::object();
        for (auto & [name, r] : s.relations) {
            json tuples = json::array();
            for (auto & t : r.tuples)
                tuples.push_back(t);
            rels[name] = { { "arity", r.arity }, { "tuples", tuples } };
        }
        return { { "n", s.n }, { "relations", rels } };
    }

    auto rel_structure_from_json(const json & j) -> RelStructure
    {
        try {
            RelStructure s;
            s.n = j.at("n").get<uint32_t>();
            if (j.contains("relations"))
                for (auto & [name, r] : j.at("relations").items()) {
                    auto arity = r.at("arity").get<std::size_t>();
                    s.add_relation(name, arity);
                    for (auto & t : r.at("tuples")) {
                        auto tuple = t.get<Tuple>();
                        if (tuple.size() != arity)
                            throw UsageError("relation " + name + " has a tuple of the wrong length");
                        s.add_tuple(name, std::move(tuple));
                    }
                }
            return s;
        }
        catch (const json::exception & e) {
            throw UsageError(string{ "bad structure JSON: " } + e.what());
        }
    }

    auto read_rel_structure(const string & path) -> RelStructure
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        try {
            return rel_structure_from_json(json::parse(in));
        }
        catch (const json::parse_error & e) {
            throw UsageError("'" + path + "' is not valid JSON: " + e.what());
        }
    }

    auto graph_structure(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>> & edges) -> RelStructure
    {
        RelStructure s;
        s.n = n;
        s.add_relation("E", 2);
        for (auto [u, v] : edges) {
            s.add_tuple("E", { u, v });
            s.add_tuple("E", { v, u });
        }
        return s;
    }

    auto cycle_structure(uint32_t n) -> RelStructure
    {
        std::vector<std::pair<uint32_t, uint32_t>> edges;
        for (uint32_t i = 0; i < n; ++i)
            edges.emplace_back(i, (i + 1) % n);
        return graph_structure(n, edges);
    }

    auto clique_structure(uint32_t n) -> RelStructure
    {
        std::vector<std::pair<uint32_t, uint32_t>> edges;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j)
                edges.emplace_back(i, j);
        return graph_structure(n, edges);
    }
}
