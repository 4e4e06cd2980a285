#pragma once

#include <json.hpp>

#include "cfk/foliation.hpp"
#include "cfk/green.hpp"
#include "cfk/topology.hpp"

namespace cfk {

using json = nlohmann::json;

json complex_to_json(const ComplexStore& store);
json trace_to_json(const ComplexStore& store, const SinkSpec& sink, Sense sense,
                   const LeafTrace& t);
json foliation_to_json(const FoliationReport& rep);
json green_to_json(const GreenReport& rep);
json homology_to_json(const HomologyReport& rep);
json polygons_to_json(const PolygonReport& rep);
json fan_to_json(const ComplexStore& store);

std::string exchange_graph_dot(const ComplexStore& store);
std::string oriented_graph_dot(const ComplexStore& store, const OrientedExchangeGraph& og);

/** 1-skeleton of the complex in the g-fan picture (rank ≤ 3). */
std::string complex_svg(const ComplexStore& store, const std::vector<LeafTrace>& traces,
                        const SinkSpec* sink = nullptr);
std::string fan_svg(const ComplexStore& store);

std::string point_spec(const Point& p);

} // namespace cfk
