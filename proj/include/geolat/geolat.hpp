#pragma once

#include "geolat/coloring.hpp"
#include "geolat/constructors.hpp"
#include "geolat/error.hpp"
#include "geolat/field.hpp"
#include "geolat/latency.hpp"
#include "geolat/network.hpp"
#include "geolat/nn_graph.hpp"
#include "geolat/oracle.hpp"
#include "geolat/plan.hpp"
#include "geolat/rational.hpp"
#include "geolat/scheme.hpp"
