#pragma once

#include "bigint.hpp"
#include "bounds.hpp"
#include "decide.hpp"
#include "domains.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "flow.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "pumping.hpp"
#include "reversibility.hpp"
#include "shortrun.hpp"
#include "vector.hpp"
