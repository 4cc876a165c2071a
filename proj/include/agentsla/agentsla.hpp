#pragma once

#include "agentsla/catalog.hpp"
#include "agentsla/diagnostics.hpp"
#include "agentsla/eval.hpp"
#include "agentsla/measurements.hpp"
#include "agentsla/model.hpp"
#include "agentsla/parser.hpp"
#include "agentsla/report.hpp"
