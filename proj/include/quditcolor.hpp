#pragma once

#include "quditcolor/analysis.hpp"
#include "quditcolor/basis.hpp"
#include "quditcolor/classical.hpp"
#include "quditcolor/config.hpp"
#include "quditcolor/errors.hpp"
#include "quditcolor/evolution.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/interactions.hpp"
#include "quditcolor/presets.hpp"
#include "quditcolor/report.hpp"
#include "quditcolor/schedule.hpp"
