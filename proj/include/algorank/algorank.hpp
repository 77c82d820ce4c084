#pragma once

// Umbrella header for the algorank library: statistical ranking of
// mathematically equivalent algorithm implementations into performance
// classes, and a FLOPs-as-discriminant test on top of the ranking.

#include "algorank/chain.hpp"
#include "algorank/compare.hpp"
#include "algorank/convergence.hpp"
#include "algorank/errors.hpp"
#include "algorank/exec.hpp"
#include "algorank/harness.hpp"
#include "algorank/measurements.hpp"
#include "algorank/presets.hpp"
#include "algorank/rank.hpp"
#include "algorank/replay.hpp"
#include "algorank/report.hpp"
#include "algorank/rng.hpp"
#include "algorank/source.hpp"
#include "algorank/synthetic.hpp"
#include "algorank/verdict.hpp"
