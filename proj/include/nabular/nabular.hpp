#pragma once

// Umbrella header for the nabular missing-data profiling library.

#include "nabular/augment.hpp"
#include "nabular/csv.hpp"
#include "nabular/impute.hpp"
#include "nabular/mechanism.hpp"
#include "nabular/plot.hpp"
#include "nabular/random.hpp"
#include "nabular/render.hpp"
#include "nabular/replace.hpp"
#include "nabular/serialize.hpp"
#include "nabular/shadow.hpp"
#include "nabular/summary.hpp"
#include "nabular/table.hpp"
