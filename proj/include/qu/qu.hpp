#pragma once

#include "bei.hpp"
#include "filters.hpp"
#include "generate.hpp"
#include "hyperspace.hpp"
#include "intervals.hpp"
#include "natline.hpp"
#include "qpm.hpp"
#include "report.hpp"
#include "spacefile.hpp"
#include "stability.hpp"
#include "suite.hpp"
