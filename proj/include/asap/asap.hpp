#pragma once

#include "asap/acf.hpp"
#include "asap/generators.hpp"
#include "asap/metrics.hpp"
#include "asap/preagg.hpp"
#include "asap/search.hpp"
#include "asap/series.hpp"
#include "asap/smoothing.hpp"
#include "asap/stream.hpp"
