#pragma once

#include "qgkit/bruck.hpp"
#include "qgkit/congruence.hpp"
#include "qgkit/constructions.hpp"
#include "qgkit/enumerate.hpp"
#include "qgkit/errors.hpp"
#include "qgkit/io.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"
#include "qgkit/varieties.hpp"
