#pragma once

// Umbrella header: {0, *, ?} pattern matrices and strong structural analysis.

#include "sspat/decompose.hpp"
#include "sspat/errors.hpp"
#include "sspat/linalg.hpp"
#include "sspat/matching.hpp"
#include "sspat/matrix.hpp"
#include "sspat/network.hpp"
#include "sspat/oracle.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rank.hpp"
#include "sspat/rational.hpp"
#include "sspat/sampling.hpp"
#include "sspat/symbol.hpp"
#include "sspat/systems.hpp"
