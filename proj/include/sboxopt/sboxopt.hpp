#pragma once

#include "bandit.hpp"
#include "corpus.hpp"
#include "fitness.hpp"
#include "hill_climb.hpp"
#include "metrics.hpp"
#include "optimize.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sbox.hpp"
#include "spectral.hpp"
