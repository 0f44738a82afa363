#pragma once

#include "quill/errors.hpp"
#include "quill/gaussian.hpp"
#include "quill/illumination.hpp"
#include "quill/montecarlo.hpp"
#include "quill/photon_stats.hpp"
#include "quill/rng.hpp"
#include "quill/samplers.hpp"
#include "quill/scenario.hpp"
