#pragma once

#include <hfkr/bit_matrix.hpp>
#include <hfkr/config.hpp>
#include <hfkr/diffusion.hpp>
#include <hfkr/errors.hpp>
#include <hfkr/fractal.hpp>
#include <hfkr/keygen.hpp>
#include <hfkr/philox.hpp>
#include <hfkr/report.hpp>
#include <hfkr/stats.hpp>
#include <hfkr/walk.hpp>
#include <hfkr/experiments.hpp>
