#pragma once

#include "dnls/classify.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolve.hpp"
#include "dnls/fft.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/grid.hpp"
#include "dnls/io.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectral.hpp"
#include "dnls/variational.hpp"
