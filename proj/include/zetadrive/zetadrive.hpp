#pragma once

#include <zetadrive/config.hpp>
#include <zetadrive/csv.hpp>
#include <zetadrive/errors.hpp>
#include <zetadrive/floquet.hpp>
#include <zetadrive/io.hpp>
#include <zetadrive/measurement.hpp>
#include <zetadrive/parallel.hpp>
#include <zetadrive/primes.hpp>
#include <zetadrive/quadrature.hpp>
#include <zetadrive/rng.hpp>
#include <zetadrive/waveform.hpp>
#include <zetadrive/zero_finder.hpp>
#include <zetadrive/zeta.hpp>
