#pragma once

// Klein-Gordon bound states of the q-deformed Woods-Saxon plus ring-shaped
// potential by the Asymptotic Iteration Method, with numerical oracles.

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"
#include "kgaim/series_jet.hpp"
#include "kgaim/aim.hpp"
#include "kgaim/spectrum.hpp"
#include "kgaim/wavefunction.hpp"
#include "kgaim/oracle.hpp"
#include "kgaim/validation.hpp"
