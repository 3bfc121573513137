#pragma once

#include "spincorr/analysis.hpp"
#include "spincorr/discord.hpp"
#include "spincorr/entanglement.hpp"
#include "spincorr/io.hpp"
#include "spincorr/model.hpp"
#include "spincorr/presets.hpp"
#include "spincorr/qmat.hpp"
#include "spincorr/version.hpp"

//! spincorr: thermal quantum and classical correlations of a two-qubit
//! XYZ Heisenberg chain in a transverse field.
namespace spincorr {}
