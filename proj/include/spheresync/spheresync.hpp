#pragma once

// Umbrella header for the sphere-consensus spectral laboratory.

#include "spheresync/config.hpp"
#include "spheresync/csv.hpp"
#include "spheresync/dynamics.hpp"
#include "spheresync/eigen.hpp"
#include "spheresync/graph.hpp"
#include "spheresync/kronecker.hpp"
#include "spheresync/linear_operator.hpp"
#include "spheresync/matrix.hpp"
#include "spheresync/pairing.hpp"
#include "spheresync/predictions.hpp"
#include "spheresync/rate.hpp"
#include "spheresync/rng.hpp"
#include "spheresync/subspaces.hpp"
#include "spheresync/summary.hpp"
#include "spheresync/verify.hpp"
