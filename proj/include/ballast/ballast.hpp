#ifndef BALLAST_BALLAST_HPP
#define BALLAST_BALLAST_HPP

#include "ballast/core.hpp"
#include "ballast/error.hpp"
#include "ballast/instances.hpp"
#include "ballast/load_connected.hpp"
#include "ballast/load_exponential.hpp"
#include "ballast/load_stacked.hpp"
#include "ballast/rational.hpp"
#include "ballast/unload.hpp"
#include "ballast/unload_exact.hpp"

#endif // BALLAST_BALLAST_HPP
