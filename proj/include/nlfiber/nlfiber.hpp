#pragma once

#include "channel.hpp"
#include "classical_field.hpp"
#include "conditional_pdf.hpp"
#include "distributions.hpp"
#include "information.hpp"
#include "jet.hpp"
#include "monte_carlo.hpp"
#include "path_integral.hpp"
#include "quadrature.hpp"
#include "roots.hpp"
#include "special_fn.hpp"
#include "validation/checks.hpp"
#include "validation/oracles.hpp"
