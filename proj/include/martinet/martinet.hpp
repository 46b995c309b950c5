// Umbrella header for the whole engine.
#pragma once

#include "classifier.hpp"
#include "flux.hpp"
#include "forms.hpp"
#include "francoise.hpp"
#include "json_io.hpp"
#include "local_algebra.hpp"
#include "monomial.hpp"
#include "normalizer.hpp"
#include "plane_map.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "weights.hpp"
