#pragma once

#include "sdg/error.hpp"
#include "sdg/rational.hpp"
#include "sdg/weil.hpp"
#include "sdg/matrix.hpp"
#include "sdg/polynomial.hpp"
#include "sdg/models.hpp"
#include "sdg/microcalc.hpp"
#include "sdg/connection.hpp"
#include "sdg/forms.hpp"
#include "sdg/bianchi.hpp"
#include "sdg/sampling.hpp"
