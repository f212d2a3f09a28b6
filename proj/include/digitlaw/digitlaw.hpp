#pragma once

// Umbrella header: the whole library in one include.

#include "digitlaw/chi_square.hpp"
#include "digitlaw/csv.hpp"
#include "digitlaw/datagen.hpp"
#include "digitlaw/dataset.hpp"
#include "digitlaw/descriptive.hpp"
#include "digitlaw/digits.hpp"
#include "digitlaw/errors.hpp"
#include "digitlaw/report.hpp"
#include "digitlaw/sensitivity.hpp"
#include "digitlaw/special_functions.hpp"
#include "digitlaw/version.hpp"
