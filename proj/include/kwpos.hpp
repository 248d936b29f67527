#pragma once

// Umbrella header for the keyword-position control toolkit.

#include "kwpos/control.hpp"
#include "kwpos/dataset.hpp"
#include "kwpos/document.hpp"
#include "kwpos/error.hpp"
#include "kwpos/metrics.hpp"
#include "kwpos/oracle_gen.hpp"
#include "kwpos/parallel.hpp"
#include "kwpos/random.hpp"
#include "kwpos/tokenizer.hpp"
