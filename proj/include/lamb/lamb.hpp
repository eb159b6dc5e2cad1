#pragma once

// Umbrella header.

#include "lamb/checker.hpp"
#include "lamb/dot.hpp"
#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/norms.hpp"
#include "lamb/oracle.hpp"
#include "lamb/parser.hpp"
#include "lamb/printer.hpp"
#include "lamb/qbf.hpp"
#include "lamb/synthesis.hpp"
#include "lamb/translate.hpp"
#include "lamb/updates.hpp"
