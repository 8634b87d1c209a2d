#pragma once

#include "axioms.hpp"
#include "carrier.hpp"
#include "doc.hpp"
#include "elem.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "formula.hpp"
#include "psearch.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "sample.hpp"
#include "search.hpp"
#include "structure.hpp"
#include "transforms.hpp"
