#pragma once

#include "protower/finalg/field.hpp"
#include "protower/finalg/matrix.hpp"
#include "protower/finalg/algebra.hpp"
#include "protower/finalg/builders.hpp"
#include "protower/finalg/epimorphism.hpp"
#include "protower/finmod/module.hpp"
#include "protower/finmod/hom.hpp"
#include "protower/finmod/tensor.hpp"
#include "protower/finmod/flatness.hpp"
#include "protower/tower/builders.hpp"
#include "protower/tower/catalog.hpp"
#include "protower/tower/predicates.hpp"
#include "protower/tower/tower.hpp"
#include "protower/systems/systems.hpp"
#include "protower/functors/functors.hpp"
#include "protower/serieslab/series.hpp"
#include "protower/verify/sampling.hpp"
#include "protower/verify/report.hpp"
#include "protower/verify/checks.hpp"
#include "protower/verify/descent.hpp"
#include "protower/io/json.hpp"
#include "protower/io/scenario.hpp"
