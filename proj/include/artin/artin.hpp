#pragma once

#include "artin/graph.hpp"
#include "artin/word.hpp"
#include "artin/britton.hpp"
#include "artin/forms.hpp"
#include "artin/engine.hpp"
#include "artin/coset_forms.hpp"
#include "artin/residual.hpp"
#include "artin/oracle.hpp"
#include "artin/io.hpp"
