#pragma once

// Umbrella header.

#include "bifree/config.hpp"
#include "bifree/fock.hpp"
#include "bifree/gram.hpp"
#include "bifree/matrix_model.hpp"
#include "bifree/model_io.hpp"
#include "bifree/ncpoly.hpp"
#include "bifree/positivity.hpp"
#include "bifree/product.hpp"
#include "bifree/version.hpp"
#include "bifree/word.hpp"
