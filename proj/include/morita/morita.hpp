#pragma once

#include "morita/error.hpp"
#include "morita/scalar.hpp"
#include "morita/sparse.hpp"
#include "morita/chain_complex.hpp"
#include "morita/free_dga.hpp"
#include "morita/text.hpp"
#include "morita/cw_model.hpp"
#include "morita/representation.hpp"
#include "morita/resolution.hpp"
#include "morita/bar.hpp"
#include "morita/derived_hom.hpp"
#include "morita/hochschild.hpp"
#include "morita/cw_json.hpp"
