#pragma once

#include "slco/configuration.hpp"
#include "slco/diagnostic.hpp"
#include "slco/engine.hpp"
#include "slco/lts.hpp"
#include "slco/model.hpp"
#include "slco/parser.hpp"
#include "slco/printer.hpp"
#include "slco/reduce.hpp"
#include "slco/validate.hpp"

namespace slco {

inline constexpr const char* version = "0.1.0";
inline constexpr const char* lts_format_version = "1";

}  // namespace slco
