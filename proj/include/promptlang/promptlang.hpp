#pragma once

// Umbrella header.

#include "promptlang/core.hpp"
#include "promptlang/linter.hpp"
#include "promptlang/parser.hpp"
#include "promptlang/registry.hpp"
#include "promptlang/registry_io.hpp"
#include "promptlang/renderer.hpp"
#include "promptlang/scaffold.hpp"
#include "promptlang/templating.hpp"
