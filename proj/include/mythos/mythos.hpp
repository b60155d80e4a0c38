#pragma once

// Umbrella header: the whole library.

#include "mythos/antipatterns.hpp"
#include "mythos/errors.hpp"
#include "mythos/ingest.hpp"
#include "mythos/justify.hpp"
#include "mythos/krss.hpp"
#include "mythos/model.hpp"
#include "mythos/pipeline.hpp"
#include "mythos/rules.hpp"
#include "mythos/semantics.hpp"
#include "mythos/tableau.hpp"
