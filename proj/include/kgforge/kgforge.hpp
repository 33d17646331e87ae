#pragma once
// Umbrella header for the whole pipeline library.

#include "kgforge/agent/gateway.hpp"
#include "kgforge/agent/prompts.hpp"
#include "kgforge/agent/sha256.hpp"
#include "kgforge/corpus.hpp"
#include "kgforge/metrics.hpp"
#include "kgforge/onto/diff.hpp"
#include "kgforge/onto/graph_io.hpp"
#include "kgforge/onto/merge.hpp"
#include "kgforge/onto/model.hpp"
#include "kgforge/onto/validate.hpp"
#include "kgforge/pipeline/artifacts.hpp"
#include "kgforge/pipeline/commands.hpp"
#include "kgforge/pipeline/config.hpp"
#include "kgforge/rdf/graph.hpp"
#include "kgforge/rdf/term.hpp"
#include "kgforge/rdf/turtle.hpp"
#include "kgforge/rdf/vocab.hpp"
#include "kgforge/stages/expansion.hpp"
#include "kgforge/stages/populate.hpp"
#include "kgforge/stages/refine.hpp"
