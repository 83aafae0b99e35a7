#pragma once
// Umbrella header: the full claim-level RAG evaluation engine.

#include "claimeval/backends.hpp"
#include "claimeval/cache.hpp"
#include "claimeval/commands.hpp"
#include "claimeval/core.hpp"
#include "claimeval/io.hpp"
#include "claimeval/judge_client.hpp"
#include "claimeval/meta.hpp"
#include "claimeval/metrics.hpp"
#include "claimeval/pipeline.hpp"
#include "claimeval/render.hpp"
#include "claimeval/text.hpp"
