#pragma once

#include "pumldiff/alignment.hpp"
#include "pumldiff/assignment.hpp"
#include "pumldiff/diff_engine.hpp"
#include "pumldiff/error_classifier.hpp"
#include "pumldiff/errors.hpp"
#include "pumldiff/levenshtein.hpp"
#include "pumldiff/metrics.hpp"
#include "pumldiff/normalize.hpp"
#include "pumldiff/pipeline.hpp"
#include "pumldiff/puml_model.hpp"
#include "pumldiff/report.hpp"
#include "pumldiff/text.hpp"
