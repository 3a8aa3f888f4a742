#pragma once

#include "plotarc/classifier.hpp"
#include "plotarc/corpus.hpp"
#include "plotarc/error.hpp"
#include "plotarc/experiments.hpp"
#include "plotarc/features.hpp"
#include "plotarc/lexicon.hpp"
#include "plotarc/model_io.hpp"
#include "plotarc/profile_cache.hpp"
#include "plotarc/report.hpp"
#include "plotarc/sentiment.hpp"
#include "plotarc/svg.hpp"
#include "plotarc/synthetic.hpp"
