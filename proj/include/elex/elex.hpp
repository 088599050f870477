#pragma once

#include "elex/calibrate.hpp"
#include "elex/cluster_model.hpp"
#include "elex/corpus.hpp"
#include "elex/embeddings.hpp"
#include "elex/emotion.hpp"
#include "elex/error.hpp"
#include "elex/expand.hpp"
#include "elex/features.hpp"
#include "elex/gmm.hpp"
#include "elex/json_io.hpp"
#include "elex/lexicon.hpp"
#include "elex/parallel.hpp"
#include "elex/pca.hpp"
#include "elex/text.hpp"
#include "elex/version.hpp"
