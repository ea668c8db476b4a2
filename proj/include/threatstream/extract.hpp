#pragma once

// Keyword and entity extraction for a cluster's aggregated text.

#include "threatstream/gazetteer.hpp"
#include "threatstream/remote_ner.hpp"
#include "threatstream/scored_term.hpp"
#include "threatstream/term_sets.hpp"
#include "threatstream/textrank.hpp"
