#pragma once

#include "threatstream/cluster.hpp"
#include "threatstream/config.hpp"
#include "threatstream/error.hpp"
#include "threatstream/eval.hpp"
#include "threatstream/evaluation.hpp"
#include "threatstream/events.hpp"
#include "threatstream/extract.hpp"
#include "threatstream/influence.hpp"
#include "threatstream/ingest.hpp"
#include "threatstream/pipeline.hpp"
#include "threatstream/preprocess.hpp"
#include "threatstream/report.hpp"
#include "threatstream/timestamp.hpp"
#include "threatstream/vectorize.hpp"
