#pragma once

#include <iosfwd>
#include <string>

#include "puzzlebench/prompts.hpp"
#include "puzzlebench/runstore.hpp"

// Executes an experiment manifest against a provider, appending one record
// per (instance, sample). Requests run on a bounded worker pool but records
// are appended in demand order, so two runs of the same manifest against a
// deterministic provider produce byte-identical logs.

namespace pzb {

struct RunOptions {
    // Progress lines ("done 12/40 ...") go here when set.
    std::ostream* progress = nullptr;
};

struct RunStats {
    int requested = 0;           // pairs demanded by the manifest
    int already_present = 0;     // satisfied by the log before this call
    int completed = 0;           // records appended by this call
    int transport_failures = 0;  // pairs left pending for a future resume
};

RunStats execute_run(const ExperimentManifest& manifest, const PromptLibrary& prompts,
                     RecordLog& log, const RunOptions& options = {});

}  // namespace pzb
