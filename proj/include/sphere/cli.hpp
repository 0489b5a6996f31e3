#pragma once

// Command-line entry point. Subcommands: gegenbauer, spectrum, gt, verify,
// find-frame; flags may instead come from a strict --config JSON file.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

namespace sphere {

int cli_run(int argc, const char* const* argv);

}  // namespace sphere
