#pragma once

namespace dtppo {

// Entry point of the command-line tool. Subcommands:
//   run     execute an experiment and write a run CSV
//   report  aggregate run CSVs into a summary CSV
// Returns 0 on success, nonzero on any error (usage text goes to stderr).
int cli_main(int argc, char** argv);

}  // namespace dtppo
