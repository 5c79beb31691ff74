#pragma once

namespace wavecascade {

/// wavecascade <simulate|compare|sweep|dn-study|taylor-check> --config <path>
///             [--out <dir>] [--threads <n>] [--seed <u64>]
/// Exit status: 0 success, 1 configuration or input error, 2 numerical
/// failure (including any failed sweep point).
int cli_main(int argc, char** argv);

}  // namespace wavecascade
