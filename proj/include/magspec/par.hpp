#pragma once

namespace magspec {

/// Execution policy for the data-parallel kernels (element assembly,
/// branch scans). Every kernel has a serial reference path; the parallel
/// path must produce bit-identical results via ordered reductions.
enum class ExecMode { serial, parallel };

/// Worker count for ExecMode::parallel. Honors the MAGSPEC_THREADS
/// environment variable as an upper cap; returns 1 when OpenMP is absent.
int worker_count();

/// Default mode: parallel when OpenMP is compiled in and more than one
/// worker is available.
ExecMode default_mode();

}  // namespace magspec
