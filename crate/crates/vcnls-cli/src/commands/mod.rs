//! One module per subcommand; each takes its parsed config plus the output
//! directory and returns the process exit code.

pub mod blowup_scan;
pub mod distribution_test;
pub mod lie_check;
pub mod simulate;
pub mod verify_solution;
