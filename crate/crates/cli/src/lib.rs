//! Batch front end: JSON instance files in, versioned JSON reports out.

pub mod fixtures;
pub mod instance;
pub mod report;
pub mod runner;

pub use fixtures::{fixture, Fixture, FIXTURES};
pub use instance::{parse_instance, parse_instance_str, Check, InputError, InstanceFile, Mode, OperatorEntry, OperatorName, RootEntry};
pub use report::{CheckReport, ErrorInfo, Report, SliceEntry, Status, SCHEMA_VERSION};
pub use runner::{run, Command};

/// Loads `builtin:<name>` from the corpus, anything else from disk.
pub fn load_instance(source: &str) -> Result<InstanceFile, InputError> {
    match source.strip_prefix("builtin:") {
        Some(name) => {
            let f = fixture(name).ok_or_else(|| InputError::new("io", "", format!("no built-in fixture named {name:?}")))?;
            parse_instance_str(f.json)
        }
        None => parse_instance(std::path::Path::new(source)),
    }
}

/// A report for input that never reached a command.
pub fn input_error_report(command: Command, mode: Option<Mode>, e: InputError) -> Report {
    let mut r = Report::new(command.name(), mode.unwrap_or_default().name());
    r.error = Some(e.into());
    r.settle();
    r
}
