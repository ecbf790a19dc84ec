//! Session files, their execution and report rendering for the `frobkit`
//! command-line tool.

pub mod report;
pub mod run;
pub mod session;

pub use report::{emit, Format};
pub use run::{execute, CommandResult, Options, Report};
pub use session::{load, parse_session, ParseError, ParseErrorKind, SessionFile, World};
