//! The `compute` front end: job documents in, result documents out.

mod input;
mod run;

pub use input::*;
pub use run::{run, JobError, Outcome};

/// The commands of `compute`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Hh0,
    Trace,
    Euler,
    Transfer,
    TwistedTransfer,
    Reidemeister,
    NervePi0,
    MoritaCheck,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Hh0,
        Command::Trace,
        Command::Euler,
        Command::Transfer,
        Command::TwistedTransfer,
        Command::Reidemeister,
        Command::NervePi0,
        Command::MoritaCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hh0 => "hh0",
            Command::Trace => "trace",
            Command::Euler => "euler",
            Command::Transfer => "transfer",
            Command::TwistedTransfer => "twisted-transfer",
            Command::Reidemeister => "reidemeister",
            Command::NervePi0 => "nerve-pi0",
            Command::MoritaCheck => "morita-check",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }

    /// JSON Schema of the job document.
    pub fn schema(self) -> serde_json::Value {
        let s = match self {
            Command::Hh0 => schemars::schema_for!(Hh0Job),
            Command::Trace => schemars::schema_for!(TraceJob),
            Command::Euler => schemars::schema_for!(EulerJob),
            Command::Transfer => schemars::schema_for!(TransferJob),
            Command::TwistedTransfer => schemars::schema_for!(TwistedTransferJob),
            Command::Reidemeister => schemars::schema_for!(ReidemeisterJob),
            Command::NervePi0 => schemars::schema_for!(NerveJob),
            Command::MoritaCheck => schemars::schema_for!(MoritaJob),
        };
        serde_json::to_value(s).expect("schema serializes")
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}
