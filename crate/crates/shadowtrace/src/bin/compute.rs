use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use shadowtrace::cli::{render, run, Command};

#[derive(Parser, Debug)]
#[command(name = "compute", version, about = "Shadows, traces and Reidemeister traces over group rings")]
struct Args {
    /// the computation to run
    #[arg(value_enum)]
    command: Option<Command>,
    /// job document (JSON)
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
    /// also run the independent brute-force checks
    #[arg(long)]
    oracle: bool,
    /// write the result here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
    /// print the input schema of a command and exit
    #[arg(long, value_name = "COMMAND", value_enum)]
    schema: Option<Command>,
}

fn emit(text: &str, out: Option<&str>) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn schema_error(msg: String) -> (String, i32) {
    (render(&json!({ "error": { "code": "SchemaError", "message": msg } })), 2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(c) = args.schema {
        print!("{}", render(&c.schema()));
        return ExitCode::SUCCESS;
    }
    let (text, code) = match (args.command, &args.input) {
        (Some(cmd), Some(path)) => match fs::read_to_string(path) {
            Ok(input) => {
                let o = run(cmd, &input, args.oracle);
                (render(&o.document), o.exit)
            }
            Err(e) => schema_error(format!("cannot read {path}: {e}")),
        },
        _ => schema_error("usage: compute <command> --in <file> [--oracle] [--out <file>]".into()),
    };
    if let Err(e) = emit(&text, args.out.as_deref()) {
        eprintln!("compute: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
