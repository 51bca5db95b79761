use std::process::ExitCode;

use clap::Parser;

use maltcat_cli::{run, Cli, Format, EXIT_MALFORMED};

fn write(path: &std::path::Path, text: &str) -> Result<(), i32> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("error: cannot write `{}`: {e}", path.display());
        EXIT_MALFORMED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            let mut report = outcome.report;
            let mut print_report = true;
            if let Some(doc) = &outcome.document {
                match &cli.out {
                    Some(path) => {
                        if let Err(code) = write(path, doc) {
                            return ExitCode::from(code as u8);
                        }
                        report.outputs.push(path.display().to_string());
                    }
                    None => {
                        print!("{doc}");
                        print_report = false;
                    }
                }
            }
            let rendered = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            if outcome.document.is_none() {
                if let Some(path) = &cli.out {
                    if let Err(code) = write(path, &rendered) {
                        return ExitCode::from(code as u8);
                    }
                }
            }
            if print_report {
                print!("{rendered}");
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
