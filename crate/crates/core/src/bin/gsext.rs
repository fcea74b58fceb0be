use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gsext::cli::{run_command, Command, Format, Options, EXIT_INPUT};

/// Gröbner–Shirshov bases and singular extensions of presented algebras.
#[derive(Parser, Debug)]
#[command(name = "gsext", version)]
struct Args {
    command: Command,
    /// Problem file (JSON); `-` reads stdin.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    max_deg: Option<usize>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Output path for `ext-build`.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let opts = Options { format: args.format, max_deg: args.max_deg, max_iter: args.max_iter, output: args.output };
    let (code, out) = run_command(args.command, &text, &opts);
    print!("{out}");
    ExitCode::from(code as u8)
}
