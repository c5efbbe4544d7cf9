use clap::Parser;
use fide_cli::{run, Args, EXIT_USAGE};

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            // help/version are not usage errors
            if err.use_stderr() {
                eprint!("{err}");
                std::process::exit(EXIT_USAGE);
            }
            print!("{err}");
            std::process::exit(0);
        }
    };
    let mut stdout = std::io::stdout().lock();
    std::process::exit(run(args, &mut stdout));
}
