use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use precur::arith::{parse_rational, Rational};
use precur_cli::run::{self, Options, RunError, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "precur", version, about = "Decide algebraicity of solutions of P-recursive sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Number of sequence terms to unroll for probes and guessing.
    #[arg(long, default_value_t = 200)]
    depth: usize,
    /// Denominator primes above this bound mark a term as bad.
    #[arg(long, default_value_t = 50)]
    prime_bound: u64,
    #[arg(long, default_value_t = 4)]
    guess_deg_x: usize,
    #[arg(long, default_value_t = 4)]
    guess_deg_y: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn options(&self, probe: bool) -> Options {
        Options { depth: self.depth, prime_bound: self.prime_bound, guess_deg_x: self.guess_deg_x, guess_deg_y: self.guess_deg_y, probe }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a recurrence document.
    Decide {
        file: PathBuf,
        /// Cross-check the verdict with the denominator probe and annihilator guessing.
        #[arg(long)]
        probe: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide the integral of x^n (1 + a1 x + a2 x^2)^q.
    Integral {
        n: usize,
        #[arg(value_parser = exact, allow_hyphen_values = true)]
        a1: Rational,
        #[arg(value_parser = exact, allow_hyphen_values = true)]
        a2: Rational,
        #[arg(value_parser = exact, allow_hyphen_values = true)]
        q: Rational,
        #[arg(long)]
        json: bool,
    },
    /// Denominator report for the solution(s) of a document.
    Probe {
        file: PathBuf,
        /// Comma-separated initial values; defaults to the document's or the basis vectors.
        #[arg(long, value_delimiter = ',', value_parser = exact, allow_hyphen_values = true)]
        init: Option<Vec<Rational>>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an annihilating polynomial of the generating function.
    Guess {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = exact, allow_hyphen_values = true)]
        init: Option<Vec<Rational>>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide every document in a directory.
    Corpus {
        dir: PathBuf,
        /// Directory for per-file JSON reports and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        probe: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn exact(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not an exact rational (use p or p/q)"))
}

fn fail(e: RunError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn print_decide(rep: &precur_cli::report::VerdictReport) {
    let label = rep.input.label.as_deref().unwrap_or("recurrence");
    println!("{label}: {}", rep.verdict_label());
    if let Some(c) = &rep.class {
        if !c.in_restricted_class {
            println!("  outside the restricted class: {}", c.reasons.join(", "));
        }
    }
    if let Some([a, b]) = &rep.canonical_pair {
        println!("  algebraic line through ({a}, {b})");
    }
    if let Some([a, b]) = &rep.raw_pair {
        println!("  raw pair ({a}, {b})");
    }
    if let Some(cert) = &rep.certificates {
        println!("  branch {}, q = {}", cert.branch, cert.q);
        for (name, i) in [("I1", &cert.i1), ("I2", &cert.i2)] {
            if let Some(i) = i {
                println!("  {name} = int x^{} g^q: {} ({})", i.n, i.verdict, i.rule);
            }
        }
        if let Some(m) = &cert.combination {
            println!("  M = [[{}, {}], [{}, {}]], det = {} ({})", m.matrix[0][0], m.matrix[0][1], m.matrix[1][0], m.matrix[1][1], m.det, m.source);
        }
    }
    if let Some(p) = &rep.probes {
        for e in &p.entries {
            println!(
                "  probe ({}): expected {:?}, almost integral {}, annihilator {}",
                e.initial.join(", "),
                e.expected,
                e.looks_almost_integral,
                e.annihilator.as_deref().unwrap_or("none")
            );
        }
        for d in &p.disagreements {
            println!("  DISAGREEMENT {d}");
        }
        for d in &p.inconclusive {
            println!("  inconclusive {d}");
        }
    }
}

fn print_integral(rep: &precur_cli::report::IntegralReport) {
    println!("int x^{} (1 + {} x + {} x^2)^({}) dx: {} ({})", rep.n, rep.a1, rep.a2, rep.q, rep.verdict, rep.rule);
    if let Some(c) = &rep.certificate {
        println!("  c = {}, c~ = {}, C = [{}]", c.c, c.c_tilde, c.poly.join(", "));
    }
    if let Some(l) = &rep.residues {
        println!("  alpha = {}, beta = {}", l.alpha, l.beta);
        println!("  residues: {} (ln(1 + alpha x)), {} (ln(1 + beta x))", l.residue_alpha, l.residue_beta);
    }
}

fn dispatch(cmd: Command) -> i32 {
    match cmd {
        Command::Decide { file, probe, common } => {
            let doc = match run::read_document(&file) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            match run::cmd_decide(&doc, &common.options(probe)) {
                Ok(rep) => {
                    if common.json {
                        print!("{}", run::to_json(&rep));
                    } else {
                        print_decide(&rep);
                    }
                    run::exit_code(&rep)
                }
                Err(e) => fail(e),
            }
        }
        Command::Integral { n, a1, a2, q, json } => match run::cmd_integral(n, a1, a2, q) {
            Ok(rep) => {
                if json {
                    print!("{}", run::to_json(&rep));
                } else {
                    print_integral(&rep);
                }
                run::EXIT_OK
            }
            Err(e) => fail(e),
        },
        Command::Probe { file, init, common } => {
            let out = run::read_document(&file).and_then(|d| run::cmd_probe(&d, init.as_deref(), &common.options(false)));
            match out {
                Ok(reports) => {
                    if common.json {
                        print!("{}", run::to_json(&reports));
                    } else {
                        for p in reports {
                            let bad = p.first_bad_index.map_or("none".to_string(), |i| i.to_string());
                            println!(
                                "({}): depth {}, max prime {}, first index with prime > {}: {bad}",
                                p.initial.join(", "),
                                p.depth,
                                p.max_prime_seen,
                                p.prime_threshold
                            );
                        }
                    }
                    run::EXIT_OK
                }
                Err(e) => fail(e),
            }
        }
        Command::Guess { file, init, common } => {
            let out = run::read_document(&file).and_then(|d| run::cmd_guess(&d, init.as_deref(), &common.options(false)));
            match out {
                Ok(guesses) => {
                    if common.json {
                        print!("{}", run::to_json(&guesses));
                    } else {
                        for g in guesses {
                            let poly = g.polynomial.as_deref().unwrap_or("none found");
                            println!("({}): {poly}", g.initial.join(", "));
                        }
                    }
                    run::EXIT_OK
                }
                Err(e) => fail(e),
            }
        }
        Command::Corpus { dir, out, probe, jobs, common } => {
            let summary = match run::cmd_corpus(&dir, &common.options(probe), jobs) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            if let Some(out) = out {
                if let Err(e) = run::write_corpus_reports(&summary, &out) {
                    return fail(e);
                }
            }
            if common.json {
                let slim = run::CorpusSummary {
                    entries: summary.entries.iter().map(|e| run::CorpusEntry { report: None, ..e.clone() }).collect(),
                    ..summary.clone()
                };
                print!("{}", run::to_json(&slim));
            } else {
                print!("{}", summary.table());
            }
            summary.exit_code()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    ExitCode::from(dispatch(cli.command) as u8)
}
