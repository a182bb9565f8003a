use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sghom::bounds;
use sghom::embed;
use sghom::error::Error;
use sghom::graph::switching_equivalent;
use sghom::hom;
use sghom::io;
use sghom::target;

#[derive(Parser)]
#[command(name = "sghom", version, about = "Signed graph homomorphism toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a verified complete signed target by seeded retry
    GenTarget {
        #[arg(long)]
        t: u32,
        /// Target order; defaults to t(t-1)*2^t
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = target::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write a certificate file
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check property P_{t-1} of a complete signed graph
    VerifyProperty {
        #[arg(long)]
        t: u32,
        file: PathBuf,
        /// Scan everything and report the exact minimum margin
        #[arg(long)]
        full: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Search for a signed homomorphism G -> H
    Hom {
        source: PathBuf,
        targetfile: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a homomorphism file against its graphs
    VerifyHom {
        source: PathBuf,
        targetfile: PathBuf,
        hom: PathBuf,
    },
    /// Decide switching equivalence of two signed graphs
    SwitchEquiv { a: PathBuf, b: PathBuf },
    /// Exact signed chromatic number
    ChiS {
        file: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Exact 2-edge-colored chromatic number
    #[command(name = "chi-2")]
    Chi2 {
        file: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Greedily embed a bounded-degree graph into a verified target
    Embed {
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct a target for the graph's max degree and embed into it
    Pipeline {
        source: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = target::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
    },
    /// Chromatic bounds for the bounded-degree family
    Bounds {
        #[arg(long)]
        delta: u32,
    },
    /// Evaluate the bad-event probability bound chain
    ProbBound {
        #[arg(long)]
        t: u32,
        /// Order c; defaults to t(t-1)*2^t
        #[arg(long)]
        order: Option<u64>,
    },
    /// Empirical property success rate over seeded random targets
    McRate {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Generate a connected bounded-degree random signed graph
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        regular: bool,
        #[arg(long, default_value_t = 0.5)]
        neg_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Regenerate a certified target and re-verify it
    VerifyCert { cert: PathBuf },
}

fn read_graph(path: &PathBuf) -> Result<sghom::SignedGraph, Error> {
    io::parse_signed_graph(&std::fs::read_to_string(path)?)
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::GenTarget {
            t,
            order,
            seed,
            max_attempts,
            output,
            cert,
        } => {
            let (g, certificate) = target::construct_target(t, order, seed, max_attempts)?;
            std::fs::write(&output, io::emit_signed_graph(&g))?;
            if let Some(cert_path) = &cert {
                std::fs::write(cert_path, io::emit_certificate(&certificate))?;
            }
            println!(
                "seed {}\norder {}\nattempts {}\ndigest {}",
                certificate.seed, certificate.order, certificate.attempts, certificate.digest
            );
            Ok(0)
        }
        Command::VerifyProperty {
            t,
            file,
            full,
            parallel,
        } => {
            let g = read_graph(&file)?;
            let report = if parallel {
                target::has_property_p_parallel(&g, t)?
            } else if full {
                target::has_property_p_full(&g, t)?
            } else {
                target::has_property_p(&g, t)?
            };
            if report.passed {
                println!("passed t={t} min_margin {}", report.min_margin.unwrap());
                Ok(0)
            } else {
                let (tuple, signs) = report.witness.unwrap();
                let pattern: String = signs.iter().map(|s| s.as_char()).collect();
                println!("failed t={t} witness J=({tuple:?}) a=({pattern})");
                Ok(1)
            }
        }
        Command::Hom {
            source,
            targetfile,
            output,
        } => {
            let g = read_graph(&source)?;
            let h = read_graph(&targetfile)?;
            match hom::find_signed_hom(&g, &h) {
                Some(found) => {
                    write_or_print(&output, &io::emit_hom(&found))?;
                    Ok(0)
                }
                None => {
                    println!("no homomorphism");
                    Ok(1)
                }
            }
        }
        Command::VerifyHom {
            source,
            targetfile,
            hom: hom_path,
        } => {
            let g = read_graph(&source)?;
            let h = read_graph(&targetfile)?;
            let mapping = io::parse_hom(&std::fs::read_to_string(&hom_path)?)?;
            if hom::check_signed_hom(&g, &h, &mapping)? {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid");
                Ok(1)
            }
        }
        Command::SwitchEquiv { a, b } => {
            let ga = read_graph(&a)?;
            let gb = read_graph(&b)?;
            match switching_equivalent(&ga, &gb)? {
                Some(s) => {
                    println!("equivalent switch-set {:?}", s.members());
                    Ok(0)
                }
                None => {
                    println!("not equivalent");
                    Ok(1)
                }
            }
        }
        Command::ChiS { file, max_order } => {
            let g = read_graph(&file)?;
            let max = max_order.unwrap_or_else(|| g.n().max(1));
            match hom::signed_chromatic_number(&g, max) {
                Ok(w) => {
                    println!("chi-s {}", w.value);
                    print!("{}", io::emit_signed_graph(&w.target));
                    print!("{}", io::emit_hom(&w.hom));
                    Ok(0)
                }
                Err(Error::MaxOrderExceeded(k)) => {
                    println!("chi-s exceeds {k}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Chi2 { file, max_order } => {
            let g = read_graph(&file)?;
            let max = max_order.unwrap_or_else(|| g.n().max(1));
            match hom::two_ec_chromatic_number(&g, max) {
                Ok(w) => {
                    println!("chi-2 {}", w.value);
                    print!("{}", io::emit_signed_graph(&w.target));
                    print!("{}", io::emit_hom(&w.hom));
                    Ok(0)
                }
                Err(Error::MaxOrderExceeded(k)) => {
                    println!("chi-2 exceeds {k}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Embed {
            source,
            target: target_path,
            t,
            output,
        } => {
            let g = read_graph(&source)?;
            let c = read_graph(&target_path)?;
            let found = embed::greedy_embed(&g, &c, t)?;
            write_or_print(&output, &io::emit_hom(&found))?;
            Ok(0)
        }
        Command::Pipeline {
            source,
            seed,
            max_attempts,
        } => {
            let g = read_graph(&source)?;
            let out = embed::end_to_end(&g, seed, max_attempts)?;
            println!(
                "seed {}\ntarget-order {}\naugmented {}\nattempts {}\ndigest {}",
                seed,
                out.target.n(),
                out.augmented,
                out.certificate.attempts,
                out.certificate.digest
            );
            print!("{}", io::emit_hom(&out.hom));
            Ok(0)
        }
        Command::Bounds { delta } => {
            let (lower, upper) = bounds::theorem_bounds(delta)?;
            println!("lower {lower:.10}\nupper {upper}");
            Ok(0)
        }
        Command::ProbBound { t, order } => {
            let c = match order {
                Some(c) => c,
                None => target::lemma1_order(t)?,
            };
            let b = bounds::bad_event_bound(t, c);
            for j in 0..t {
                println!(
                    "f({j}) {:.12e} ln {:.12}",
                    bounds::bound_summand_f(j, t, c),
                    bounds::bound_summand_ln_f(j, t, c)
                );
            }
            println!("sum {:.12e} ln {:.12}", b.sum, b.ln_sum);
            println!("closed-form {:.12e} ln {:.12}", b.closed_form, b.ln_closed_form);
            println!("below-one {}", b.below_one);
            Ok(0)
        }
        Command::McRate {
            t,
            order,
            trials,
            seed,
            parallel,
        } => {
            let rate = target::monte_carlo_property_rate(t, order, trials, seed, parallel)?;
            println!("seed {seed}\nrate {rate}");
            Ok(0)
        }
        Command::RandomGraph {
            n,
            delta,
            regular,
            neg_prob,
            seed,
            output,
        } => {
            let g = io::random_bounded_degree_graph(n, delta, regular, neg_prob, seed)?;
            let text = format!("# seed {seed}\n{}", io::emit_signed_graph(&g));
            match &output {
                Some(p) => {
                    std::fs::write(p, &text)?;
                    println!("seed {seed}");
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::VerifyCert { cert } => {
            let certificate = io::parse_certificate(&std::fs::read_to_string(&cert)?)?;
            let (_, report) = target::verify_certificate(&certificate)?;
            if report.passed {
                println!("valid");
                Ok(0)
            } else {
                println!("property check failed");
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
