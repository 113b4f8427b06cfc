//! Command-line front end. Exit codes: 0 success, 1 domain violation,
//! 2 malformed input, 3 internal inconsistency.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stringmod::algebra::{AlgebraFile, StringAlgebra};
use stringmod::decompose::{certify, decompose, krs_check, DecompositionReport};
use stringmod::exactla::{Subspace, Vector};
use stringmod::functors::{covering_search, plus_minus, refined};
use stringmod::poly::{Poly, FACTOR_CAP_ENV};
use stringmod::repmod::{
    band_module, graded_ingest, matrix_literal, parse_entry, scramble, string_module, BandCoefficient, FieldLiteral,
    GradedData, Representation,
};
use stringmod::words::{enumerate_words, props, Word};
use stringmod::{Error, Result};

#[derive(Parser)]
#[command(name = "stringmod", version, about = "String and band modules over string algebras")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice (scrambling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest degree handed to recombination when factoring over Q.
    #[arg(long, global = true)]
    factor_cap: Option<usize>,
    /// Print progress notes on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a string algebra and print its sign map and primitive cycles.
    Validate { algebra: PathBuf },
    /// List canonical finite and primitive periodic words within a budget.
    Words {
        algebra: PathBuf,
        /// Per-vertex budget `v=n`; vertices not named get 0.
        #[arg(long = "budget", value_parser = parse_assignment)]
        budget: Vec<(String, i64)>,
    },
    /// Write the string module of a finite word.
    ModuleString {
        algebra: PathBuf,
        word: String,
        #[command(flatten)]
        field: FieldArg,
        /// Conjugate by a random change of basis drawn from `--seed`.
        #[arg(long)]
        scramble: bool,
    },
    /// Write the band module of a periodic word and `(g, r)`.
    ModuleBand {
        algebra: PathBuf,
        word: String,
        #[command(flatten)]
        field: FieldArg,
        /// Monic irreducible polynomial in `T`, e.g. `T^2+T+2`.
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long)]
        scramble: bool,
    },
    /// Evaluate `C⁺/C⁻` on one word, or the refined functor on two.
    EvalFunctor {
        rep: PathBuf,
        /// `C`, or `B` when `--d` is given.
        word: String,
        #[arg(long)]
        d: Option<String>,
    },
    /// Find a word `C` with `m ∈ C⁺ \ C⁻`.
    Cover {
        rep: PathBuf,
        #[arg(long)]
        vertex: String,
        /// JSON list of entries, e.g. `[1, "1/2"]`.
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
    },
    /// Decompose a representation into string and band modules.
    Decompose {
        rep: PathBuf,
        /// Also build and check an explicit isomorphism.
        #[arg(long)]
        certify: bool,
    },
    /// Check a report against a representation by building the isomorphism.
    Certify { rep: PathBuf, report: PathBuf },
    /// Whether two representations have the same summands.
    KrsCheck { first: PathBuf, second: PathBuf },
    /// Restrict graded k[x,y]/(xy) data to a window of degrees.
    Graded {
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
        #[arg(long)]
        decompose: bool,
    },
    /// Eventually-inverse, vertex-finite and finiteness predicates of a word.
    WordProps {
        algebra: PathBuf,
        word: String,
        /// Arrow degrees `a=n`, needed to decide vertex-finiteness.
        #[arg(long = "grading", value_parser = parse_assignment)]
        grading: Vec<(String, i64)>,
    },
}

#[derive(Args)]
struct FieldArg {
    /// `Q` or `F<p>`.
    #[arg(long, default_value = "Q")]
    field: String,
}

fn parse_assignment(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=N, got {s:?}"))?;
    let n = v.trim().parse().map_err(|_| format!("not an integer: {v:?}"))?;
    Ok((k.trim().to_string(), n))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<StringAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    StringAlgebra::from_file(&file)
}

fn load_rep(path: &Path) -> Result<Representation> {
    Representation::from_json(&read(path)?, path.parent())
}

fn parse_field(s: &str) -> Result<stringmod::exactla::FieldSpec> {
    FieldLiteral::Name(s.to_string()).to_spec()
}

fn subspace_json(s: &Subspace) -> Value {
    let rows: Vec<Value> = s
        .basis()
        .iter()
        .map(|v| Value::from(v.iter().map(|x| literal(&x.to_string())).collect::<Vec<_>>()))
        .collect();
    json!({ "dim": s.dim(), "basis": rows })
}

fn literal(s: &str) -> Value {
    s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(s))
}

fn print_subspace(name: &str, s: &Subspace) {
    println!("{name}: dim {}", s.dim());
    for v in s.basis() {
        let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("  [{}]", parts.join(", "));
    }
}

fn print_report(alg: &StringAlgebra, r: &DecompositionReport) {
    if r.is_empty() {
        println!("zero module");
    }
    for s in &r.strings {
        println!("string  {}  x{}", s.word.format(alg), s.mult);
    }
    for b in &r.bands {
        println!("band    {}  ({})^{}  x{}", b.word.format(alg), b.coeff.g, b.coeff.r, b.mult);
    }
    let audit: Vec<String> = alg.vertices().iter().zip(&r.audit).map(|(v, d)| format!("{v}={d}")).collect();
    println!("audit   {}", audit.join(" "));
}

fn certificate_json(m: &Representation, theta: &[stringmod::exactla::Matrix]) -> Value {
    let map: serde_json::Map<String, Value> = m
        .algebra()
        .vertices()
        .iter()
        .zip(theta)
        .map(|(v, t)| (v.clone(), serde_json::to_value(matrix_literal(t)).expect("literal")))
        .collect();
    Value::Object(map)
}

fn run(cli: Cli) -> Result<()> {
    let verbose = cli.verbose;
    let note = |msg: String| {
        if verbose {
            eprintln!("{msg}");
        }
    };
    match cli.command {
        Command::Validate { algebra } => {
            let alg = load_algebra(&algebra)?;
            let cycles: Vec<String> = alg
                .primitive_cycles()
                .iter()
                .map(|c| c.iter().map(|&a| alg.arrows()[a].name.as_str()).collect::<Vec<_>>().join(" "))
                .collect();
            if cli.json {
                println!("{}", json!({ "ok": true, "signs": alg.sign_map(), "cycles": cycles }));
            } else {
                println!("ok: {alg}");
                for (l, s) in alg.sign_map() {
                    println!("sign {l} = {s:+}");
                }
                for c in cycles {
                    println!("cycle {c}");
                }
            }
        }
        Command::Words { algebra, budget } => {
            let alg = load_algebra(&algebra)?;
            let mut b = vec![0; alg.num_vertices()];
            for (v, n) in budget {
                let i = alg.vertex_index(&v).ok_or_else(|| Error::Malformed(format!("unknown vertex {v:?}")))?;
                b[i] = usize::try_from(n).map_err(|_| Error::Malformed("budgets are nonnegative".into()))?;
            }
            let w = enumerate_words(&alg, &b);
            let fmt = |ws: &[Word]| ws.iter().map(|c| c.format(&alg)).collect::<Vec<_>>();
            if cli.json {
                println!("{}", json!({ "finite": fmt(&w.finite), "periodic": fmt(&w.periodic) }));
            } else {
                for c in fmt(&w.finite).into_iter().chain(fmt(&w.periodic)) {
                    println!("{c}");
                }
            }
        }
        Command::ModuleString {
            algebra,
            word,
            field,
            scramble: mix,
        } => {
            let alg = load_algebra(&algebra)?;
            let c = Word::parse(&alg, &word)?;
            let mut m = string_module(&alg, parse_field(&field.field)?, &c)?.rep;
            if mix {
                eprintln!("seed: {}", cli.seed);
                m = scramble(&m, cli.seed).rep;
            }
            println!("{}", m.to_json());
        }
        Command::ModuleBand {
            algebra,
            word,
            field,
            poly,
            power,
            scramble: mix,
        } => {
            let alg = load_algebra(&algebra)?;
            let f = parse_field(&field.field)?;
            let e = Word::parse(&alg, &word)?;
            let coeff = BandCoefficient::new(Poly::parse(f, &poly)?, power)?;
            let mut m = band_module(&alg, &e, &coeff)?.rep;
            if mix {
                eprintln!("seed: {}", cli.seed);
                m = scramble(&m, cli.seed).rep;
            }
            println!("{}", m.to_json());
        }
        Command::EvalFunctor { rep, word, d } => {
            let m = load_rep(&rep)?;
            let alg = m.algebra();
            let first = Word::parse(alg, &word)?;
            match d {
                None => {
                    let p = plus_minus(&m, &first)?;
                    if cli.json {
                        let out = json!({ "word": first.format(alg), "plus": subspace_json(&p.plus), "minus": subspace_json(&p.minus) });
                        println!("{out}");
                    } else {
                        println!("word {}", first.format(alg));
                        print_subspace("plus", &p.plus);
                        print_subspace("minus", &p.minus);
                    }
                }
                Some(d) => {
                    let d = Word::parse(alg, &d)?;
                    let r = refined(&m, &first, &d)?;
                    if cli.json {
                        let out = json!({
                            "b": first.format(alg),
                            "d": d.format(alg),
                            "dim": r.dim(),
                            "plus": subspace_json(&r.plus),
                            "minus": subspace_json(&r.minus),
                        });
                        println!("{out}");
                    } else {
                        println!("refined dimension {}", r.dim());
                        print_subspace("plus", &r.plus);
                        print_subspace("minus", &r.minus);
                    }
                }
            }
        }
        Command::Cover {
            rep,
            vertex,
            vector,
            sign,
        } => {
            let m = load_rep(&rep)?;
            let alg = m.algebra();
            let v = alg
                .vertex_index(&vertex)
                .ok_or_else(|| Error::Malformed(format!("unknown vertex {vertex:?}")))?;
            if sign != 1 && sign != -1 {
                return Err(Error::Malformed("sign must be 1 or -1".into()));
            }
            let entries: Vec<Value> =
                serde_json::from_str(&vector).map_err(|e| Error::Malformed(format!("vector: {e}")))?;
            let x: Vector = entries.iter().map(|e| parse_entry(m.field(), e)).collect::<Result<_>>()?;
            if x.len() != m.dim(v) {
                return Err(Error::Dimension(format!("vector has {} entries, e_{vertex}M has dimension {}", x.len(), m.dim(v))));
            }
            let c = covering_search(&m, v, &x, sign)?;
            if cli.json {
                println!("{}", json!({ "word": c.format(alg) }));
            } else {
                println!("{}", c.format(alg));
            }
        }
        Command::Decompose { rep, certify: check } => {
            let m = load_rep(&rep)?;
            note(format!("decomposing a module of dimension {:?}", m.dims()));
            let r = decompose(&m)?;
            let cert = if check { Some(certify(&m, &r)?) } else { None };
            let alg = m.algebra();
            match (cli.json, cert) {
                (true, None) => println!("{}", r.to_json(alg)),
                (true, Some(c)) => {
                    let report: Value = serde_json::from_str(&r.to_json(alg)).expect("report JSON");
                    println!("{}", json!({ "report": report, "certificate": certificate_json(&m, &c.theta) }));
                }
                (false, cert) => {
                    print_report(alg, &r);
                    if cert.is_some() {
                        println!("certified: explicit isomorphism checked");
                    }
                }
            }
        }
        Command::Certify { rep, report } => {
            let m = load_rep(&rep)?;
            let r = DecompositionReport::from_json(m.algebra(), m.field(), &read(&report)?)?;
            let c = certify(&m, &r)?;
            if cli.json {
                println!("{}", certificate_json(&m, &c.theta));
            } else {
                println!("certified");
                for (v, t) in m.algebra().vertices().iter().zip(&c.theta) {
                    println!("theta[{v}] = {t}");
                }
            }
        }
        Command::KrsCheck { first, second } => {
            let same = krs_check(&load_rep(&first)?, &load_rep(&second)?)?;
            if cli.json {
                println!("{}", json!({ "isomorphic": same }));
            } else {
                println!("{}", if same { "same summands" } else { "different summands" });
            }
        }
        Command::Graded {
            input,
            window,
            decompose: dec,
        } => {
            let data: GradedData =
                serde_json::from_str(&read(&input)?).map_err(|e| Error::Malformed(format!("graded data: {e}")))?;
            let w = graded_ingest(&data, window.map(|w| (w[0], w[1])))?;
            for msg in &w.warnings {
                eprintln!("warning: {msg}");
            }
            if !dec {
                println!("{}", w.rep.to_json());
            } else {
                let r = decompose(&w.rep)?;
                if cli.json {
                    println!("{}", r.to_json(w.rep.algebra()));
                } else {
                    print_report(w.rep.algebra(), &r);
                }
            }
        }
        Command::WordProps { algebra, word, grading } => {
            let alg = load_algebra(&algebra)?;
            let w = Word::parse(&alg, &word)?;
            let degrees = if grading.is_empty() {
                None
            } else {
                let mut g = vec![0; alg.num_arrows()];
                for (a, n) in grading {
                    let i = alg.arrow_index(&a).ok_or_else(|| Error::Malformed(format!("unknown arrow {a:?}")))?;
                    g[i] = n;
                }
                Some(g)
            };
            let p = props(&w, degrees.as_deref());
            if cli.json {
                println!("{}", serde_json::to_string(&p).expect("props serialise"));
            } else {
                println!("eventually inverse: {} (inverse side {})", p.eventually_inverse, p.inverse_eventually_inverse);
                println!("vertex-finite: {} (inverse side {})", p.vertex_finite, p.inverse_vertex_finite);
                println!("finitely generated: {}", p.finitely_generated);
                println!("finitely controlled: {}", p.finitely_controlled);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.factor_cap {
        std::env::set_var(FACTOR_CAP_ENV, cap.to_string());
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
