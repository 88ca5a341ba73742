use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polykrull::ballcalc::{orbit_contains, reduce_family, Removal};
use polykrull::exactnum::{primes_up_to, AbelianGroupInv, Prime};
use polykrull::monoval::{mono_val, order_compare, DvrSpec};
use polykrull::polyarith::Poly;
use polykrull::ringspec::{
    class_group, classify, construct_with_class_group, member, nonunitary_prime_is_maximal, probe_finite_character,
    spectrum_summary, unitary_prime_is_maximal, Classification, KrullVerdict, RingSpec,
};
use polykrull::Error;

#[derive(Parser)]
#[command(name = "polykrull", version, about = "Valuation-theoretic queries on rings between Z[X] and Q[X]")]
struct Cli {
    /// Emit a JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a polynomial under one monomial valuation.
    Val {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long)]
        poly: String,
    },
    /// Order between the polynomial rings of two specs.
    Compare {
        #[command(flatten)]
        specs: SpecArgs,
    },
    /// Whether the first ball orbit contains the second.
    Contains {
        #[command(flatten)]
        specs: SpecArgs,
    },
    /// Irredundant subfamily of the given specs at one prime.
    Reduce {
        #[command(flatten)]
        specs: SpecArgs,
    },
    /// Membership of a polynomial in a ring.
    Member {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        poly: String,
    },
    /// Krull, Dedekind, UFD and purity flags with the class group.
    Classify {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Divisor class group in invariant-factor form.
    Clgroup {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Maximality of a height-one prime: `--p P --index J` for a unitary
    /// prime, `--poly Q` for the non-unitary prime q·Q[X] ∩ R.
    PrimeMax {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Primes up to the bound at which a polynomial lies in a center ideal.
    Probe {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// A ring with the given class group; prints its spec file.
    Construct {
        /// Invariant factors then one 0 per copy of Z, e.g. "2,6,0,0".
        #[arg(long)]
        group: String,
        /// Comma list of primes to draw from; defaults to primes below 100.
        #[arg(long)]
        pool: Option<String>,
    },
    /// Height-one primes of the irredundant representation.
    Spectrum {
        #[command(flatten)]
        ring: RingArg,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    p: u64,
    /// Repeat once per spec: rat:A, alg:POLY or trunc:a=A,N=N[,e=E].
    #[arg(long, required = true)]
    center: Vec<String>,
    /// Repeat once per spec, in the same order as --center.
    #[arg(long, required = true)]
    radius: Vec<String>,
}

#[derive(Args)]
struct RingArg {
    /// Ring spec JSON file; `-` or absent reads standard input.
    #[arg(long)]
    ring: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

/// Successful command output: the JSON payload and its plain-text form.
struct Outcome {
    inputs: Value,
    result: Value,
    text: String,
    assumptions: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (code, report, text) = match run(cli.command) {
        Ok(o) => (0, report(name, o.inputs, o.result, o.assumptions, None), o.text),
        Err(Failure::Usage(msg)) => {
            let err = json!({"name": "UsageError", "message": msg});
            (2, report(name, Value::Null, Value::Null, vec![], Some(err)), format!("usage error: {msg}"))
        }
        Err(Failure::Domain(e)) => {
            let err = json!({"name": e.name(), "message": e.to_string()});
            (3, report(name, Value::Null, Value::Null, vec![], Some(err)), format!("{}: {e}", e.name()))
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if code == 0 {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(code)
}

fn report(command: &str, inputs: Value, result: Value, assumptions: Vec<String>, error: Option<Value>) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "assumptions": assumptions,
        "status": if error.is_none() { "ok" } else { "error" },
        "error": error,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Val { .. } => "val",
        Command::Compare { .. } => "compare",
        Command::Contains { .. } => "contains",
        Command::Reduce { .. } => "reduce",
        Command::Member { .. } => "member",
        Command::Classify { .. } => "classify",
        Command::Clgroup { .. } => "clgroup",
        Command::PrimeMax { .. } => "prime-max",
        Command::Probe { .. } => "probe",
        Command::Construct { .. } => "construct",
        Command::Spectrum { .. } => "spectrum",
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Val { specs, poly } => {
            let [spec] = parse_specs::<1>(&specs)?;
            let f = parse_poly(&poly)?;
            let value = mono_val(&spec, &f)?;
            let inputs = json!({"spec": spec.to_string(), "poly": f.to_string()});
            Ok(outcome(inputs, json!(value.to_string()), value.to_string()))
        }
        Command::Compare { specs } => {
            let [a, b] = parse_specs::<2>(&specs)?;
            let order = order_compare(&a, &b)?;
            let text = format!("{order:?}");
            Ok(outcome(spec_inputs(&[a, b]), json!(text), text))
        }
        Command::Contains { specs } => {
            let [outer, inner] = parse_specs::<2>(&specs)?;
            let contained = orbit_contains(&outer, &inner)?;
            Ok(outcome(spec_inputs(&[outer, inner]), json!(contained), contained.to_string()))
        }
        Command::Reduce { specs } => {
            let family = parse_family(&specs)?;
            let r = reduce_family(&family)?;
            let removed: Vec<Value> = r.removed.iter().map(|(s, why)| removal_json(s, why)).collect();
            let mut text: Vec<String> = r.kept.iter().map(|s| format!("keep {s}")).collect();
            text.extend(r.removed.iter().map(|(s, why)| format!("drop {s}: {}", removal_text(why))));
            let result = json!({
                "kept": r.kept.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "removed": removed,
            });
            Ok(outcome(spec_inputs(&family), result, text.join("\n")))
        }
        Command::Member { ring, poly } => {
            let ring = load_ring(&ring)?;
            let f = parse_poly(&poly)?;
            let m = member(&ring, &f)?;
            let inputs = json!({"ring": ring.to_json_value(), "poly": f.to_string()});
            let result = serde_json::to_value(&m).expect("membership serializes");
            let assumptions = ring.assumptions();
            Ok(Outcome { inputs, result, text: m.member.to_string(), assumptions })
        }
        Command::Classify { ring, bound } => {
            let ring = load_ring(&ring)?;
            let c = classify(&ring, bound)?;
            let inputs = json!({"ring": ring.to_json_value(), "bound": bound});
            let text = classification_text(&c);
            let assumptions = c.assumptions.clone();
            Ok(Outcome { inputs, result: classification_json(&c), text, assumptions })
        }
        Command::Clgroup { ring } => {
            let ring = load_ring(&ring)?;
            let g = class_group(&ring)?;
            let inputs = json!({"ring": ring.to_json_value()});
            let result = json!({"group": g.to_string(), "torsion": g.torsion, "free_rank": g.free_rank});
            let assumptions = ring.assumptions();
            Ok(Outcome { inputs, result, text: g.to_string(), assumptions })
        }
        Command::PrimeMax { ring, p, index, poly } => {
            let ring = load_ring(&ring)?;
            match (p, index, poly) {
                (Some(p), Some(j), None) => {
                    let p = parse_prime(p)?;
                    let maximal = unitary_prime_is_maximal(&ring, p, j)?;
                    let inputs = json!({"ring": ring.to_json_value(), "p": p.get(), "index": j});
                    let result = json!({"kind": "unitary", "maximal": maximal});
                    Ok(outcome(inputs, result, maximal.to_string()))
                }
                (None, None, Some(q)) => {
                    let q = parse_poly(&q)?;
                    let r = nonunitary_prime_is_maximal(&ring, &q)?;
                    let inputs = json!({"ring": ring.to_json_value(), "poly": q.to_string()});
                    let text = match &r.witness {
                        Some(w) => format!("{} ({w})", r.maximal),
                        None => r.maximal.to_string(),
                    };
                    let result = json!({"kind": "nonunitary", "maximal": r.maximal, "witness": r.witness});
                    Ok(outcome(inputs, result, text))
                }
                _ => Err(Failure::Usage("prime-max needs either --p with --index, or --poly".into())),
            }
        }
        Command::Probe { ring, poly, bound } => {
            let ring = load_ring(&ring)?;
            let g = parse_poly(&poly)?;
            let r = probe_finite_character(&ring, &g, bound)?;
            let inputs = json!({"ring": ring.to_json_value(), "poly": g.to_string(), "bound": bound});
            let hits: Vec<String> = r.hits.iter().map(ToString::to_string).collect();
            let text = format!("{:?}\nhits ({}): {}", r.verdict, r.density, hits.join(" "));
            let assumptions = vec![format!("only primes up to {bound} were probed")];
            let result = serde_json::to_value(&r).expect("probe report serializes");
            Ok(Outcome { inputs, result, text, assumptions })
        }
        Command::Construct { group, pool } => {
            let g = AbelianGroupInv::parse(&group)?;
            let pool = match pool {
                Some(text) => parse_pool(&text)?,
                None => primes_up_to(100).into_iter().map(|p| Prime::new(p).expect("prime")).collect(),
            };
            let ring = construct_with_class_group(&g, &pool)?;
            let inputs = json!({"group": g.to_string(), "pool": pool.iter().map(|p| p.get()).collect::<Vec<_>>()});
            Ok(outcome(inputs, json!({"ring": ring.to_json_value()}), ring.to_json()))
        }
        Command::Spectrum { ring } => {
            let ring = load_ring(&ring)?;
            let s = spectrum_summary(&ring)?;
            let mut lines: Vec<String> = s
                .unitary
                .iter()
                .map(|u| format!("({}, j={}) {} center {} maximal={}", u.p, u.j, u.spec, u.center_ideal, u.maximal))
                .collect();
            lines.push(format!("non-unitary: {}", s.nonunitary));
            if let Some(d) = &s.default_primes {
                lines.push(format!("default primes: {d}"));
            }
            let inputs = json!({"ring": ring.to_json_value()});
            let assumptions = ring.assumptions();
            let result = serde_json::to_value(&s).expect("spectrum serializes");
            Ok(Outcome { inputs, result, text: lines.join("\n"), assumptions })
        }
    }
}

fn outcome(inputs: Value, result: Value, text: String) -> Outcome {
    Outcome { inputs, result, text, assumptions: vec![] }
}

fn parse_prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(Failure::Domain)
}

fn parse_poly(text: &str) -> Result<Poly, Failure> {
    text.parse::<Poly>().map_err(Failure::from)
}

fn parse_pool(text: &str) -> Result<Vec<Prime>, Failure> {
    text.split(',')
        .map(|s| {
            let n = s.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad prime {s:?} in --pool")))?;
            parse_prime(n)
        })
        .collect()
}

fn parse_family(args: &SpecArgs) -> Result<Vec<DvrSpec>, Failure> {
    if args.center.len() != args.radius.len() {
        return Err(Failure::Usage(format!(
            "{} --center values but {} --radius values",
            args.center.len(),
            args.radius.len()
        )));
    }
    let p = parse_prime(args.p)?;
    args.center.iter().zip(&args.radius).map(|(c, r)| Ok(DvrSpec::parse(p, c, r)?)).collect()
}

fn parse_specs<const N: usize>(args: &SpecArgs) -> Result<[DvrSpec; N], Failure> {
    let family = parse_family(args)?;
    let n = family.len();
    family
        .try_into()
        .map_err(|_| Failure::Usage(format!("expected {N} --center/--radius pairs, got {n}")))
}

fn spec_inputs(specs: &[DvrSpec]) -> Value {
    json!({"specs": specs.iter().map(ToString::to_string).collect::<Vec<_>>()})
}

fn load_ring(arg: &RingArg) -> Result<RingSpec, Failure> {
    let text = match arg.ring.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?,
    };
    Ok(RingSpec::from_json(&text)?)
}

fn removal_text(why: &Removal) -> String {
    match why {
        Removal::Duplicate { of } => format!("same orbit as {of}"),
        Removal::Contained { in_spec } => format!("contained in {in_spec}"),
    }
}

fn removal_json(spec: &DvrSpec, why: &Removal) -> Value {
    let mut v = serde_json::to_value(why).expect("removal serializes");
    v["spec"] = json!(spec.to_string());
    v
}

fn flag(x: Option<bool>) -> Value {
    x.map_or(Value::Null, Value::Bool)
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "krull": c.krull,
        "dedekind": flag(c.dedekind),
        "almost_dedekind": flag(c.almost_dedekind),
        "ufd": flag(c.ufd),
        "pure": flag(c.pure),
        "class_group": c.class_group.as_ref().map(ToString::to_string),
        "removed": c.removed.iter().map(|(s, why)| json!({"spec": s, "reason": why})).collect::<Vec<_>>(),
    })
}

fn classification_text(c: &Classification) -> String {
    let show = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
    let krull = match &c.krull {
        KrullVerdict::Yes => "yes".to_string(),
        KrullVerdict::No { witness } => format!("no ({witness})"),
        KrullVerdict::ConditionalYes { bound } => format!("conditional yes (probed to {bound})"),
    };
    let mut lines = vec![
        format!("Krull: {krull}"),
        format!("Dedekind: {}", show(c.dedekind)),
        format!("almost Dedekind: {}", show(c.almost_dedekind)),
        format!("UFD: {}", show(c.ufd)),
        format!("pure: {}", show(c.pure)),
        format!("class group: {}", c.class_group.as_ref().map_or("n/a".to_string(), ToString::to_string)),
    ];
    lines.extend(c.removed.iter().map(|(s, why)| format!("removed {s}: {why}")));
    lines.join("\n")
}
