//! The `grovelab` command line: argument parsing, dispatch and output.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bush::{self, MultiGraph};
use crate::catalan::{self, CatalanObject, DyckPath, Kind, Matching, NcPartition, Target};
use crate::error::{input, Error, Result};
use crate::formal::FormalSum;
use crate::grove;
use crate::immanant::{self, BetaRule, PartialNcMatching};
use crate::network::CactusNetwork;
use crate::straighten::{self, LMonomial, Straightener};
use crate::verify::{self, Report};

#[derive(Parser, Debug)]
#[command(name = "grovelab", version, about = "Grove algebra of planar electrical networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(clap::Args, Debug, Default)]
struct Flags {
    /// Number of boundary vertices (semilength).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Degree or chain length.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Network JSON file.
    #[arg(long, global = true)]
    network: Option<PathBuf>,
    /// Built-in network: y3 or fig3.
    #[arg(long, global = true)]
    builtin: Option<String>,
    /// Noncrossing partition such as "12|3"; repeat for a pair.
    #[arg(long, global = true)]
    partition: Vec<String>,
    /// 3-noncrossing matching such as "15|26|34".
    #[arg(long, global = true)]
    xi: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Exhaustive run instead of sampling.
    #[arg(long, global = true)]
    all: bool,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Catalan objects: dyck, ncm, ncp, matchings, tc, chains.
    Enum { kind: String },
    /// Convert between Dyck paths, noncrossing matchings and partitions.
    Convert {
        value: String,
        #[arg(long)]
        from: Option<ObjectKind>,
        #[arg(long)]
        to: ObjectKind,
    },
    /// Medial pairing of a network.
    Medial,
    /// Dual network as JSON.
    Dual,
    /// All groves with their boundary partitions.
    Groves,
    /// Grove measurement L_σ, or all of them.
    Measure,
    /// α of a network with edge multiplicities.
    Alpha {
        /// Comma-separated multiplicities in edge order; default all 1.
        #[arg(long)]
        mult: Option<String>,
    },
    /// Bush basis value B_ξ(Γ), or every nonzero one.
    Bush,
    /// a_{ξ,(σ,σ′)}, or the whole table for ξ.
    Acoeff,
    /// β(ξ).
    Beta {
        #[arg(long, value_enum, default_value_t = RuleArg::Full)]
        rule: RuleArg,
        /// Render terms in set notation.
        #[arg(long)]
        sets: bool,
    },
    /// F_{τ,T} in Bush coordinates, e.g. "tau=15,23;T=6".
    Immanant { partial: String },
    /// Δ_I, or Δ_I Δ_J over partition pairs; subsets like "1,2,5".
    Delta { subsets: Vec<String> },
    /// Run an identity check.
    Verify { target: VerifyTarget },
    /// Straighten a monomial such as "12|3;1|23" into standard monomials.
    Straighten { monomial: String },
    /// Dimension of the degree-d piece by the product formula and by chains.
    Dims,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectKind {
    Dyck,
    Ncm,
    Ncp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    Full,
    Single,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    Rsk,
    Maxres,
    Confluence,
    Product,
    /// a_coeff against the splitting oracle.
    #[value(name = "lemma46")]
    ACoeff,
    Lift,
    DeltaProduct,
    Plucker,
    Grobner,
    Dims,
}

/// Outcome class of a command, determining the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Counterexample,
    InputError,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Counterexample | Status::InternalError => 1,
            Status::InputError => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Counterexample => "counterexample",
            Status::InputError => "input_error",
            Status::InternalError => "internal_error",
        }
    }
}

/// Result of one invocation: status, text and JSON payloads, diagnostics.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub text: String,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(text: String, payload: Value) -> Self {
        CommandResult { status: Status::Ok, text, payload, diagnostics: Vec::new() }
    }

    fn from_error(e: Error) -> Self {
        let status = match e {
            Error::Input(_) => Status::InputError,
            Error::Internal(_) => Status::InternalError,
        };
        CommandResult { status, text: String::new(), payload: Value::Null, diagnostics: vec![e.to_string()] }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Standard output for the invocation.
    pub fn stdout(&self, as_json: bool) -> String {
        if as_json {
            let v = json!({
                "status": self.status.name(),
                "payload": self.payload,
                "diagnostics": self.diagnostics,
            });
            return format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"));
        }
        if self.text.is_empty() {
            String::new()
        } else {
            format!("{}\n", self.text)
        }
    }
}

/// Parses and runs one command line (program name first).
pub fn run<I, T>(argv: I) -> (CommandResult, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { Status::InputError } else { Status::Ok };
            let text = e.render().to_string();
            let r = if status == Status::Ok {
                CommandResult::ok(text.trim_end().to_string(), Value::Null)
            } else {
                CommandResult { status, text: String::new(), payload: Value::Null, diagnostics: vec![text] }
            };
            return (r, false);
        }
    };
    let as_json = cli.flags.json;
    let r = dispatch(&cli.command, &cli.flags).unwrap_or_else(CommandResult::from_error);
    (r, as_json)
}

/// Entry point used by the binary; returns the exit code.
pub fn main_entry() -> i32 {
    if let Ok(t) = std::env::var("GROVELAB_THREADS") {
        match t.parse::<usize>() {
            Ok(k) if k > 0 => {
                // Fails only if a pool already exists, which is harmless.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("input error: GROVELAB_THREADS must be a positive integer");
                return 2;
            }
        }
    }
    let (r, as_json) = run(std::env::args_os());
    print!("{}", r.stdout(as_json));
    for d in &r.diagnostics {
        eprintln!("{}", d.trim_end());
    }
    r.exit_code()
}

fn need<T: Clone>(x: &Option<T>, flag: &str) -> Result<T> {
    x.clone().ok_or_else(|| Error::Input(format!("--{flag} is required")))
}

fn load_network(f: &Flags) -> Result<CactusNetwork> {
    match (&f.network, &f.builtin) {
        (Some(_), Some(_)) => input("give either --network or --builtin, not both"),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            CactusNetwork::from_json(&text)
        }
        (None, Some(name)) => CactusNetwork::builtin(name),
        (None, None) => input("a network is required (--network FILE or --builtin NAME)"),
    }
}

fn parse_xi(f: &Flags) -> Result<Matching> {
    need(&f.xi, "xi")?.parse()
}

fn parse_subset(s: &str, n: usize) -> Result<Vec<usize>> {
    let nums: Vec<usize> = if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad subset element {t:?}"))))
            .collect::<Result<_>>()?
    } else if 2 * n <= 9 {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Input(format!("bad subset element {c:?}"))))
            .collect::<Result<_>>()?
    } else {
        return input("subsets with labels above 9 must be comma-separated");
    };
    Ok(nums)
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> (String, Value) {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    (v.join("\n"), json!(v))
}

fn dispatch(cmd: &Command, f: &Flags) -> Result<CommandResult> {
    match cmd {
        Command::Enum { kind } => {
            let n = need(&f.n, "n")?;
            let objs = catalan::enumerate(n, Kind::parse(kind, f.d)?)?;
            let (text, v) = lines(&objs);
            Ok(CommandResult::ok(text, json!({"count": objs.len(), "objects": v})))
        }
        Command::Convert { value, from, to } => {
            let obj = match from {
                Some(ObjectKind::Dyck) => CatalanObject::Dyck(value.parse()?),
                Some(ObjectKind::Ncm) => CatalanObject::Matching(value.parse()?),
                Some(ObjectKind::Ncp) => CatalanObject::Partition(value.parse()?),
                None => match value.parse::<DyckPath>() {
                    Ok(p) => CatalanObject::Dyck(p),
                    Err(_) => return input("--from is required unless the value is a Dyck word"),
                },
            };
            let target = match to {
                ObjectKind::Dyck => Target::Dyck,
                ObjectKind::Ncm => Target::Ncm,
                ObjectKind::Ncp => Target::Ncp,
            };
            let out = catalan::convert(&obj, target)?.to_string();
            Ok(CommandResult::ok(out.clone(), json!(out)))
        }
        Command::Medial => {
            let net = load_network(f)?;
            let pairing = net.medial_pairing();
            let payload = json!({
                "pairing": pairing.to_string(),
                "reduced": net.is_reduced(),
                "closed_wires": net.medial_graph().closed_wires(),
            });
            Ok(CommandResult::ok(pairing.to_string(), payload))
        }
        Command::Dual => {
            let d = load_network(f)?.dual().to_json();
            let payload: Value = serde_json::from_str(&d).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(CommandResult::ok(d.trim_end().to_string(), payload))
        }
        Command::Groves => {
            let net = load_network(f)?;
            let ids = net.edge_ids();
            let groves = grove::enumerate_groves(&net)?;
            let rows: Vec<(String, String)> = groves
                .iter()
                .map(|g| {
                    let edges: Vec<&str> = g.edges.iter().map(|&e| ids[e].as_str()).collect();
                    (g.partition.to_string(), if edges.is_empty() { "∅".to_string() } else { edges.join(",") })
                })
                .collect();
            let text = rows.iter().map(|(p, e)| format!("{p}: {e}")).collect::<Vec<_>>().join("\n");
            let payload = json!(rows.iter().map(|(p, e)| json!({"partition": p, "edges": e})).collect::<Vec<_>>());
            Ok(CommandResult::ok(text, payload))
        }
        Command::Measure => {
            let net = load_network(f)?;
            match f.partition.as_slice() {
                [] => {
                    let all = grove::all_measurements(&net)?;
                    let text = all.iter().map(|(s, p)| format!("{s}: {p}")).collect::<Vec<_>>().join("\n");
                    let payload: BTreeMap<String, String> = all.iter().map(|(s, p)| (s.to_string(), p.to_string())).collect();
                    Ok(CommandResult::ok(text, json!(payload)))
                }
                [s] => {
                    let p = grove::grove_measurement(&net, &s.parse()?)?;
                    let mut payload = json!({"partition": s, "polynomial": p.to_string()});
                    if let Some(w) = net.weights() {
                        payload["value"] = json!(p.eval(w)?.to_string());
                    }
                    Ok(CommandResult::ok(p.to_string(), payload))
                }
                _ => input("measure takes at most one --partition"),
            }
        }
        Command::Alpha { mult } => {
            let net = load_network(f)?;
            let h = match mult {
                None => MultiGraph::simple(net),
                Some(m) => {
                    let mult = m
                        .split(',')
                        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Input(format!("bad multiplicity {t:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    MultiGraph::new(net, mult)?
                }
            };
            let a = bush::alpha(&h)?;
            Ok(CommandResult::ok(a.to_string(), formal_json(&a)))
        }
        Command::Bush => {
            let net = load_network(f)?;
            match &f.xi {
                Some(_) => {
                    let p = bush::bush_value(&net, &parse_xi(f)?)?;
                    Ok(CommandResult::ok(p.to_string(), json!(p.to_string())))
                }
                None => {
                    let all = bush::bush_values(&net)?;
                    let text = all.iter().map(|(x, p)| format!("{x}: {p}")).collect::<Vec<_>>().join("\n");
                    let payload: BTreeMap<String, String> = all.iter().map(|(x, p)| (x.to_string(), p.to_string())).collect();
                    Ok(CommandResult::ok(text, json!(payload)))
                }
            }
        }
        Command::Acoeff => {
            let xi = parse_xi(f)?;
            match f.partition.as_slice() {
                [] => {
                    let table = bush::a_table(&xi)?;
                    let text = table.iter().map(|((s, t), c)| format!("{s}, {t}: {c}")).collect::<Vec<_>>().join("\n");
                    let payload: Vec<Value> =
                        table.iter().map(|((s, t), c)| json!({"sigma": s.to_string(), "sigma2": t.to_string(), "a": c})).collect();
                    Ok(CommandResult::ok(text, json!(payload)))
                }
                [s, t] => {
                    let (s, t): (NcPartition, NcPartition) = (s.parse()?, t.parse()?);
                    let a = bush::a_coeff(&xi, &s, &t)?;
                    let oracle = bush::a_coeff_oracle(&xi, &s, &t)?;
                    let payload = json!({"a": a, "oracle": oracle});
                    if a != oracle {
                        return Ok(CommandResult {
                            status: Status::Counterexample,
                            text: a.to_string(),
                            payload,
                            diagnostics: vec![format!("resolution count {a} differs from splitting count {oracle}")],
                        });
                    }
                    Ok(CommandResult::ok(a.to_string(), payload))
                }
                _ => input("acoeff takes either no --partition or exactly two"),
            }
        }
        Command::Beta { rule, sets } => {
            let xi = parse_xi(f)?;
            let rule = match rule {
                RuleArg::Full => BetaRule::Full,
                RuleArg::Single => BetaRule::SingleRepresentative,
            };
            let b = immanant::beta_with(&xi, rule)?;
            let text = if *sets { immanant::set_notation_sum(&b) } else { b.to_string() };
            Ok(CommandResult::ok(text, formal_json(&b)))
        }
        Command::Immanant { partial } => {
            let p: PartialNcMatching = match f.n {
                Some(n) => PartialNcMatching::parse(2 * n, partial)?,
                None => partial.parse()?,
            };
            let n = p.m() / 2;
            let fsum = immanant::f_immanant(&p, n)?;
            Ok(CommandResult::ok(fsum.to_string(), formal_json(&fsum)))
        }
        Command::Delta { subsets } => {
            let n = need(&f.n, "n")?;
            match subsets.as_slice() {
                [i] => {
                    let d = immanant::delta(n, &parse_subset(i, n)?)?;
                    Ok(CommandResult::ok(d.to_string(), formal_json(&d)))
                }
                [i, j] => {
                    let d = immanant::delta_delta(n, &parse_subset(i, n)?, &parse_subset(j, n)?)?;
                    let d = d.map_keys(|(s, t)| PairKey(s.clone(), t.clone()));
                    Ok(CommandResult::ok(d.to_string(), formal_json(&d)))
                }
                _ => input("delta takes one or two subsets"),
            }
        }
        Command::Straighten { monomial } => {
            let parts: Vec<NcPartition> = monomial.split(';').map(|s| s.parse()).collect::<Result<_>>()?;
            let m = LMonomial::from_partitions(&parts)?;
            let n = match (f.n, parts.first()) {
                (Some(n), _) => n,
                (None, Some(p)) => p.n(),
                (None, None) => return input("empty monomial"),
            };
            let s = Straightener::new(n)?.straighten_monomial(&m)?;
            Ok(CommandResult::ok(s.to_string(), formal_json(&s)))
        }
        Command::Dims => {
            let n = need(&f.n, "n")?;
            let d = need(&f.d, "d")?;
            let dim = straighten::dim_formula(n, d)?;
            let chains = straighten::count_standard(n, d);
            let payload = json!({"dim_formula": dim.to_string(), "count_standard": chains});
            if num_bigint::BigUint::from(chains) != dim {
                return Ok(CommandResult {
                    status: Status::Counterexample,
                    text: dim.to_string(),
                    payload,
                    diagnostics: vec![format!("{chains} chains but the product formula gives {dim}")],
                });
            }
            Ok(CommandResult::ok(dim.to_string(), payload))
        }
        Command::Verify { target } => run_verify(*target, f).map(report_result),
    }
}

/// Unordered partition pair rendered as `σ, σ′`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey(NcPartition, NcPartition);

impl std::fmt::Display for PairKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}, {}", self.0, self.1)
    }
}

fn formal_json<K: Ord + Clone + std::fmt::Display>(s: &FormalSum<K>) -> Value {
    let mut terms: Vec<(String, &BigInt)> = s.iter().map(|(k, c)| (k.to_string(), c)).collect();
    terms.sort();
    json!(terms.into_iter().map(|(k, c)| json!({"term": k, "coeff": c.to_string()})).collect::<Vec<_>>())
}

fn report_result(r: Report) -> CommandResult {
    match r.counterexample {
        None => CommandResult::ok(r.summary.clone(), json!({"summary": r.summary})),
        Some(c) => CommandResult {
            status: Status::Counterexample,
            text: format!("counterexample: {c}"),
            payload: json!({"summary": r.summary, "counterexample": c}),
            diagnostics: vec![r.summary],
        },
    }
}

fn run_verify(target: VerifyTarget, f: &Flags) -> Result<Report> {
    let n = |default: usize| f.n.unwrap_or(default);
    match target {
        VerifyTarget::Rsk => verify::rsk(n(5)),
        VerifyTarget::Maxres => verify::maxres(n(4)),
        VerifyTarget::Confluence => {
            let graphs = if f.all { 200 } else { 50 };
            verify::confluence(n(3), f.trials.unwrap_or(100), graphs, 6, f.seed)
        }
        VerifyTarget::Product => {
            if f.network.is_some() || f.builtin.is_some() {
                let net = load_network(f)?;
                let name = f.builtin.clone().unwrap_or_else(|| "network".into());
                verify::product(&[(name.clone(), net)], &name)
            } else if f.all {
                let n = n(3);
                verify::product(&verify::tc_networks(n)?, &format!("all TC_{n}"))
            } else {
                let (n, t) = (n(3), f.trials.unwrap_or(20));
                verify::product(&verify::random_networks(n, t, 5, f.seed), &format!("{t} random networks"))
            }
        }
        VerifyTarget::ACoeff => verify::a_coefficients(n(4)),
        VerifyTarget::Lift => verify::lift(n(3), f.trials.unwrap_or(5), f.seed),
        VerifyTarget::DeltaProduct => {
            let n = n(3);
            let trials = if f.all || (n <= 3 && f.trials.is_none()) { None } else { Some(f.trials.unwrap_or(200)) };
            verify::delta_product(n, trials, f.seed)
        }
        VerifyTarget::Plucker => verify::plucker(n(3), f.trials.unwrap_or(20), f.seed),
        VerifyTarget::Grobner => verify::grobner(n(4), f.trials.unwrap_or(24), f.seed),
        VerifyTarget::Dims => verify::dims(n(5), f.d.unwrap_or(3)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> CommandResult {
        let mut argv = vec!["grovelab"];
        argv.extend_from_slice(args);
        run(argv).0
    }

    #[test]
    fn golden_commands() {
        let r = go(&["measure", "--builtin", "y3", "--partition", "1|2|3"]);
        assert_eq!((r.status, r.text.as_str()), (Status::Ok, "a + b + c"));
        let r = go(&["bush", "--builtin", "y3", "--xi", "15|26|34"]);
        assert_eq!(r.text, "a^2*c + a*b*c + a*c^2");
        let r = go(&["convert", "UUDD", "--to", "ncp"]);
        assert_eq!(r.status, Status::Ok);
        let r = go(&["dims", "--n", "4", "--d", "2"]);
        assert_eq!(r.text, "84");
        let r = go(&["beta", "--xi", "12|34|56", "--rule", "single", "--sets"]);
        assert_eq!(r.text, "(∅,{2,4})+(∅,{2,6})+(∅,{4,6})");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["measure"]).exit_code(), 2);
        assert_eq!(go(&["nonsense"]).exit_code(), 2);
        assert_eq!(go(&["bush", "--builtin", "y3", "--xi", "14|25|36"]).exit_code(), 2);
        assert_eq!(go(&["verify", "dims", "--n", "3", "--d", "2"]).exit_code(), 0);
        assert_eq!(go(&["--help"]).exit_code(), 0);
    }

    #[test]
    fn json_output_is_deterministic() {
        let a = go(&["acoeff", "--xi", "13|24|56", "--json"]).stdout(true);
        let b = go(&["acoeff", "--xi", "13|24|56", "--json"]).stdout(true);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["status"], "ok");
    }
}
