//! `orbij`: φ tables, reversal classes, Ehrhart identities and verification
//! reports for graphs and totally unimodular matrices.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input or signature error,
//! 3 cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use orbij::geometry::{
    ehrhart_from_independent_sets, ehrhart_from_phi, sigma_restricted_sum, sigma_star_restricted_sum,
    spanning_set_polynomial, verify_cube_decomposition, MultilinearPolynomial, ZonotopeCounter,
};
use orbij::oracle::{audit_table, reversal_closure_classes, table_one_evaluations, SubsetCounts};
use orbij::{
    compatible_representative, default_weights, enumerate_classes, is_acyclic, sigma_representative,
    sigma_star_representative, BijectionTable, Caps, EdgeSet, Error, Graph, Orientation, OrientedMatroid,
    RegularMatroidRep, ReversalKind, Signature, SignatureSide, WeightVector,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "orbij", version, about = "Orientation-subgraph bijections for graphs and regular matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print φ(O) and its specialization tag for every orientation O.
    Table(TableArgs),
    /// Run the verification battery and write a JSON report.
    Verify(VerifyArgs),
    /// Partition the orientations into reversal classes.
    Classes(ClassesArgs),
    /// Compare the independent-set polynomial with the σ-restricted φ sum.
    Ehrhart(EhrhartArgs),
    /// Decide whether the cycle and cocycle signatures are acyclic.
    SignatureCheck(Common),
}

#[derive(Args, Clone)]
#[command(group(ArgGroup::new("input").required(true).args(["graph", "matroid"])))]
struct Common {
    /// Graph JSON: {"vertices": n, "edges": [[tail, head], ...]}.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Matrix JSON: {"matrix": [[...], ...]}, totally unimodular with full row rank.
    #[arg(long, value_name = "FILE")]
    matroid: Option<PathBuf>,
    /// Weights inducing the cycle signature, e.g. "1,-2/3,0".
    #[arg(long, value_name = "a/b,...", allow_hyphen_values = true)]
    cycle_weights: Option<String>,
    /// Weights inducing the cocycle signature.
    #[arg(long, value_name = "a/b,...", allow_hyphen_values = true)]
    cocycle_weights: Option<String>,
    /// Signature JSON with a "side" and either "weights" or "explicit" choices.
    #[arg(long = "signature", value_name = "FILE")]
    signatures: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random points per tiling check.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override a cap, e.g. "tutte-edges=18".
    #[arg(long = "cap", value_name = "NAME=N")]
    caps: Vec<String>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Swap the φ entries of two orientations, given as bit masks.
    #[arg(long, hide = true, value_name = "A,B")]
    corrupt_swap: Option<String>,
}

#[derive(Args)]
struct ClassesArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Kind::CycleCocycle)]
    kind: Kind,
}

#[derive(Args)]
struct EhrhartArgs {
    #[command(flatten)]
    common: Common,
    /// Also count lattice points of this dilate, e.g. "2,1,1" (rank ≤ 3).
    #[arg(long, value_name = "q1,...")]
    dilation: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Cocycle,
    CycleCocycle,
}

impl From<Kind> for ReversalKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cycle => ReversalKind::Cycle,
            Kind::Cocycle => ReversalKind::Cocycle,
            Kind::CycleCocycle => ReversalKind::CycleCocycle,
        }
    }
}

enum Failure {
    Verification(String),
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

type Run<T> = Result<T, Failure>;

struct Instance {
    graph: Option<Graph>,
    matroid: OrientedMatroid,
    caps: Caps,
}

fn parse_caps(items: &[String]) -> Run<Caps> {
    let mut caps = Caps::default();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| input(format!("cap {item:?} is not NAME=N")))?;
        let v: usize = value.trim().parse().map_err(|_| input(format!("cap value {value:?} is not a number")))?;
        if v == 0 {
            return Err(input(format!("cap {name} must be positive")));
        }
        let slot = match name.trim() {
            "circuit-elements" => &mut caps.circuit_elements,
            "tu-size" => &mut caps.tu_size,
            "signature-supports" => &mut caps.signature_supports,
            "zonotope-rank" => &mut caps.zonotope_rank,
            "zonotope-box" => &mut caps.zonotope_box,
            "tutte-edges" => &mut caps.tutte_edges,
            "fm-constraints" => &mut caps.fm_constraints,
            other => return Err(input(format!("unknown cap {other:?}"))),
        };
        *slot = v;
    }
    Ok(caps)
}

fn read(path: &PathBuf) -> Run<String> {
    fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn load(c: &Common) -> Run<Instance> {
    let caps = parse_caps(&c.caps)?;
    if let Some(path) = &c.graph {
        let g = Graph::from_json(&read(path)?)?;
        let matroid = OrientedMatroid::from_graph(&g, &caps)?;
        return Ok(Instance { graph: Some(g), matroid, caps });
    }
    let path = c.matroid.as_ref().expect("clap requires one input");
    let rep = RegularMatroidRep::from_json(&read(path)?, &caps)?;
    let matroid = OrientedMatroid::from_rep(rep, &caps)?;
    Ok(Instance { graph: None, matroid, caps })
}

fn signatures(m: &OrientedMatroid, c: &Common) -> Run<(Signature, Signature)> {
    let (mut cycle, mut cocycle) = (None, None);
    for path in &c.signatures {
        let s = Signature::from_json(m, &read(path)?)?;
        let slot = match s.side() {
            SignatureSide::Circuit => &mut cycle,
            SignatureSide::Cocircuit => &mut cocycle,
        };
        if slot.replace(s).is_some() {
            return Err(input("two signature files for the same side"));
        }
    }
    let (w, w_star) = default_weights(m.element_count());
    let pick = |file: Option<Signature>, weights: &Option<String>, default: WeightVector, side| -> Run<Signature> {
        match (file, weights) {
            (Some(_), Some(_)) => {
                Err(input(format!("both a signature file and weights given for the {} side", side_name(side))))
            }
            (Some(s), None) => Ok(s),
            (None, Some(text)) => Ok(Signature::from_weights(m, &WeightVector::from_str(text)?, side)?),
            (None, None) => Ok(Signature::from_weights(m, &default, side)?),
        }
    };
    Ok((
        pick(cycle, &c.cycle_weights, w, SignatureSide::Circuit)?,
        pick(cocycle, &c.cocycle_weights, w_star, SignatureSide::Cocircuit)?,
    ))
}

fn side_name(side: SignatureSide) -> &'static str {
    match side {
        SignatureSide::Circuit => "cycle",
        SignatureSide::Cocircuit => "cocycle",
    }
}

fn build(inst: &Instance, c: &Common) -> Run<BijectionTable> {
    let (s, t) = signatures(&inst.matroid, c)?;
    BijectionTable::build(&inst.matroid, &s, &t).map_err(Failure::from)
}

fn emit(c: &Common, text: &str) -> Run<()> {
    match &c.out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn bits(o: Orientation) -> String {
    (0..o.len()).map(|e| if o.get(e) { '1' } else { '0' }).collect()
}

fn only_json(c: &Common, what: &str) -> Run<()> {
    if c.format != Format::Json {
        return Err(input(format!("{what} supports only --format json")));
    }
    Ok(())
}

fn cmd_table(a: &TableArgs) -> Run<()> {
    let c = &a.common;
    let inst = load(c)?;
    if c.format == Format::Dot && inst.graph.is_none() {
        return Err(input("DOT output needs a graph input"));
    }
    let table = build(&inst, c)?;
    let n = table.element_count();
    let rows = Orientation::all(n).map(|o| (o, table.phi(o), table.specialization(o).name()));
    let text = match c.format {
        Format::Json => pretty(&Value::Array(
            rows.map(|(o, s, tag)| json!({"orientation": o, "subgraph": s, "tag": tag})).collect(),
        )),
        Format::Csv => {
            let mut out = String::from("orientation,subgraph,tag\n");
            for (o, s, tag) in rows {
                let subgraph: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                writeln!(out, "{},{},{tag}", bits(o), subgraph.join(" ")).unwrap();
            }
            out
        }
        Format::Dot => dot(inst.graph.as_ref().expect("checked above"), rows),
    };
    emit(c, &text)
}

/// One cluster per orientation; arcs of `φ(O)` solid, the rest dashed.
fn dot<'a>(g: &Graph, rows: impl Iterator<Item = (Orientation, EdgeSet, &'a str)>) -> String {
    let mut out = String::from("digraph phi {\n  node [shape=circle, fontsize=10];\n");
    for (k, (o, s, tag)) in rows.enumerate() {
        writeln!(out, "  subgraph cluster_{k} {{\n    label=\"{} {s} {tag}\";", bits(o)).unwrap();
        for v in 0..g.vertex_count() {
            writeln!(out, "    o{k}_v{v} [label=\"{v}\"];").unwrap();
        }
        for (e, &(t, h)) in g.edges().iter().enumerate() {
            let (a, b) = if o.get(e) { (t, h) } else { (h, t) };
            let style = if s.contains(e) { "solid" } else { "dashed" };
            writeln!(out, "    o{k}_v{a} -> o{k}_v{b} [label=\"e{e}\", style={style}];").unwrap();
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

fn cmd_classes(a: &ClassesArgs) -> Run<()> {
    let c = &a.common;
    if c.format == Format::Dot {
        return Err(input("classes supports --format json or csv"));
    }
    let inst = load(c)?;
    let m = &inst.matroid;
    let (s, t) = signatures(m, c)?;
    let kind = ReversalKind::from(a.kind);
    let classes = enumerate_classes(m, kind);
    let mut listed = Vec::new();
    for members in &classes {
        let rep = match kind {
            ReversalKind::Cycle => sigma_representative(m, members[0], &s)?,
            ReversalKind::Cocycle => sigma_star_representative(m, members[0], &t)?,
            ReversalKind::CycleCocycle => compatible_representative(m, members[0], &s, &t)?,
        };
        listed.push((rep, members));
    }
    let text = match c.format {
        Format::Csv => {
            let mut out = String::from("class,representative,member\n");
            for (i, (rep, members)) in listed.iter().enumerate() {
                for &o in members.iter() {
                    writeln!(out, "{i},{},{}", bits(*rep), bits(o)).unwrap();
                }
            }
            out
        }
        _ => pretty(&json!({
            "kind": kind.name(),
            "seed": c.seed,
            "count": classes.len(),
            "classes": listed.iter().map(|(rep, members)| json!({"representative": rep, "members": members})).collect::<Vec<_>>(),
        })),
    };
    emit(c, &text)
}

fn parse_dilation(text: &str, n: usize) -> Run<Vec<u64>> {
    let q: Vec<u64> = text
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| input(format!("bad dilation entry {x:?}"))))
        .collect::<Run<_>>()?;
    if q.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: q.len() }.into());
    }
    Ok(q)
}

fn cmd_ehrhart(a: &EhrhartArgs) -> Run<()> {
    let c = &a.common;
    if c.format == Format::Dot {
        return Err(input("ehrhart supports --format json or csv"));
    }
    let inst = load(c)?;
    let m = &inst.matroid;
    let table = build(&inst, c)?;
    let independent = ehrhart_from_independent_sets(m);
    let restricted = sigma_restricted_sum(&table);
    let difference = independent.sub(&restricted);
    let product = ehrhart_from_phi(&table) == MultilinearPolynomial::product_of_one_plus(m.element_count());
    let mut ok = difference.is_zero() && product;
    let mut dilation = Value::Null;
    if let Some(text) = &a.dilation {
        let q = parse_dilation(text, m.element_count())?;
        let points = ZonotopeCounter::new(m)?.count(&q)?;
        let value = independent.eval(&q);
        ok &= value == points.into();
        dilation = json!({"q": q, "polynomial": value.to_string(), "lattice_points": points});
    }
    let text = match c.format {
        Format::Csv => {
            let mut out = String::from("polynomial,subset,coeff\n");
            for (name, p) in
                [("independent-sets", &independent), ("sigma-restricted", &restricted), ("difference", &difference)]
            {
                for (s, k) in p.terms() {
                    let subset: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                    writeln!(out, "{name},{},{k}", subset.join(" ")).unwrap();
                }
            }
            out
        }
        _ => pretty(&json!({
            "seed": c.seed,
            "monomials": independent.len(),
            "independent_sets": independent.to_json(),
            "sigma_restricted": restricted.to_json(),
            "difference": difference.to_json(),
            "phi_sum_is_product": product,
            "dilation": dilation,
        })),
    };
    emit(c, &text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("Ehrhart identities do not hold".into()))
    }
}

fn cmd_signature_check(c: &Common) -> Run<()> {
    only_json(c, "signature-check")?;
    let inst = load(c)?;
    let m = &inst.matroid;
    let (s, t) = signatures(m, c)?;
    let mut all = true;
    let mut entry = |sig: &Signature| -> Run<Value> {
        let w = is_acyclic(m, sig)?;
        all &= w.is_some();
        Ok(json!({
            "acyclic": w.is_some(),
            "supports": sig.choices().len(),
            "witness": w.map(|w| w.0.iter().map(ToString::to_string).collect::<Vec<_>>()),
        }))
    };
    let report = json!({"seed": c.seed, "cycle": entry(&s)?, "cocycle": entry(&t)?});
    emit(c, &pretty(&report))?;
    if all {
        Ok(())
    } else {
        Err(Failure::Verification(Error::NotAcyclic.to_string()))
    }
}

fn suite(name: &str, passed: bool, details: Value) -> Value {
    json!({"name": name, "passed": passed, "details": details})
}

fn counts_json(c: &SubsetCounts) -> Value {
    c.to_json()
}

fn cmd_verify(a: &VerifyArgs) -> Run<()> {
    let c = &a.common;
    only_json(c, "verify")?;
    let inst = load(c)?;
    let m = &inst.matroid;
    let n = m.element_count();
    let mut table = build(&inst, c)?;
    if let Some(pair) = &a.corrupt_swap {
        let (x, y) = pair.split_once(',').ok_or_else(|| input("corrupt-swap expects A,B"))?;
        let parse = |s: &str| -> Run<Orientation> {
            let b: u64 = s.trim().parse().map_err(|_| input("corrupt-swap expects integers"))?;
            if n < 64 && b >> n != 0 {
                return Err(input("corrupt-swap index out of range"));
            }
            Ok(Orientation::from_bits(b, n))
        };
        table.swap_entries_for_testing(parse(x)?, parse(y)?);
    }
    let mut suites = Vec::new();

    let audit = audit_table(&table)?;
    suites.push(suite("bijection", audit.bijection.passed, audit.bijection.to_json()));

    let exact = verify_cube_decomposition(table.forward(), n, 0, c.seed)?;
    suites.push(suite(
        "separation",
        exact.separation_violation.is_none(),
        json!({
            "pairs_checked": exact.pairs_checked,
            "violation": exact.separation_violation.map(|(p, q)| [p, q]),
        }),
    ));

    let phi = verify_cube_decomposition(table.forward(), n, c.samples, c.seed)?;
    let phi_star = verify_cube_decomposition(&table.dual_forward(), n, c.samples, c.seed)?;
    suites.push(suite(
        "tiling",
        phi.passed && phi_star.passed,
        json!({"phi": phi.to_json(), "phi_star": phi_star.to_json()}),
    ));

    let expected = match &inst.graph {
        Some(g) => SubsetCounts::from_tutte(&table_one_evaluations(g, &inst.caps)?),
        None => SubsetCounts::of_matroid(m),
    };
    let specialization = SubsetCounts::of_table(&table);
    let class_counts: Vec<usize> = ReversalKind::ALL.iter().map(|&k| enumerate_classes(m, k).len()).collect();
    let counts_ok = specialization == expected
        && class_counts == [expected.independent, expected.spanning, expected.bases].map(|x| x as usize);
    suites.push(suite(
        "counts",
        counts_ok,
        json!({
            "expected": counts_json(&expected),
            "specializations": counts_json(&specialization),
            "classes": {"cycle": class_counts[0], "cocycle": class_counts[1], "cycle-cocycle": class_counts[2]},
        }),
    ));

    let mut oracle_ok = true;
    let mut per_kind = serde_json::Map::new();
    for kind in ReversalKind::ALL {
        let same = enumerate_classes(m, kind) == reversal_closure_classes(m, kind)?;
        oracle_ok &= same;
        per_kind.insert(kind.name().into(), json!(same));
    }
    suites.push(suite("class-oracle", oracle_ok, Value::Object(per_kind)));

    let independent = ehrhart_from_independent_sets(m);
    let product = ehrhart_from_phi(&table) == MultilinearPolynomial::product_of_one_plus(n);
    let forest_side = sigma_restricted_sum(&table) == independent;
    let spanning_side = sigma_star_restricted_sum(&table) == spanning_set_polynomial(m);
    let mut lattice = Value::Null;
    let mut lattice_ok = true;
    if m.rank() <= inst.caps.zonotope_rank {
        let counter = ZonotopeCounter::new(m)?;
        let mut checks = Vec::new();
        for k in [1u64, 2] {
            let q = vec![k; n];
            let points = counter.count(&q)?;
            let value = independent.eval(&q);
            lattice_ok &= value == points.into();
            checks.push(json!({"q": k, "polynomial": value.to_string(), "lattice_points": points}));
        }
        lattice = Value::Array(checks);
    }
    suites.push(suite(
        "ehrhart",
        product && forest_side && spanning_side && lattice_ok,
        json!({
            "phi_sum_is_product": product,
            "sigma_restricted_is_independent": forest_side,
            "sigma_star_restricted_is_spanning": spanning_side,
            "lattice_points": lattice,
        }),
    ));

    let failed: Vec<String> = suites
        .iter()
        .filter(|s| s["passed"] == json!(false))
        .map(|s| s["name"].as_str().unwrap_or_default().to_string())
        .collect();
    let report = json!({
        "seed": c.seed,
        "samples": c.samples,
        "elements": n,
        "rank": m.rank(),
        "suites": suites,
        "passed": failed.is_empty(),
    });
    emit(c, &pretty(&report))?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failed suites: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Classes(a) => cmd_classes(a),
        Command::Ehrhart(a) => cmd_ehrhart(a),
        Command::SignatureCheck(c) => cmd_signature_check(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Verification(msg) | Failure::Input(msg) | Failure::Cap(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
