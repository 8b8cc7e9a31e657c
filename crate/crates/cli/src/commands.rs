use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use kgraph::bridge::{cat2_eval_and_check, cub_class_equal, is_normalised, restrict_to_squares, Cat2Cocycle};
use kgraph::cubical::{cohomology, cub_2cocycle_witness, cubes, homology};
use kgraph::extension::ext_law_suite;
use kgraph::graph::{periodicity_diagnostics, AperiodicityVerdict, CofinalityVerdict};
use kgraph::groupoid::{refine_compare, sigma_identity_suite, CanonicalPartition, PathSpace, TupleSpec};
use kgraph::matrix::FinAbGroup;
use kgraph::sample::SampleSpec;
use kgraph::{CoeffGroup, Degree, KGraph, Morphism};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::document::{cochain_value, elem_value, parse_cocycle, parse_graph, CocycleDocument, CocycleKind, GraphDocument};
use crate::report::{check_value, from_check, Format, Report, Verdict};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "kgraph", version, about = "Cohomology and twisted groupoids of finite k-graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Graph document.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Cocycle document; repeat for commands that take several.
    #[arg(long, global = true)]
    pub phi: Vec<PathBuf>,
    /// Coefficients for `cohomology`: Z, Z/n or Q/Z.
    #[arg(long, global = true)]
    pub coeff: Option<String>,
    /// Highest degree to compute.
    #[arg(long, global = true)]
    pub upto: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of random samples.
    #[arg(long, global = true)]
    pub triples: Option<usize>,
    /// Path-length bound, or a degree `n1,n2,...` for `diagnostics`.
    #[arg(long, global = true)]
    pub bound: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and validate a graph.
    Validate,
    /// Integral cubical homology.
    Homology,
    /// Cubical cohomology with coefficients.
    Cohomology,
    /// Check that a cocycle document describes a cocycle.
    CocycleCheck,
    /// Check that restricting `c_φ` to squares gives back `φ`.
    BridgeRoundtrip,
    /// Decide whether two square functions are cohomologous.
    ClassEqual,
    /// Run the central-extension laws.
    ExtLaws,
    /// Run the groupoid cocycle suites.
    SigmaCheck,
    /// Bounded aperiodicity and cofinality search.
    Diagnostics,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Cohomology => "cohomology",
            Command::CocycleCheck => "cocycle-check",
            Command::BridgeRoundtrip => "bridge-roundtrip",
            Command::ClassEqual => "class-equal",
            Command::ExtLaws => "ext-laws",
            Command::SigmaCheck => "sigma-check",
            Command::Diagnostics => "diagnostics",
        }
    }

    pub(crate) fn is_seeded(self) -> bool {
        matches!(self, Command::CocycleCheck | Command::ExtLaws | Command::SigmaCheck)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), reason: e.to_string() })
}

fn with_path<T>(path: &Path, r: Result<T, CliError>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        CliError::Parse { line, reason } => CliError::Parse { line, reason: format!("{}: {reason}", path.display()) },
        other => other,
    })
}

struct Inputs<'a> {
    cli: &'a Cli,
}

impl Inputs<'_> {
    fn graph(&self) -> Result<GraphDocument, CliError> {
        let path = self.cli.graph.as_deref().ok_or_else(|| CliError::Usage("--graph is required".into()))?;
        with_path(path, parse_graph(&read(path)?))
    }

    fn cocycles(&self, graph: &Arc<KGraph>, count: Option<usize>) -> Result<Vec<CocycleDocument>, CliError> {
        let phis = &self.cli.phi;
        match count {
            Some(n) if phis.len() != n => {
                return Err(CliError::Usage(format!("expected {n} --phi document(s), got {}", phis.len())))
            }
            None if phis.is_empty() => return Err(CliError::Usage("at least one --phi document is required".into())),
            _ => {}
        }
        phis.iter().map(|p| with_path(p, parse_cocycle(&read(p)?, graph))).collect()
    }

    fn max_len(&self, default: usize) -> Result<usize, CliError> {
        match &self.cli.bound {
            None => Ok(default),
            Some(b) => b.trim().parse().map_err(|_| CliError::Usage(format!("--bound must be a path length, got `{b}`"))),
        }
    }

    fn degree_bound(&self, k: usize) -> Result<Degree, CliError> {
        let Some(b) = &self.cli.bound else { return Ok(Degree::from_vec(vec![2; k])) };
        let parts: Vec<u32> = b
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("--bound must be `n` or `n1,...,nk`, got `{b}`")))?;
        match parts.len() {
            1 => Ok(Degree::from_vec(vec![parts[0]; k])),
            n if n == k => Ok(Degree::from_vec(parts)),
            n => Err(CliError::Usage(format!("--bound has {n} entries but the graph has rank {k}"))),
        }
    }

    fn seed(&self) -> u64 {
        self.cli.seed.unwrap_or(0)
    }
}

fn names(g: &KGraph, ms: &[Morphism]) -> Value {
    Value::Array(ms.iter().map(|m| Value::String(g.describe(m))).collect())
}

fn bigint_value(d: &BigInt) -> Value {
    i64::try_from(d).map(Value::from).unwrap_or_else(|_| Value::String(d.to_string()))
}

fn group_value(r: usize, h: &FinAbGroup) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), Value::from(r));
    m.insert("group".into(), Value::from(h.to_string()));
    m.insert("free_rank".into(), Value::from(h.free_rank));
    m.insert("torsion".into(), Value::Array(h.torsion.iter().map(bigint_value).collect()));
    Value::Object(m)
}

fn graph_summary(g: &KGraph) -> Value {
    let mut m = Map::new();
    m.insert("k".into(), Value::from(g.rank()));
    m.insert("vertices".into(), Value::from(g.vertex_count()));
    m.insert("edges".into(), Value::from(g.edge_count()));
    m.insert("squares".into(), Value::from(g.squares().len()));
    m.insert("cubes".into(), Value::Array((0..=g.rank()).map(|r| Value::from(cubes(g, r).len())).collect()));
    Value::Object(m)
}

pub fn execute(cli: &Cli, args: &[String]) -> Result<Report, CliError> {
    let command = cli.command;
    let inputs = Inputs { cli };
    let seed = command.is_seeded().then(|| inputs.seed());
    let mut report = Report::new(command.name(), args, seed);
    match command {
        Command::Validate => validate(&inputs, &mut report)?,
        Command::Homology => {
            let doc = inputs.graph()?;
            let g = &doc.graph;
            let upto = cli.upto.unwrap_or(g.rank());
            report.set("groups", Value::Array((0..=upto).map(|r| group_value(r, &homology(g, r))).collect()));
        }
        Command::Cohomology => {
            let doc = inputs.graph()?;
            let g = &doc.graph;
            let group: CoeffGroup = cli.coeff.as_deref().unwrap_or("Z").parse()?;
            let upto = cli.upto.unwrap_or(g.rank());
            let groups =
                (0..=upto).map(|r| cohomology(g, r, &group).map(|h| group_value(r, &h))).collect::<Result<Vec<_>, _>>()?;
            report.set("coeff", group.to_string());
            report.set("groups", Value::Array(groups));
        }
        Command::CocycleCheck => cocycle_check(&inputs, &mut report)?,
        Command::BridgeRoundtrip => bridge_roundtrip(&inputs, &mut report)?,
        Command::ClassEqual => {
            let doc = inputs.graph()?;
            let phis = inputs.cocycles(&doc.graph, Some(2))?;
            for phi in &phis {
                require_kind(phi, CocycleKind::Cubical2)?;
            }
            let verdict = cub_class_equal(&phis[0].table, &phis[1].table)?;
            report.set("equal", verdict.equal);
            report.set("certificate", verdict.certificate.as_ref().map_or(Value::Null, cochain_value));
            if !verdict.equal {
                report.verdict = Verdict::Fail;
            }
        }
        Command::ExtLaws => {
            let doc = inputs.graph()?;
            let cocycles =
                inputs.cocycles(&doc.graph, None)?.iter().map(CocycleDocument::categorical).collect::<Result<Vec<_>, _>>()?;
            let suite = ext_law_suite(&cocycles, inputs.seed(), cli.triples.unwrap_or(100))?;
            report.add_suite(&suite);
        }
        Command::SigmaCheck => {
            let doc = inputs.graph()?;
            let c = inputs.cocycles(&doc.graph, Some(1))?[0].categorical()?;
            let space = match &doc.blocks {
                Some(b) => PathSpace::with_blocks(doc.graph.clone(), b.clone())?,
                None => PathSpace::new(doc.graph.clone())?,
            };
            let partition = CanonicalPartition::new(space);
            let spec = TupleSpec { seed: inputs.seed(), count: cli.triples.unwrap_or(500), max_len: inputs.max_len(2)? };
            report.set("max_len", spec.max_len);
            report.add_suite(&sigma_identity_suite(&c, &partition, &spec)?);
            report.add_suite(&refine_compare(&c, &partition, &spec)?);
        }
        Command::Diagnostics => diagnostics(&inputs, &mut report)?,
    }
    Ok(report)
}

fn validate(inputs: &Inputs, report: &mut Report) -> Result<(), CliError> {
    let doc = match inputs.graph() {
        Ok(doc) => doc,
        Err(CliError::Validation(e)) => {
            report.verdict = Verdict::Fail;
            report.set("error", e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let g = &doc.graph;
    report.set("graph", graph_summary(g));
    report.set("no_sources", g.check_no_sources().is_ok());
    let blocks = match &doc.blocks {
        Some(b) => Some(b.clone()),
        None => g.canonical_blocks().ok(),
    };
    let blocks = blocks.map_or(Value::Null, |b| {
        Value::Object(g.vertex_ids().zip(&b).map(|(v, m)| (g.vertex_name(v).to_string(), Value::String(g.describe(m)))).collect())
    });
    report.set("blocks", blocks);
    Ok(())
}

fn require_kind(doc: &CocycleDocument, kind: CocycleKind) -> Result<(), CliError> {
    if doc.kind == kind {
        Ok(())
    } else {
        Err(CliError::Usage(format!("expected a {kind:?} document, got {:?}", doc.kind)))
    }
}

fn categorical_checks(report: &mut Report, c: &Cat2Cocycle, max_len: usize, seed: u64, count: usize) {
    let g = c.graph().clone();
    let render = |t: Vec<Morphism>| names(&g, &t);
    let exhaustive = cat2_eval_and_check(c, &SampleSpec::Exhaustive { max_len });
    let random = cat2_eval_and_check(c, &SampleSpec::Random { seed, count, max_len: max_len + 2 });
    let normalised = is_normalised(c, max_len + 2);
    report.add_checks([
        from_check("cocycle identity on all short triples", exhaustive, render),
        from_check("cocycle identity on random triples", random, render),
        check_value("normalised", g.morphisms_up_to(max_len + 2).len(), (!normalised).then(|| Value::from("some identity pair"))),
    ]);
}

fn cube_witness(doc: &CocycleDocument) -> Value {
    let g = doc.table.graph();
    check_value(
        "cube identity on every 3-cube",
        cubes(g, 3).len(),
        cub_2cocycle_witness(&doc.table).map(|cube| Value::String(g.describe(&cube))),
    )
}

fn cocycle_check(inputs: &Inputs, report: &mut Report) -> Result<(), CliError> {
    let doc = inputs.graph()?;
    let phi = inputs.cocycles(&doc.graph, Some(1))?.remove(0);
    let max_len = inputs.max_len(2)?;
    let count = inputs.cli.triples.unwrap_or(500);
    report.set("coeff", phi.group().to_string());
    match phi.kind {
        CocycleKind::Cubical2 => {
            report.add_checks([cube_witness(&phi)]);
            if report.verdict == Verdict::Pass {
                categorical_checks(report, &phi.categorical()?, max_len, inputs.seed(), count);
            }
        }
        CocycleKind::CatCoboundary => categorical_checks(report, &phi.categorical()?, max_len, inputs.seed(), count),
        CocycleKind::Functor1 => {
            let g = &doc.graph;
            let witness = match phi.functor() {
                Ok(_) => None,
                Err(CliError::Core(e)) => Some(Value::String(e.to_string())),
                Err(e) => return Err(e),
            };
            report.add_checks([check_value("functorial on every square", g.squares().len(), witness)]);
        }
    }
    Ok(())
}

fn bridge_roundtrip(inputs: &Inputs, report: &mut Report) -> Result<(), CliError> {
    let doc = inputs.graph()?;
    let g = doc.graph.clone();
    let phi = inputs.cocycles(&g, Some(1))?.remove(0);
    require_kind(&phi, CocycleKind::Cubical2)?;
    report.set("coeff", phi.group().to_string());
    report.add_checks([cube_witness(&phi)]);
    if report.verdict != Verdict::Pass {
        return Ok(());
    }
    let c = phi.categorical()?;
    let back = restrict_to_squares(&c);
    let squares = cubes(&g, 2);
    let differs = squares
        .cubes()
        .iter()
        .find(|s| back.at(s) != phi.table.at(s))
        .map(|s| Value::String(format!("{}: {} vs {}", g.describe(s), back.at(s), phi.table.at(s))));
    report.add_checks([check_value("restriction to squares gives back the table", squares.len(), differs)]);

    let mut pairs = 0;
    let mut bad = None;
    for a in g.edge_ids() {
        for b in g.edge_ids().filter(|&b| g.range(b) == g.source(a)) {
            pairs += 1;
            let (ma, mb) = (g.edge_morphism(a), g.edge_morphism(b));
            let expected =
                if g.colour(a) > g.colour(b) { phi.table.at(&g.compose(&ma, &mb)?).clone() } else { phi.group().zero() };
            let got = c.eval(&ma, &mb);
            if got != expected && bad.is_none() {
                bad = Some(Value::String(format!("({}, {}): {got} vs {expected}", g.edge_name(a), g.edge_name(b))));
            }
        }
    }
    report.add_checks([check_value("values on edge pairs", pairs, bad)]);
    let max_len = inputs.max_len(2)?;
    let check = cat2_eval_and_check(&c, &SampleSpec::Exhaustive { max_len });
    report.add_checks([from_check("cocycle identity on all short triples", check, |t| names(&g, &t))]);
    report.set("values", cochain_value(&phi.table));
    report.set("edge_pair_values", edge_pairs(&c));
    Ok(())
}

fn edge_pairs(c: &Cat2Cocycle) -> Value {
    let g = c.graph();
    let mut out = Map::new();
    for a in g.edge_ids() {
        for b in g.edge_ids().filter(|&b| g.range(b) == g.source(a)) {
            let v = c.eval(&g.edge_morphism(a), &g.edge_morphism(b));
            if !v.is_zero() {
                out.insert(format!("{} {}", g.edge_name(a), g.edge_name(b)), elem_value(&v));
            }
        }
    }
    Value::Object(out)
}

fn diagnostics(inputs: &Inputs, report: &mut Report) -> Result<(), CliError> {
    let doc = inputs.graph()?;
    let g = &doc.graph;
    let bound = inputs.degree_bound(g.rank())?;
    let d = periodicity_diagnostics(g, &bound)?;
    report.set("bound", Value::Array(bound.entries().iter().map(|&n| Value::from(n)).collect()));
    let mut ap = Map::new();
    let (name, witness) = match &d.aperiodicity {
        AperiodicityVerdict::VerifiedUpToBound => ("verified-up-to-bound", Value::Null),
        AperiodicityVerdict::PeriodicWitness { alpha, beta } => {
            report.verdict = Verdict::Fail;
            ("periodic-witness", names(g, &[alpha.clone(), beta.clone()]))
        }
        AperiodicityVerdict::Inconclusive => {
            report.verdict = Verdict::Inconclusive;
            ("inconclusive", Value::Null)
        }
    };
    ap.insert("verdict".into(), Value::from(name));
    ap.insert("witness".into(), witness);
    ap.insert("separated_pairs".into(), Value::from(d.separations.len()));
    report.set("aperiodicity", Value::Object(ap));
    let mut co = Map::new();
    match d.cofinality {
        CofinalityVerdict::Cofinal => {
            co.insert("verdict".into(), Value::from("cofinal"));
            co.insert("witness".into(), Value::Null);
        }
        CofinalityVerdict::NotCofinal { start, vertex } => {
            report.verdict = Verdict::Fail;
            co.insert("verdict".into(), Value::from("not-cofinal"));
            let mut w = Map::new();
            w.insert("start".into(), Value::from(g.vertex_name(start)));
            w.insert("vertex".into(), Value::from(g.vertex_name(vertex)));
            co.insert("witness".into(), Value::Object(w));
        }
    }
    report.set("cofinality", Value::Object(co));
    Ok(())
}
