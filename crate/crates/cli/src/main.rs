//! Batch command line front end: read one JSON object, run the requested
//! computation, and print one JSON object with the results and a "checks"
//! array naming every identity that was re-verified.  Exit code 0 means all
//! checks passed, 1 means some check failed, 2 means the input did not
//! parse, and 3 means a size or budget cap was hit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use semimatroids::arrangement::{Arrangement, FieldSpec, HcfIndex};
use semimatroids::assigning::AssigningMatroid;
use semimatroids::convolution::{
    char_convolution, tutte_convolution, tutte_convolution_by_conjugation, TutteIndex,
};
use semimatroids::corpus;
use semimatroids::error::{Error, Result};
use semimatroids::graph::GainGraph;
use semimatroids::json as interchange;
use semimatroids::poly::{BiPoly, UniPoly};
use semimatroids::semimatroid::{self, AxiomReport, Semimatroid};

#[derive(Parser)]
#[command(name = "semi", version, about = "Exact semimatroid computations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Report whether the input family satisfies the semimatroid axioms.
    Verify(InputArgs),
    /// Characteristic polynomial of a semimatroid, by several routes.
    Chi(InputArgs),
    /// Corank-nullity polynomial of a semimatroid.
    Tutte(InputArgs),
    /// Broken-circuit-free set counts under an element ordering.
    Nbc(NbcArgs),
    /// Convolution identities over a chosen index family.
    Convolution(ConvolutionArgs),
    /// Pass between a semimatroid and its circuit-labeled matroid.
    Assign(InputArgs),
    /// Hyperplane arrangement computations.
    #[command(subcommand)]
    Arr(ArrCmd),
    /// Gain graph computations.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Shorthand for `arr classify`.
    ArrClassify(InputArgs),
    /// Shorthand for `arr count-points`.
    ArrCount(CountArgs),
    /// Shorthand for `graph chromatic`.
    GraphChromatic(InputArgs),
    /// Shorthand for `graph count-colorings`.
    GraphCount(GraphCountArgs),
    /// Write a deterministic corpus of fixture files.
    CorpusGen(CorpusArgs),
}

#[derive(Subcommand)]
enum ArrCmd {
    /// Characteristic polynomial of an arrangement.
    Chi(InputArgs),
    /// Corank-nullity polynomial of an arrangement.
    Tutte(InputArgs),
    /// Classify the translations of a central arrangement.
    Classify(InputArgs),
    /// Count points on no hyperplane over a prime field.
    CountPoints(CountArgs),
    /// Discriminantal arrangement of the coefficient vectors.
    Discriminantal(InputArgs),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Chromatic polynomial of the admissible labeling.
    Chromatic(InputArgs),
    /// Count proper colorings modulo a prime.
    CountColorings(GraphCountArgs),
    /// Admissible cycle labels of a gain graph.
    Admissible(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Path of the JSON input object.
    input: PathBuf,
    /// Skip the identity cross-checks.
    #[arg(long)]
    no_check: bool,
}

#[derive(Args)]
struct NbcArgs {
    input: PathBuf,
    /// Comma-separated element ordering, lowest first.
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    no_check: bool,
}

#[derive(Args)]
struct ConvolutionArgs {
    input: PathBuf,
    /// Index family for the corank-nullity convolution.
    #[arg(long, value_enum, default_value_t = IndexFamily::Flats)]
    index: IndexFamily,
    #[arg(long)]
    no_check: bool,
}

#[derive(Args)]
struct CountArgs {
    input: PathBuf,
    /// Prime modulus for reducing a rational arrangement.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    no_check: bool,
}

#[derive(Args)]
struct GraphCountArgs {
    input: PathBuf,
    /// Prime modulus; colors are the residues.
    #[arg(long)]
    modulus: u64,
    #[arg(long)]
    no_check: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Seed for the deterministic generator.
    #[arg(long)]
    seed: u64,
    /// Number of fixture files to write.
    #[arg(long)]
    count: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexFamily {
    CentralSets,
    Flats,
    CyclicFlats,
}

impl IndexFamily {
    fn tutte_index(self) -> TutteIndex {
        match self {
            IndexFamily::CentralSets => TutteIndex::CentralSets,
            IndexFamily::Flats => TutteIndex::Flats,
            IndexFamily::CyclicFlats => TutteIndex::CyclicFlats,
        }
    }

    fn name(self) -> &'static str {
        match self {
            IndexFamily::CentralSets => "central-sets",
            IndexFamily::Flats => "flats",
            IndexFamily::CyclicFlats => "cyclic-flats",
        }
    }
}

/// Named identity re-verifications accumulated by each verb.
struct Checks {
    enabled: bool,
    list: Vec<(&'static str, bool)>,
}

impl Checks {
    fn new(enabled: bool) -> Checks {
        Checks { enabled, list: Vec::new() }
    }

    fn run<F: FnOnce() -> bool>(&mut self, name: &'static str, check: F) {
        if self.enabled {
            self.list.push((name, check()));
        }
    }

    fn all_pass(&self) -> bool {
        self.list.iter().all(|&(_, pass)| pass)
    }

    fn to_value(&self) -> Value {
        Value::Array(
            self.list
                .iter()
                .map(|&(name, pass)| json!({ "name": name, "pass": pass }))
                .collect(),
        )
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((mut output, checks)) => {
            output.insert("checks".into(), checks.to_value());
            println!("{}", interchange::render(&Value::Object(output)));
            if checks.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GroundTooLarge(..) | Error::EnumTooLarge(..) | Error::BudgetExceeded(..) => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(verb: Verb) -> Result<(Map<String, Value>, Checks)> {
    match verb {
        Verb::Verify(a) => verify(&a),
        Verb::Chi(a) => chi(&a),
        Verb::Tutte(a) => tutte(&a),
        Verb::Nbc(a) => nbc(&a),
        Verb::Convolution(a) => convolution(&a),
        Verb::Assign(a) => assign(&a),
        Verb::Arr(ArrCmd::Chi(a)) => arr_chi(&a),
        Verb::Arr(ArrCmd::Tutte(a)) => arr_tutte(&a),
        Verb::Arr(ArrCmd::Classify(a)) | Verb::ArrClassify(a) => arr_classify(&a),
        Verb::Arr(ArrCmd::CountPoints(a)) | Verb::ArrCount(a) => arr_count(&a),
        Verb::Arr(ArrCmd::Discriminantal(a)) => arr_discriminantal(&a),
        Verb::Graph(GraphCmd::Chromatic(a)) | Verb::GraphChromatic(a) => graph_chromatic(&a),
        Verb::Graph(GraphCmd::CountColorings(a)) | Verb::GraphCount(a) => graph_count(&a),
        Verb::Graph(GraphCmd::Admissible(a)) => graph_admissible(&a),
        Verb::CorpusGen(a) => corpus_gen(&a),
    }
}

fn read_value(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
    interchange::parse_text(&text)
}

fn read_semimatroid(path: &PathBuf) -> Result<Semimatroid> {
    let v = read_value(path)?;
    // circuit-labeled inputs stand for their compatible family
    if v.as_object().is_some_and(|obj| obj.contains_key("assigning")) {
        let a = interchange::assigning_from_value(&v, "$")?;
        return a.as_semimatroid().map_err(|report| {
            let axioms: Vec<&str> = report.failures.iter().map(|f| f.axiom()).collect();
            Error::InvalidSemimatroid(axioms.join(", "))
        });
    }
    interchange::semimatroid_from_value(&v, "$")
}

fn read_arrangement(path: &PathBuf) -> Result<Arrangement> {
    interchange::arrangement_from_value(&read_value(path)?, "$")
}

fn read_gain_graph(path: &PathBuf) -> Result<GainGraph> {
    interchange::gain_graph_from_value(&read_value(path)?, "$")
}

fn big_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn labels_value(labels: &std::collections::BTreeMap<u32, u8>) -> Value {
    let mut map = Map::new();
    for (&c, &v) in labels {
        map.insert(interchange::mask_to_key(c), json!(v));
    }
    Value::Object(map)
}

fn report_value(report: &AxiomReport) -> (bool, Value) {
    let axioms: Vec<Value> = report
        .failures
        .iter()
        .map(|f| Value::String(f.axiom().into()))
        .collect();
    (report.is_valid(), Value::Array(axioms))
}

fn verify(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let v = read_value(&args.input)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Json("$: expected an object".into()))?;
    let report = if obj.contains_key("assigning") {
        interchange::assigning_from_value(&v, "$")?.family_report()
    } else if obj.contains_key("central") {
        let (width, ground, pairs) = interchange::semimatroid_parts_from_value(&v, "$")?;
        semimatroid::verify(width, ground, &pairs)
    } else {
        // matroid and pointed forms are valid by construction
        interchange::semimatroid_from_value(&v, "$")?;
        AxiomReport { failures: Vec::new() }
    };
    let (valid, axioms) = report_value(&report);
    let mut out = Map::new();
    out.insert("semimatroid".into(), json!(valid));
    out.insert("failing_axioms".into(), axioms);
    Ok((out, Checks::new(false)))
}

fn chi(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let c = read_semimatroid(&args.input)?;
    let chi = c.characteristic();
    let w = c.whitney_numbers()?;
    let r = c.rank() as u32;
    let coefficients: Vec<Value> = (0..=r).rev().map(|e| big_str(&chi.coeff(e))).collect();
    let mut out = Map::new();
    out.insert("characteristic".into(), interchange::uni_poly_to_value(&chi));
    out.insert("coefficients".into(), Value::Array(coefficients));
    out.insert(
        "whitney".into(),
        Value::Array(w.values.iter().map(big_str).collect()),
    );
    out.insert("rank".into(), json!(c.rank()));
    let mut checks = Checks::new(!args.no_check);
    checks.run("deletion-contraction-route-agrees", || {
        c.characteristic_by_recursion() == chi
    });
    if c.loops() == 0 {
        let mobius = c.characteristic_by_mobius()?;
        checks.run("mobius-route-agrees", || mobius == chi);
    }
    let sub = c
        .tutte()
        .specialize(&UniPoly::linear(1, -1), &UniPoly::zero(), r);
    checks.run("corank-nullity-substitution-agrees", || sub == chi);
    Ok((out, checks))
}

fn tutte(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let c = read_semimatroid(&args.input)?;
    let t = c.tutte();
    let mut out = Map::new();
    out.insert("tutte".into(), interchange::bi_poly_to_value(&t));
    out.insert("rank".into(), json!(c.rank()));
    let mut checks = Checks::new(!args.no_check);
    checks.run("deletion-contraction-route-agrees", || {
        c.tutte_by_recursion() == t
    });
    let sub = t.specialize(&UniPoly::linear(1, -1), &UniPoly::zero(), c.rank() as u32);
    checks.run("substitution-recovers-characteristic", || {
        sub == c.characteristic()
    });
    Ok((out, checks))
}

fn nbc(args: &NbcArgs) -> Result<(Map<String, Value>, Checks)> {
    let c = read_semimatroid(&args.input)?;
    let order = match &args.order {
        Some(text) => parse_order(text, &c)?,
        None => c.default_order(),
    };
    let counts = c.nbc_counts(&order)?;
    let mut out = Map::new();
    out.insert("order".into(), json!(order));
    out.insert(
        "counts".into(),
        Value::Array(counts.iter().map(|&n| json!(n)).collect()),
    );
    let mut checks = Checks::new(!args.no_check);
    let w = c.whitney_numbers()?;
    checks.run("counts-match-whitney-numbers", || {
        counts.len() == w.values.len()
            && counts
                .iter()
                .zip(&w.values)
                .all(|(&n, v)| &BigInt::from(n) == v)
    });
    let total: u64 = counts.iter().sum();
    let at_minus_one = c.characteristic().eval_int(&BigInt::from(-1));
    let signless = if c.rank() % 2 == 1 { -at_minus_one } else { at_minus_one };
    checks.run("total-matches-signless-value-at-minus-one", || {
        BigInt::from(total) == signless
    });
    // the counts must not depend on the ordering
    let mut rotated = order.clone();
    let step = 1.min(rotated.len());
    rotated.rotate_left(step);
    let mut reversed = order.clone();
    reversed.reverse();
    let alt_a = c.nbc_counts(&rotated)?;
    let alt_b = c.nbc_counts(&reversed)?;
    checks.run("order-independent", || alt_a == counts && alt_b == counts);
    Ok((out, checks))
}

fn parse_order(text: &str, c: &Semimatroid) -> Result<Vec<usize>> {
    let order: Vec<usize> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad order entry {part:?}")))
        })
        .collect::<Result<_>>()?;
    let mut sorted = order.clone();
    sorted.sort_unstable();
    let mut expected = c.default_order();
    expected.sort_unstable();
    if sorted != expected {
        return Err(Error::InvalidInput(
            "order must list each ground element exactly once".into(),
        ));
    }
    Ok(order)
}

fn convolution(args: &ConvolutionArgs) -> Result<(Map<String, Value>, Checks)> {
    let c = read_semimatroid(&args.input)?;
    let report = tutte_convolution(&c, args.index.tutte_index())?;
    let mut out = Map::new();
    out.insert("index".into(), json!(args.index.name()));
    out.insert("lhs".into(), interchange::bi_poly_to_value(&report.lhs));
    out.insert("rhs".into(), interchange::bi_poly_to_value(&report.rhs));
    let mut checks = Checks::new(!args.no_check);
    checks.run("corank-nullity-convolution-holds", || report.holds());
    if c.loops() == 0 {
        let char_report = char_convolution(&c)?;
        out.insert(
            "characteristic_lhs".into(),
            interchange::bi_poly_to_value(&char_report.lhs),
        );
        out.insert(
            "characteristic_rhs".into(),
            interchange::bi_poly_to_value(&char_report.rhs),
        );
        checks.run("characteristic-convolution-holds", || char_report.holds());
    }
    if c.central().len() <= 12 {
        let conj = tutte_convolution_by_conjugation(&c)?;
        let sign = if c.rank() % 2 == 0 { 1 } else { -1 };
        let expected = &c.tutte() * &BiPoly::constant(BigInt::from(sign));
        checks.run("conjugation-route-agrees", || conj == expected);
    }
    Ok((out, checks))
}

fn assign(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let v = read_value(&args.input)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Json("$: expected an object".into()))?;
    let mut out = Map::new();
    let mut checks = Checks::new(!args.no_check);
    if obj.contains_key("assigning") {
        // lift circuit labels to their compatible family
        let a = interchange::assigning_from_value(&v, "$")?;
        match a.as_semimatroid() {
            Ok(c) => {
                out.insert("semimatroid".into(), interchange::semimatroid_to_value(&c));
                out.insert("valid".into(), json!(true));
                out.insert("failing_axioms".into(), json!([]));
                checks.run("compatible-family-is-a-semimatroid", || true);
            }
            Err(report) => {
                let (_, axioms) = report_value(&report);
                out.insert("semimatroid".into(), Value::Null);
                out.insert("valid".into(), json!(false));
                out.insert("failing_axioms".into(), axioms);
                checks.run("compatible-family-is-a-semimatroid", || false);
            }
        }
    } else {
        // read the labels off a semimatroid
        let c = interchange::semimatroid_from_value(&v, "$")?;
        let a = AssigningMatroid::from_semimatroid(&c)?;
        out.insert("assigning".into(), interchange::assigning_to_value(&a));
        checks.run("labels-reproduce-the-family", || {
            a.as_semimatroid().map(|back| back == c).unwrap_or(false)
        });
    }
    Ok((out, checks))
}

fn arr_chi(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let a = read_arrangement(&args.input)?;
    let chi = a.characteristic()?;
    let r = a.rank()?;
    let mut out = Map::new();
    out.insert("characteristic".into(), interchange::uni_poly_to_value(&chi));
    out.insert("dim".into(), json!(a.dim()));
    out.insert("rank".into(), json!(r));
    let mut checks = Checks::new(!args.no_check);
    let c = a.semimatroid()?;
    let shift = UniPoly::monomial((a.dim() - r as usize) as u32, BigInt::from(1));
    checks.run("induced-family-route-agrees", || {
        &shift * &c.characteristic() == chi
    });
    match a.characteristic_by_mobius() {
        Ok(mobius) => checks.run("mobius-route-agrees", || mobius == chi),
        Err(Error::HasLoops) => {}
        Err(e) => return Err(e),
    }
    Ok((out, checks))
}

fn arr_tutte(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let a = read_arrangement(&args.input)?;
    let t = a.tutte()?;
    let mut out = Map::new();
    out.insert("tutte".into(), interchange::bi_poly_to_value(&t));
    out.insert("rank".into(), json!(a.rank()?));
    let mut checks = Checks::new(!args.no_check);
    let central = a.tutte_convolution(HcfIndex::CentralSets)?;
    checks.run("convolution-over-central-sets-holds", || central.holds());
    let flats = a.tutte_convolution(HcfIndex::Flats)?;
    checks.run("convolution-over-flats-holds", || flats.holds());
    Ok((out, checks))
}

fn arr_classify(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let a = read_arrangement(&args.input)?;
    let classes = a.classify_translations()?;
    let delta = a.discriminantal()?;
    let mut rendered = Vec::new();
    for class in &classes {
        let representative: Vec<Value> = class
            .representative
            .iter()
            .map(interchange::rational_to_value)
            .collect();
        rendered.push(json!({
            "flat": interchange::mask_to_key(class.flat),
            "representative": representative,
            "labels": labels_value(class.assigning.labels()),
            "semimatroid": interchange::semimatroid_to_value(&class.semimatroid),
        }));
    }
    let mut out = Map::new();
    out.insert("count".into(), json!(classes.len()));
    out.insert("classes".into(), Value::Array(rendered));
    let mut checks = Checks::new(!args.no_check);
    let flats = delta.flats()?;
    checks.run("one-class-per-discriminantal-flat", || {
        classes.len() == flats.len()
    });
    let in_strata = classes
        .iter()
        .map(|x| Ok(delta.point_flat(&x.representative)? == x.flat))
        .collect::<Result<Vec<bool>>>()?;
    checks.run("representatives-lie-in-their-strata", || {
        in_strata.iter().all(|&ok| ok)
    });
    checks.run("classes-pairwise-distinct", || {
        classes.iter().enumerate().all(|(i, x)| {
            classes[..i].iter().all(|y| {
                x.semimatroid != y.semimatroid && x.assigning.labels() != y.assigning.labels()
            })
        })
    });
    Ok((out, checks))
}

fn arr_count(args: &CountArgs) -> Result<(Map<String, Value>, Checks)> {
    let a = read_arrangement(&args.input)?;
    let reduced = match (a.field(), args.modulus) {
        (FieldSpec::Prime(_), None) => a,
        (FieldSpec::Prime(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "--modulus only applies to rational arrangements".into(),
            ))
        }
        (FieldSpec::Rational, Some(q)) => a.reduce_mod(q)?,
        (FieldSpec::Rational, None) => {
            return Err(Error::InvalidInput(
                "--modulus is required for rational arrangements".into(),
            ))
        }
    };
    let modulus = match reduced.field() {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rational => unreachable!(),
    };
    let count = reduced.count_points()?;
    let mut out = Map::new();
    out.insert("count".into(), json!(count));
    out.insert("modulus".into(), json!(modulus));
    let mut checks = Checks::new(!args.no_check);
    let chi = reduced.characteristic()?;
    checks.run("count-matches-characteristic", || {
        BigInt::from(count) == chi.eval_int(&BigInt::from(modulus))
    });
    Ok((out, checks))
}

fn arr_discriminantal(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let a = read_arrangement(&args.input)?;
    let delta = a.discriminantal()?;
    let mut out = Map::new();
    out.insert("arrangement".into(), interchange::arrangement_to_value(&delta));
    out.insert("flats".into(), json!(delta.flats()?.len()));
    Ok((out, Checks::new(false)))
}

fn graph_chromatic(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let g = read_gain_graph(&args.input)?;
    let admissible = g.admissible_assigning()?;
    let chi = admissible.chromatic();
    let mut out = Map::new();
    out.insert("chromatic".into(), interchange::uni_poly_to_value(&chi));
    out.insert("labels".into(), labels_value(admissible.labels()));
    let mut checks = Checks::new(!args.no_check);
    let by_matroid = admissible.chromatic_by_matroid()?;
    checks.run("matroid-route-agrees", || by_matroid == chi);
    let by_arrangement = g.arrangement()?.characteristic()?;
    checks.run("arrangement-route-agrees", || by_arrangement == chi);
    if let Ok(by_mobius) = admissible.chromatic_by_mobius() {
        checks.run("mobius-route-agrees", || by_mobius == chi);
    }
    Ok((out, checks))
}

fn graph_count(args: &GraphCountArgs) -> Result<(Map<String, Value>, Checks)> {
    let g = read_gain_graph(&args.input)?;
    let count = g.count_colorings(args.modulus)?;
    let (reduced, collapsed) = g.admissible_mod(args.modulus)?;
    let mut out = Map::new();
    out.insert("count".into(), json!(count));
    out.insert("modulus".into(), json!(args.modulus));
    out.insert("collapsed_gains".into(), json!(collapsed));
    let mut checks = Checks::new(!args.no_check);
    let at_q = reduced.chromatic().eval_int(&BigInt::from(args.modulus));
    checks.run("count-matches-reduced-chromatic", || {
        BigInt::from(count) == at_q
    });
    let points = g
        .arrangement()?
        .reduce_mod(args.modulus)?
        .count_points()?;
    checks.run("count-matches-arrangement-points", || count == points);
    Ok((out, checks))
}

fn graph_admissible(args: &InputArgs) -> Result<(Map<String, Value>, Checks)> {
    let g = read_gain_graph(&args.input)?;
    let admissible = g.admissible_assigning()?;
    let balanced: Vec<Value> = admissible
        .labels()
        .iter()
        .filter(|&(_, &v)| v == 0)
        .map(|(&c, _)| Value::String(interchange::mask_to_key(c)))
        .collect();
    let mut out = Map::new();
    out.insert("labels".into(), labels_value(admissible.labels()));
    out.insert("balanced_cycles".into(), Value::Array(balanced));
    let mut checks = Checks::new(!args.no_check);
    let arrangement = g.arrangement()?;
    let matches = admissible
        .labels()
        .iter()
        .map(|(&c, &v)| Ok(arrangement.is_central(c)? == (v == 0)))
        .collect::<Result<Vec<bool>>>()?;
    checks.run("labels-match-the-arrangement", || {
        matches.iter().all(|&ok| ok)
    });
    Ok((out, checks))
}

fn corpus_gen(args: &CorpusArgs) -> Result<(Map<String, Value>, Checks)> {
    fs::create_dir_all(&args.out)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", args.out.display())))?;
    let fixtures = corpus::fixtures(args.seed, args.count);
    let mut files = Vec::new();
    for (i, fixture) in fixtures.iter().enumerate() {
        let name = format!("fixture_{i:04}.json");
        let text = interchange::render(&interchange::fixture_to_value(fixture));
        fs::write(args.out.join(&name), format!("{text}\n"))
            .map_err(|e| Error::InvalidInput(format!("{name}: {e}")))?;
        files.push(Value::String(name));
    }
    let mut out = Map::new();
    out.insert("count".into(), json!(args.count));
    out.insert("seed".into(), json!(args.seed));
    out.insert("files".into(), Value::Array(files));
    Ok((out, Checks::new(false)))
}
