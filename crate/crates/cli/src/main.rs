//! `affgebra`: command-line checks and constructions for Lie algebras and
//! Lie affgebras given as JSON files.
//!
//! Exit status: 0 when the property holds or the construction succeeds,
//! 1 when it fails (the report carries a witness), 2 on bad input.

mod report;

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use affgebra::affgebra::{verify_affine_axioms, AxiomFailure, Mode};
use affgebra::catalog::{self, Entry};
use affgebra::cocycle::{affine_cocycle_check, cocycle_extend, simple_fibre_normal_form};
use affgebra::error::SubaffgebraCondition;
use affgebra::format::{
    self, affgebra_to_json, hull_to_json, lie_algebra_to_json, matrix_to_json, vector_to_json,
};
use affgebra::hull::{derivation_type, hull};
use affgebra::isomorphism::{
    classify, find_isomorphism, SearchMode, SearchOptions, DEFAULT_BUDGET,
};
use affgebra::liealg::LieFailure;
use affgebra::{Error, FieldSpec, LieAffgebra, LieAlgebra, Vector};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use report::{matrix_cell, vector_cell, Report};

#[derive(Parser)]
#[command(
    name = "affgebra",
    version,
    about = "Exact checks and constructions for Lie affgebras"
)]
struct Cli {
    /// Emit machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, env = "AFFGEBRA_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie algebra axioms on all basis tuples.
    Verify { input: String },
    /// Dimensions of the centre, derived algebra, derivations, centroid,
    /// quasicentroid and generalised-derivation pairs.
    Invariants { input: String },
    /// Check the affgebra axioms for (kappa, lambda, s) data.
    AffgebraVerify {
        input: String,
        /// Random triples checked after the probe points.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Tangent affgebra at a point, in coordinates centred there.
    Tangent {
        input: String,
        /// Base point, as `1,0,-1/2` or a JSON array.
        #[arg(long)]
        at: String,
    },
    /// Check that `x -> psi x + q_prime` is a homomorphism.
    HomCheck {
        source: String,
        target: String,
        hom: String,
    },
    /// Search for an isomorphism between two affgebras.
    Iso {
        first: String,
        second: String,
        /// Require an exhaustive search; fails when the state bound is exceeded.
        #[arg(long)]
        exhaustive: bool,
        /// Random candidates tried in randomized mode.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Restrict to the coset `point + span(basis)` when it is a subaffgebra.
    Sub {
        input: String,
        #[arg(long)]
        point: String,
        /// One spanning vector per occurrence.
        #[arg(long, required = true)]
        basis: Vec<String>,
    },
    /// Lie hull of an affgebra with scalar kappa.
    Hull { input: String },
    /// Cocycle extension by `{"pi", "rho", "sigma", "tau"}` data.
    Extend {
        input: String,
        cocycle: String,
        /// Also reduce to the normal form over a simple fibre.
        #[arg(long)]
        normal_form: bool,
    },
    /// List or emit built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Table of isomorphism classes of all affgebras on a small fibre.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: u64,
        /// `abelian` or a catalog algebra name.
        #[arg(long, default_value = "abelian")]
        fibre: String,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        /// `key=value`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

/// Errors that end a run with status 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

enum Outcome {
    Report(Report),
    Data(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Report(r)) => {
            let text = if cli.json {
                format!("{}\n", r.to_json())
            } else {
                r.to_text()
            };
            print(&text);
            ExitCode::from(if r.pass { 0 } else { 1 })
        }
        Ok(Outcome::Data(text)) => {
            print(&text);
            ExitCode::SUCCESS
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn print(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn read_source(path: &str) -> Result<String, InputError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| InputError(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load<T>(
    path: &str,
    decode: impl FnOnce(&Value) -> affgebra::Result<T>,
) -> Result<T, InputError> {
    let text = read_source(path)?;
    let value = format::parse(&text).map_err(|e| InputError(format!("{path}: {e}")))?;
    decode(&value).map_err(|e| InputError(format!("{path}: {e}")))
}

fn load_algebra(path: &str) -> Result<LieAlgebra, InputError> {
    load(path, |v| format::lie_algebra_from_json(v, "$"))
}

fn load_affgebra(path: &str) -> Result<LieAffgebra, InputError> {
    load(path, |v| format::affgebra_from_json(v, "$"))
}

fn same_field(a: &LieAffgebra, b: &LieAffgebra) -> Result<(), InputError> {
    let (x, y) = (a.fibre().field(), b.fibre().field());
    if x != y {
        return Err(Error::FieldMismatch {
            expected: x.to_string(),
            found: y.to_string(),
        }
        .into());
    }
    Ok(())
}

/// Parses `1,0,-1/2` or `["1","0","-1/2"]`.
fn parse_vector(
    field: FieldSpec,
    text: &str,
    len: usize,
    what: &str,
) -> Result<Vector, InputError> {
    let t = text.trim();
    let v = if t.starts_with('[') {
        let value = format::parse(t).map_err(|e| InputError(format!("{what}: {e}")))?;
        format::vector_from_json(field, &value, len, what)?
    } else {
        let parts: Vec<&str> = t
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if parts.len() != len {
            return Err(InputError(format!(
                "{what}: expected {len} entries, found {}",
                parts.len()
            )));
        }
        parts
            .iter()
            .map(|p| {
                field
                    .parse_scalar(p)
                    .map_err(|e| InputError(format!("{what}: {e}")))
            })
            .collect::<Result<_, _>>()?
    };
    Ok(v)
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { input } => {
            let g = load_algebra(input)?;
            let report = g.verify_lie();
            let summary = if report.pass() {
                "Lie algebra axioms hold"
            } else {
                "Lie algebra axiom violated"
            };
            let r = Report::new(report.pass(), summary, Mode::Exhaustive, seed);
            Ok(Outcome::Report(match report.failure {
                None => r,
                Some(LieFailure::Antisymmetry { i, j }) => {
                    r.witness(json!({ "antisymmetry": [i, j] }))
                }
                Some(LieFailure::Jacobi { i, j, k }) => r.witness(json!({ "jacobi": [i, j, k] })),
            }))
        }
        Command::Invariants { input } => {
            let g = load_algebra(input)?;
            let inv = Invariants::of(&g);
            Ok(Outcome::Data(if cli.json {
                format!("{}\n", serde_json::to_string(&inv).expect("serializable"))
            } else {
                inv.to_text()
            }))
        }
        Command::AffgebraVerify { input, samples } => {
            let data = load(input, |v| format::affine_data_from_json(v, "$"))?;
            let axioms = verify_affine_axioms(&data, *samples, seed);
            let pair = data.fibre.gen_der_violation(&data.kappa, &data.lambda);
            let pass = axioms.pass() && pair.is_none();
            let summary = if pass {
                "affgebra axioms hold"
            } else {
                "affgebra axioms fail"
            };
            let mut r = Report::new(pass, summary, axioms.mode, seed)
                .detail("pair_condition", json!(pair.is_none()))
                .detail("triples", json!(axioms.triples));
            let witness = match (&axioms.failure, pair) {
                (Some(AxiomFailure::Antisymmetry { a, b }), _) => Some(
                    json!({ "antisymmetry": { "a": vector_to_json(a), "b": vector_to_json(b) } }),
                ),
                (Some(AxiomFailure::Jacobi { a, b, c }), _) => Some(
                    json!({ "jacobi": { "a": vector_to_json(a), "b": vector_to_json(b), "c": vector_to_json(c) } }),
                ),
                (None, Some((i, j))) => Some(json!({ "pair_condition": [i, j] })),
                (None, None) => None,
            };
            if let Some(w) = witness {
                r = r.witness(w);
            }
            Ok(Outcome::Report(r))
        }
        Command::Tangent { input, at } => {
            let a = load_affgebra(input)?;
            let o = parse_vector(a.fibre().field(), at, a.fibre().dim(), "--at")?;
            let t = a.at_point(&o);
            Ok(Outcome::Data(format!(
                "{}\n",
                format::to_pretty(&affgebra_to_json(&t))
            )))
        }
        Command::HomCheck {
            source,
            target,
            hom,
        } => {
            let (a, b) = (load_affgebra(source)?, load_affgebra(target)?);
            same_field(&a, &b)?;
            let (field, n, m) = (a.fibre().field(), a.fibre().dim(), b.fibre().dim());
            let h = load(hom, |v| format::hom_from_json(field, n, m, v, "$"))?;
            let violation = a.hom_violation(&b, &h);
            let pass = violation.is_none();
            debug_assert_eq!(pass, a.is_homomorphism(&b, &h));
            let summary = if pass {
                "map is a homomorphism"
            } else {
                "map does not preserve the bracket"
            };
            let mut r = Report::new(pass, summary, Mode::Exhaustive, seed);
            if let Some((x, y)) = violation {
                r = r.witness(json!({ "a": vector_to_json(&x), "b": vector_to_json(&y) }));
            }
            Ok(Outcome::Report(r))
        }
        Command::Iso {
            first,
            second,
            exhaustive,
            budget,
        } => {
            let (a, b) = (load_affgebra(first)?, load_affgebra(second)?);
            same_field(&a, &b)?;
            let mode = match (*exhaustive, a.fibre().field().is_finite()) {
                (true, _) => SearchMode::Exhaustive,
                (false, true) => SearchMode::Auto,
                (false, false) => SearchMode::Randomized,
            };
            let search = find_isomorphism(
                &a,
                &b,
                &SearchOptions {
                    mode,
                    budget: *budget,
                    seed,
                },
            )?;
            let summary = match (&search.witness, search.mode) {
                (Some(_), _) => "isomorphic".to_string(),
                (None, m) => format!("no isomorphism ({m})"),
            };
            let mut r = Report::new(search.isomorphic(), summary, search.mode, seed)
                .detail("candidates", json!(search.candidates));
            if let Some(reason) = &search.obstruction {
                r = r.detail("obstruction", json!(reason));
            }
            if let Some((psi, q)) = &search.witness {
                r = r.witness(json!({ "psi": matrix_to_json(psi), "q": vector_to_json(q) }));
            }
            Ok(Outcome::Report(r))
        }
        Command::Sub {
            input,
            point,
            basis,
        } => {
            let a = load_affgebra(input)?;
            let (field, n) = (a.fibre().field(), a.fibre().dim());
            let p = parse_vector(field, point, n, "--point")?;
            let vs = basis
                .iter()
                .enumerate()
                .map(|(i, b)| parse_vector(field, b, n, &format!("--basis #{}", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            match a.subaffgebra(&p, &vs) {
                Ok(sub) => Ok(Outcome::Data(format!(
                    "{}\n",
                    format::to_pretty(&affgebra_to_json(&sub))
                ))),
                Err(Error::Subaffgebra(condition)) => {
                    let summary = match condition {
                        SubaffgebraCondition::Basis => {
                            "basis vectors are linearly dependent".to_string()
                        }
                        SubaffgebraCondition::Subalgebra => "span is not a subalgebra".to_string(),
                        c => format!("coset condition ({c}) fails"),
                    };
                    Ok(Outcome::Report(
                        Report::new(false, summary, Mode::Exhaustive, seed)
                            .witness(json!({ "condition": condition.to_string() })),
                    ))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Hull { input } => {
            let a = load_affgebra(input)?;
            match hull(&a) {
                Ok(h) => Ok(Outcome::Data(format!(
                    "{}\n",
                    format::to_pretty(&hull_to_json(&h))
                ))),
                Err(e @ Error::HullHypothesis { .. }) => {
                    let dt = derivation_type(&a);
                    Ok(Outcome::Report(
                        Report::new(false, e.to_string(), Mode::Exhaustive, seed)
                            .witness(json!({ "kappa": matrix_to_json(a.kappa()) }))
                            .detail("derivation_type", json!(dt.holds())),
                    ))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Extend {
            input,
            cocycle,
            normal_form,
        } => {
            let a = load_affgebra(input)?;
            let (field, n) = (a.fibre().field(), a.fibre().dim());
            let data = load(cocycle, |v| format::cocycle_from_json(field, n, v, "$"))?;
            let check = affine_cocycle_check(&a, &data)?;
            if !check.pass() {
                let witness = match (check.cocycle_failure, check.compatibility_failure) {
                    (Some((i, j, k)), _) => json!({ "cocycle": [i, j, k] }),
                    (None, Some((i, j))) => json!({ "compatibility": [i, j] }),
                    (None, None) => unreachable!(),
                };
                return Ok(Outcome::Report(
                    Report::new(false, "not a cocycle extension", Mode::Exhaustive, seed)
                        .witness(witness),
                ));
            }
            if !normal_form {
                let ext = cocycle_extend(&a, &data)?;
                return Ok(Outcome::Data(format!(
                    "{}\n",
                    format::to_pretty(&affgebra_to_json(&ext))
                )));
            }
            let nf = simple_fibre_normal_form(&a, &data)?;
            let steps: Vec<Value> = nf
                .steps
                .iter()
                .map(|s| json!({ "psi": matrix_to_json(&s.psi), "q": vector_to_json(&s.q), "certified": s.certified }))
                .collect();
            let out = json!({
                "extension": affgebra_to_json(&nf.extension),
                "normal_form": affgebra_to_json(&nf.result),
                "steps": steps,
                "certified": nf.composite_certified && nf.steps.iter().all(|s| s.certified),
            });
            Ok(Outcome::Data(format!("{}\n", format::to_pretty(&out))))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            let mut out = String::new();
            for (name, kind, params, description) in catalog::ENTRIES {
                out.push_str(&format!("{name:<12} {kind:<9} [{params}] {description}\n"));
            }
            Ok(Outcome::Data(out))
        }
        Command::Catalog {
            action: CatalogAction::Emit { name, params },
        } => {
            let mut map = BTreeMap::new();
            for p in params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| InputError(format!("--param {p:?}: expected key=value")))?;
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
            let value = match catalog::build(name, &map)? {
                Entry::Algebra(g) => lie_algebra_to_json(&g),
                Entry::Affgebra(a) => affgebra_to_json(&a),
            };
            Ok(Outcome::Data(format!("{}\n", format::to_pretty(&value))))
        }
        Command::Enumerate { dim, p, fibre, out } => {
            if !(1..=2).contains(dim) {
                return Err(InputError(format!("--dim must be 1 or 2, got {dim}")));
            }
            let field = FieldSpec::prime(*p)?;
            let g = if fibre == "abelian" {
                catalog::abelian(*dim, field)
            } else {
                let mut params = BTreeMap::new();
                params.insert("field".to_string(), format!("F{p}"));
                match catalog::build(fibre, &params)? {
                    Entry::Algebra(g) if g.dim() == *dim => g,
                    Entry::Algebra(g) => {
                        return Err(InputError(format!(
                            "{fibre} has dimension {}, not {dim}",
                            g.dim()
                        )));
                    }
                    Entry::Affgebra(_) => {
                        return Err(InputError(format!("{fibre} is not a Lie algebra")))
                    }
                }
            };
            let rows = classify(&g)?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            let write_err = |e: csv::Error| InputError(format!("csv: {e}"));
            writer
                .write_record(["class_id", "size", "kappa", "lambda", "s_rep"])
                .map_err(write_err)?;
            for row in &rows {
                writer
                    .write_record([
                        row.class_id.to_string(),
                        row.size.to_string(),
                        matrix_cell(&row.kappa),
                        matrix_cell(&row.lambda),
                        vector_cell(&row.s_rep),
                    ])
                    .map_err(write_err)?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| InputError(format!("csv: {e}")))?;
            let text = String::from_utf8(bytes).expect("csv output is utf-8");
            match out {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::Data(format!(
                        "{} classes written to {}\n",
                        rows.len(),
                        path.display()
                    )))
                }
                None => Ok(Outcome::Data(text)),
            }
        }
    }
}

#[derive(Serialize)]
struct Invariants {
    center: usize,
    derived: usize,
    der: usize,
    centroid: usize,
    qc: usize,
    gendpairs: usize,
}

impl Invariants {
    fn of(g: &LieAlgebra) -> Self {
        Invariants {
            center: g.center().dim(),
            derived: g.derived_subalgebra().dim(),
            der: g.derivations().dim(),
            centroid: g.centroid().dim(),
            qc: g.quasicentroid().dim(),
            gendpairs: g.gen_der_pairs().dim(),
        }
    }

    fn to_text(&self) -> String {
        format!(
            "center: {}\nderived: {}\nder: {}\ncentroid: {}\nqc: {}\ngendpairs: {}\n",
            self.center, self.derived, self.der, self.centroid, self.qc, self.gendpairs
        )
    }
}
