//! Command-line interface for exact computations with finite commutative
//! differential graded algebras.

use clap::{Args, Parser, Subcommand};
use dgatool::catalog::{self, CatalogModel};
use dgatool::cohomology::{cohomology, massey_triple};
use dgatool::dga::{Element, TableDga};
use dgatool::error::DgaError;
use dgatool::hirsch::{hirsch_extend, HirschData, HirschExtension};
use dgatool::holonomy::{
    eliminate_s_generators, holonomy_presentation, lcs_dims, relation_degree_profile,
};
use dgatool::io::{model_from_json, model_to_json, OmegaFile};
use dgatool::jumploci::{
    classify_flat, in_f1, in_pi, is_flat, product_formula_check, resonance_dims,
    sample_flat_connections, FlatConnection, LieKind,
};
use dgatool::pd::pd_check;
use dgatool::rational::format_rat;
use dgatool::regularity::{formality_certificate, is_q_regular};
use serde_json::json;
use std::path::Path;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dgatool",
    version,
    about = "Exact-arithmetic computations with finite commutative differential graded algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArg {
    /// Path to a model JSON file, or a catalog key (see `catalog list`).
    model: String,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and ring structure of a model.
    Cohomology {
        #[command(flatten)]
        model: ModelArg,
        /// Highest degree to report.
        #[arg(long)]
        upto: usize,
        #[arg(long)]
        json: bool,
    },
    /// Triple Massey product of three cocycles given as label expressions.
    Massey {
        #[command(flatten)]
        model: ModelArg,
        /// Three cocycle expressions, e.g. --triple a1 a1 b1
        #[arg(long, num_args = 3)]
        triple: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Extend a base model by odd generators with prescribed transgressions.
    Hirsch {
        /// Base model (path or catalog key).
        base: String,
        /// Generator as name:degree, repeatable.
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Transgression expression per generator, repeatable, same order.
        #[arg(long = "tau")]
        taus: Vec<String>,
        /// Cap of the result (defaults to base cap + sum of generator degrees).
        #[arg(long)]
        cap: Option<usize>,
        /// Output path for the extension model JSON.
        #[arg(long)]
        out: String,
    },
    /// Regular-sequence test for a zero-differential model.
    Regular {
        #[command(flatten)]
        model: ModelArg,
        /// Sequence elements as label expressions; defaults to the catalog
        /// scenario when the model is a catalog key.
        #[arg(long = "seq", num_args = 1..)]
        seq: Vec<String>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Formality certificate: extension, quotient, and the verified
    /// equivalence between them.
    Formality {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long = "seq", num_args = 1..)]
        seq: Vec<String>,
        #[arg(long)]
        q: Option<usize>,
        /// Write the quotient model to this path.
        #[arg(long, value_name = "FILE")]
        emit_quotient: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Holonomy Lie algebra presentation and graded dimensions.
    Holonomy {
        #[command(flatten)]
        model: ModelArg,
        /// Use the structured generator elimination (catalog extensions only).
        #[arg(long)]
        eliminate: bool,
        #[arg(long, default_value_t = 5)]
        lcs_depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Twisted cohomology dimensions for sampled or given flat connections.
    Resonance {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value = "abelian1")]
        lie: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Evaluate one connection from a coefficient file instead of sampling.
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Stratum of a flat connection on a catalog extension.
    FlatClassify {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        json: bool,
    },
    /// Poincaré duality certificate at a formal dimension.
    PdCheck {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Pointwise rank-one resonance product formula for two models.
    ProductCheck {
        model_a: String,
        model_b: String,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 34)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Catalog of named models.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List available keys.
    List,
    /// Build an entry and print (or write) its model JSON.
    Build {
        key: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run every pinned expected value and the full acceptance criteria.
    Verify {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("DGATOOL_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(42)
}

/// A model argument resolves to a file path first, then a catalog key.
fn load_model(spec: &str) -> Result<CatalogModel, DgaError> {
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| DgaError::Parse(format!("cannot read {spec}: {e}")))?;
        return Ok(CatalogModel::Plain(model_from_json(&text)?));
    }
    catalog::build(spec)
}

fn parse_elements(dga: &TableDga, exprs: &[String]) -> Result<Vec<Element>, DgaError> {
    exprs
        .iter()
        .map(|s| catalog::element_from_expr(dga, s))
        .collect()
}

fn load_omega(dga: &TableDga, path: &str) -> Result<FlatConnection, DgaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DgaError::Parse(format!("cannot read {path}: {e}")))?;
    let f: OmegaFile =
        serde_json::from_str(&text).map_err(|e| DgaError::Parse(format!("bad omega JSON: {e}")))?;
    let kind = LieKind::parse(&f.lie)?;
    FlatConnection::new(dga, kind, f.to_matrix()?)
}

fn regularity_inputs(
    spec: &str,
    seq: &[String],
    q: Option<usize>,
) -> Result<(TableDga, Vec<Element>, usize), DgaError> {
    // catalog keys may carry a default scenario
    if !Path::new(spec).exists() {
        if let Ok(entry) = catalog::entry(spec) {
            if let Some((base_key, default_seq, default_q)) = entry.regularity {
                let base = catalog::build(base_key)?;
                let dga = base.dga().clone();
                let exprs: Vec<String> = if seq.is_empty() {
                    default_seq.iter().map(|s| s.to_string()).collect()
                } else {
                    seq.to_vec()
                };
                let elems = parse_elements(&dga, &exprs)?;
                return Ok((dga, elems, q.unwrap_or(default_q)));
            }
        }
    }
    let model = load_model(spec)?;
    let dga = model.dga().clone();
    if seq.is_empty() {
        return Err(DgaError::Invalid(
            "no --seq given and the model has no default scenario".into(),
        ));
    }
    let elems = parse_elements(&dga, seq)?;
    let q = q.ok_or_else(|| DgaError::Invalid("--q is required".into()))?;
    Ok((dga, elems, q))
}

fn extension_for(spec: &str) -> Result<HirschExtension, DgaError> {
    match load_model(spec)? {
        CatalogModel::Extension(e) => Ok(e),
        CatalogModel::Plain(_) => Err(DgaError::Invalid(format!(
            "{spec} does not carry extension structure; use a catalog extension key"
        ))),
    }
}

fn run() -> Result<bool, DgaError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Cohomology { model, upto, json } => {
            let m = load_model(&model.model)?;
            let dga = m.dga();
            let h = cohomology(dga, upto)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "model": dga.name,
                        "betti": h.betti,
                        "representatives": (0..=upto).map(|k| {
                            (0..h.betti[k]).map(|i| {
                                dga.format_element(&h.rep_element(k, i))
                            }).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                        "representativeCoords": (0..=upto).map(|k| {
                            (0..h.betti[k]).map(|i| {
                                h.rep_element(k, i).coords.iter().map(format_rat).collect::<Vec<_>>()
                            }).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                );
            } else {
                println!("model {}", dga.name);
                println!("betti {:?}", h.betti);
                for k in 0..=upto {
                    let reps: Vec<String> = (0..h.betti[k])
                        .map(|i| dga.format_element(&h.rep_element(k, i)))
                        .collect();
                    println!("H^{k}: dim {}  [{}]", h.betti[k], reps.join(", "));
                }
            }
            Ok(true)
        }
        Command::Massey { model, triple, json } => {
            let m = load_model(&model.model)?;
            let dga = m.dga();
            let elems = parse_elements(dga, &triple)?;
            let res = massey_triple(dga, &elems[0], &elems[1], &elems[2])?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "degree": res.degree,
                        "representative": dga.format_element(&res.representative),
                        "representativeCoords": res.representative.coords.iter().map(format_rat).collect::<Vec<_>>(),
                        "class": res.rep_class.iter().map(format_rat).collect::<Vec<_>>(),
                        "indeterminacy_dim": res.indeterminacy.len(),
                        "vanishes": res.vanishes,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "representative (degree {}): {}",
                    res.degree,
                    dga.format_element(&res.representative)
                );
                println!("indeterminacy dimension: {}", res.indeterminacy.len());
                println!("vanishes: {}", res.vanishes);
            }
            Ok(true)
        }
        Command::Hirsch {
            base,
            gens,
            taus,
            cap,
            out,
        } => {
            let m = load_model(&base)?;
            let dga = m.dga().clone();
            if gens.len() != taus.len() || gens.is_empty() {
                return Err(DgaError::Invalid(
                    "provide matching --gen name:degree and --tau expression pairs".into(),
                ));
            }
            let mut parsed_gens = Vec::new();
            for g in &gens {
                let (name, deg) = g.split_once(':').ok_or_else(|| {
                    DgaError::Parse(format!("generator {g:?} is not name:degree"))
                })?;
                let deg: usize = deg
                    .parse()
                    .map_err(|_| DgaError::Parse(format!("bad degree in {g:?}")))?;
                parsed_gens.push((name.to_string(), deg));
            }
            let tau = parse_elements(&dga, &taus)?;
            let data = HirschData {
                base: dga,
                gens: parsed_gens,
                tau,
            };
            let ext = hirsch_extend(&data, cap)?;
            std::fs::write(&out, model_to_json(&ext.dga)?)
                .map_err(|e| DgaError::Parse(format!("cannot write {out}: {e}")))?;
            println!(
                "wrote {} (cap {}, dims {:?})",
                out,
                ext.dga.cap(),
                ext.dga.dims()
            );
            Ok(true)
        }
        Command::Regular { model, seq, q, json } => {
            let (dga, elems, q) = regularity_inputs(&model.model, &seq, q)?;
            let rep = is_q_regular(&dga, &elems, q)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "q": rep.q,
                        "degrees": rep.degrees,
                        "verdict": rep.verdict,
                        "failure": rep.failure.as_ref().map(|f| json!({
                            "index": f.index,
                            "degree": f.degree,
                            "witness": f.witness_label,
                        })),
                    }))
                    .unwrap()
                );
            } else {
                println!("sequence degrees {:?}, q = {}", rep.degrees, rep.q);
                match &rep.failure {
                    None => println!("verdict: true ({q}-regular)"),
                    Some(f) => println!(
                        "verdict: false — element {} annihilated by {} (degree {})",
                        f.index + 1,
                        f.witness_label,
                        f.degree
                    ),
                }
            }
            Ok(true)
        }
        Command::Formality {
            model,
            seq,
            q,
            emit_quotient,
            json,
        } => {
            let (dga, elems, q) = regularity_inputs(&model.model, &seq, q)?;
            let cert = formality_certificate(&dga, &elems, q)?;
            if let Some(path) = emit_quotient {
                std::fs::write(&path, model_to_json(&cert.quotient)?)
                    .map_err(|e| DgaError::Parse(format!("cannot write {path}: {e}")))?;
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "q": cert.q,
                        "regular": cert.regularity.verdict,
                        "verified": cert.verified,
                        "quotient_dims": cert.quotient.dims(),
                        "equivalence": cert.equivalence.describe(),
                    }))
                    .unwrap()
                );
            } else {
                println!("regular: {}", cert.regularity.verdict);
                println!("verified: {} ({})", cert.verified, cert.equivalence.describe());
                println!("quotient dims: {:?}", cert.quotient.dims());
            }
            Ok(true)
        }
        Command::Holonomy {
            model,
            eliminate,
            lcs_depth,
            json,
        } => {
            let p = if eliminate {
                let ext = extension_for(&model.model)?;
                let data = HirschData {
                    base: ext.base.clone(),
                    gens: ext.gens.clone(),
                    tau: ext.tau.clone(),
                };
                eliminate_s_generators(&data)?
            } else {
                let m = load_model(&model.model)?;
                holonomy_presentation(m.dga())?
            };
            let profile = relation_degree_profile(&p);
            let dims = lcs_dims(&p, lcs_depth, None)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "generators": p.generators,
                        "relators": p.relators.iter().map(|r| json!({
                            "degree": r.degree,
                            "lyndonCoords": r.lyndon_coords.iter().map(format_rat).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "degreeProfile": profile,
                        "lcsDims": dims,
                    }))
                    .unwrap()
                );
            } else {
                println!("generators: {:?}", p.generators);
                println!("relator degree profile: {profile:?}");
                println!("graded dimensions to depth {lcs_depth}: {dims:?}");
            }
            Ok(true)
        }
        Command::Resonance {
            model,
            lie,
            degree,
            samples,
            seed,
            omega,
            json,
        } => {
            let kind = LieKind::parse(&lie)?;
            let seed = resolve_seed(seed);
            let m = load_model(&model.model)?;
            let dga = m.dga();
            if let Some(path) = omega {
                let conn = load_omega(dga, &path)?;
                if !is_flat(dga, &conn)? {
                    return Err(DgaError::NotFlat);
                }
                let queries: Vec<(usize, usize)> = (1..=3).map(|s| (degree, s)).collect();
                let rep = dgatool::jumploci::resonance_report(dga, &conn, degree, &queries)?;
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "dims": rep.dims,
                            "memberships": rep.memberships,
                            "inTrivialPart": in_f1(dga, &conn)?,
                            "inDeterminantZeroPart": in_pi(dga, &conn)?,
                        }))
                        .unwrap()
                    );
                } else {
                    println!("twisted dims up to degree {degree}: {:?}", rep.dims);
                    for (i, s, member) in &rep.memberships {
                        println!("degree {i} depth {s}: member = {member}");
                    }
                }
                return Ok(true);
            }
            let conns: Vec<FlatConnection> = match m.extension() {
                Some(ext) => sample_flat_connections(ext, kind, samples, seed)?,
                None => {
                    // closed-factor connections only
                    let mut sampler = dgatool::sample::Sampler::new(seed);
                    let lie_obj = dgatool::jumploci::SmallLie::new(kind);
                    (0..samples)
                        .map(|_| {
                            let eta =
                                dgatool::jumploci::sample_closed_one_form(dga, &mut sampler);
                            let g = sampler.nonzero_vector(lie_obj.dim);
                            let mut coeffs =
                                dgatool::matrix::Mat::zeros(dga.dim(1), lie_obj.dim);
                            for (i, c) in eta.coords.iter().enumerate() {
                                for (k, v) in g.iter().enumerate() {
                                    coeffs.set(i, k, c * v);
                                }
                            }
                            FlatConnection::new(dga, kind, coeffs)
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            let mut rows = Vec::new();
            for conn in &conns {
                let dims = resonance_dims(dga, conn, degree)?;
                rows.push(dims[degree]);
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "lie": kind.name(),
                        "degree": degree,
                        "seed": seed,
                        "dims": rows,
                    }))
                    .unwrap()
                );
            } else {
                let mut histogram: std::collections::BTreeMap<usize, usize> =
                    std::collections::BTreeMap::new();
                for r in &rows {
                    *histogram.entry(*r).or_default() += 1;
                }
                println!(
                    "twisted H^{degree} dimension over {} sampled flat connections ({}, seed {seed}):",
                    rows.len(),
                    kind.name()
                );
                for (dim, count) in histogram {
                    println!("  dim {dim}: {count} samples");
                }
            }
            Ok(true)
        }
        Command::FlatClassify { model, omega, json } => {
            let ext = extension_for(&model.model)?;
            let conn = load_omega(&ext.dga, &omega)?;
            let stratum = classify_flat(&ext, &conn)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "flat": true,
                        "stratum": stratum.to_string(),
                        "inTrivialPart": in_f1(&ext.dga, &conn)?,
                        "inDeterminantZeroPart": in_pi(&ext.dga, &conn)?,
                    }))
                    .unwrap()
                );
            } else {
                println!("stratum: {stratum}");
            }
            Ok(true)
        }
        Command::PdCheck { model, dim, json } => {
            let m = load_model(&model.model)?;
            let cert = pd_check(m.dga(), dim)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "n": cert.n,
                        "isPd": cert.is_pd,
                        "isPdCdga": cert.is_pd_cdga,
                        "pairingRanks": cert.pairing_ranks,
                        "failure": cert.failure,
                    }))
                    .unwrap()
                );
            } else {
                println!("duality algebra: {}", cert.is_pd);
                println!("duality model (d vanishes below the top): {}", cert.is_pd_cdga);
                if let Some(f) = &cert.failure {
                    println!("failure: {f}");
                }
            }
            Ok(true)
        }
        Command::ProductCheck {
            model_a,
            model_b,
            q,
            samples,
            seed,
            json,
        } => {
            let a = load_model(&model_a)?;
            let b = load_model(&model_b)?;
            let rep = product_formula_check(a.dga(), b.dga(), q, samples, resolve_seed(seed))?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "samples": rep.samples,
                        "agreements": rep.agreements,
                        "disagreements": rep.disagreements,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "{} of {} sampled points agree",
                    rep.agreements, rep.samples
                );
                for d in &rep.disagreements {
                    println!("disagreement: {d}");
                }
            }
            Ok(rep.ok())
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for e in catalog::entries() {
                    println!("{:<12} {}", e.key, e.description);
                }
                Ok(true)
            }
            CatalogAction::Build { key, out } => {
                let model = catalog::build(&key)?;
                let text = model_to_json(model.dga())?;
                match out {
                    Some(path) => {
                        std::fs::write(&path, text)
                            .map_err(|e| DgaError::Parse(format!("cannot write {path}: {e}")))?;
                        println!("wrote {path}");
                    }
                    None => println!("{text}"),
                }
                Ok(true)
            }
            CatalogAction::Verify { seed, json } => {
                let seed = resolve_seed(seed);
                let (ok, lines) = dgatool::acceptance::verify_catalog(seed);
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "seed": seed,
                            "pass": ok,
                            "lines": lines,
                        }))
                        .unwrap()
                    );
                } else {
                    for l in &lines {
                        println!("{l}");
                    }
                    println!("{}", if ok { "all checks passed" } else { "FAILURES present" });
                }
                Ok(ok)
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
